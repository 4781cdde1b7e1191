"""Strong formal subdivisions, local h-polynomials, boundaries, agglutination.

A SubdivisionMap is an order-preserving rank-increasing map sigma between
ranked posets.  Rank functions are compared across the two posets as given,
with maximal cells aligned: polytope/complex face posets carry rho = dim + 1
(empty face 0), cone face posets rho = dim F, and twins targets shift the
plus copy up by one.  Under these conventions the boundary map of a
convenient polytope into the twins of the cone poset is a strong formal
subdivision with boundary, and self-agglutination lands back on the cone
poset.
"""

from __future__ import annotations

from .errors import PreconditionError
from .polynomials import IntPolynomial, t_minus_one_power
from .posets import FinitePoset, g_of_dual_interval, h_polynomial, twins_poset


class SubdivisionMap:
    def __init__(self, source: FinitePoset, target: FinitePoset, sigma, boundary=None, cells=None):
        self.source = source
        self.target = target
        self.sigma = dict(sigma)
        self.boundary = frozenset(boundary) if boundary is not None else None
        self.cells = cells  # optional: element -> tuple of lattice points (None for the empty cell)
        for y in source.elements:
            if y not in self.sigma:
                raise PreconditionError(f"sigma undefined on {y!r}")
        # order-preserving
        for a in source.elements:
            for b in source.up[a]:
                if not target.le(self.sigma[a], self.sigma[b]):
                    raise PreconditionError("sigma is not order-preserving")
        # rank-increasing
        for y in source.elements:
            if source.rank[y] > target.rank[self.sigma[y]]:
                raise PreconditionError("sigma is not rank-increasing")

    # -- the strong-formal-subdivision test ---------------------------------

    def is_strong_formal_subdivision(self) -> bool:
        src, tgt, sigma = self.source, self.target, self.sigma
        fibers = {}
        for y in src.elements:
            fibers.setdefault(sigma[y], []).append(y)
        if set(fibers) != set(tgt.elements):
            return False  # not surjective
        for y in src.elements:
            ups = src.up[y]
            for x in tgt.elements:
                if not tgt.le(sigma[y], x):
                    continue
                total = 0
                strong = False
                for y2 in ups:
                    if sigma[y2] == x:
                        total += -1 if (tgt.rank[x] - src.rank[y2]) % 2 else 1
                        if src.rank[y2] == tgt.rank[x]:
                            strong = True
                if total != 1 or not strong:
                    return False
        return True

    def require_sfs(self):
        if not self.is_strong_formal_subdivision():
            raise PreconditionError("map is not a strong formal subdivision")

    def rank_of_map(self) -> int:
        src, tgt = self.source, self.target
        return src.rk() - tgt.rk()

    # -- restrictions --------------------------------------------------------

    def fiber_poset(self, x, y=None) -> FinitePoset:
        """(Gamma_{>= y})_x: elements above y mapping at or below x."""
        src, tgt = self.source, self.target
        if y is None:
            y = src.bottom()
        elems = [z for z in src.up[y] if tgt.le(self.sigma[z], x)]
        return src.subposet(elems)

    def boundary_map(self) -> "SubdivisionMap":
        """Restriction to the boundary lower set (target = minus copy)."""
        if self.boundary is None:
            raise PreconditionError("no boundary marked")
        src = self.source.subposet(self.boundary)
        tgt_elems = sorted({self.sigma[y] for y in self.boundary}, key=self.target.elements.index)
        # close upward inside the minus copy so the target is the full copy
        tgt = self.target.subposet([e for e in self.target.elements if isinstance(e, tuple) and len(e) == 2 and e[0] == "-"])
        cells = None
        if self.cells is not None:
            cells = {y: self.cells[y] for y in self.boundary}
        return SubdivisionMap(src, tgt, {y: self.sigma[y] for y in self.boundary}, cells=cells)


_UNSET = object()


def local_h(sub: SubdivisionMap, x=_UNSET, y=_UNSET) -> IntPolynomial:
    """Local h-polynomial l_B(Gamma, x, y; t); defaults x = max(B), y = min(Gamma).

    Zero when sigma(y) is not below x.  The target interval [sigma(y), x]
    must be Eulerian (true for the posets used here); the defining sum is

        sum over sigma(y) <= x' <= x of
            h((Gamma_{>=y})_{x'}; t) (-1)^{rho(x',x)} g([x',x]^*; t).
    """
    src, tgt = sub.source, sub.target
    if x is _UNSET:
        x = tgt.top()
        if x is None and None not in tgt.elements:
            raise PreconditionError("target has no maximum; pass x explicitly")
    if y is _UNSET:
        y = src.bottom()
        if y is None and None not in src.elements:
            raise PreconditionError("source has no minimum; pass y explicitly")
    sy = sub.sigma[y]
    if not tgt.le(sy, x):
        return IntPolynomial.zero()
    out = IntPolynomial.zero()
    for x2 in tgt.elements:
        if not (tgt.le(sy, x2) and tgt.le(x2, x)):
            continue
        fib = sub.fiber_poset(x2, y)
        h = h_polynomial(fib)
        sign = -1 if (tgt.rank[x] - tgt.rank[x2]) % 2 else 1
        out = out + sign * h * g_of_dual_interval(tgt, x2, x)
    return out


def local_h_simplicial_excess(sub: SubdivisionMap, x=_UNSET, y=_UNSET) -> IntPolynomial:
    """Independent oracle for the simplicial-source boolean-target case.

    l_B(Gamma;t) = sum over y' of (-1)^(r - rho(y')) t^(r - e(y')) (t-1)^(e(y')),
    e(y') = rho_B(sigma y') - rho_Gamma(y'); only valid when the source
    interval is simplicial and the target interval is boolean.
    """
    src, tgt = sub.source, sub.target
    if x is _UNSET:
        x = tgt.top()
    if y is _UNSET:
        y = src.bottom()
    sy = sub.sigma[y]
    if not tgt.le(sy, x):
        return IntPolynomial.zero()
    r = tgt.rank[x] - src.rank[y]
    out = IntPolynomial.zero()
    for y2 in src.up[y]:
        if not tgt.le(sub.sigma[y2], x):
            continue
        rho = src.rank[y2] - src.rank[y]
        e = tgt.rank[sub.sigma[y2]] - src.rank[y2]
        sign = -1 if (r - rho) % 2 else 1
        out = out + sign * (IntPolynomial.monomial(r - e) * t_minus_one_power(e))
    return out


# -- polytopes in cones --------------------------------------------------------


def boundary_faces(polytope, cone):
    """Faces (label frozensets) of P inside the cone boundary of a convenient P.

    A face Q is in the boundary exactly when Q != P ∩ (minimal cone face
    containing Q); the empty face always qualifies for convenient P.
    """
    faces = polytope.hull()["faces"]
    out = set()
    for face in faces:
        pts = polytope.face_points(face)
        if not pts:
            out.add(face)
            continue
        active = cone.face_of_points(pts)
        on_face = cone.points_on_face(polytope.points, active)
        if set(pts) != set(on_face):
            out.add(face)
    return out


def is_convenient(polytope, cone) -> bool:
    """dim(P ∩ F) = dim F for every face F of the cone (P ⊆ C checked)."""
    from .geometry import dim_of

    for p in polytope.points:
        if not cone.contains(p):
            raise PreconditionError("polytope is not contained in the cone")
    for f in cone.faces():
        pts = cone.points_on_face(polytope.points, f["active"])
        if dim_of(pts) != f["dim"]:
            return False
    return True


def face_complex_of_polytope(polytope):
    """Face poset of P including the empty face, rho = dim + 1, with cell payloads."""
    poset = polytope.face_poset()
    cells = {}
    for face, d in polytope.hull()["faces"].items():
        cells[face] = tuple(polytope.face_points(face)) if face else None
    return poset, cells


def boundary_sfs(polytope, cone) -> SubdivisionMap:
    """The strong formal subdivision with boundary of a convenient P in C.

    sigma maps a non-boundary face to the minimal cone face containing it
    (in the plus copy of the twins poset of the cone face poset) and a
    boundary face to the same cone face in the minus copy.
    """
    if not is_convenient(polytope, cone):
        raise PreconditionError("polytope is not convenient in the cone")
    cposet = cone.face_poset()
    target = twins_poset(cposet)
    source, cells = face_complex_of_polytope(polytope)
    bset = boundary_faces(polytope, cone)
    cmin = cposet.bottom()
    sigma = {}
    for face in source.elements:
        pts = polytope.face_points(face)
        active = cone.face_of_points(pts) if pts else cmin
        sigma[face] = ("-", active) if face in bset else ("+", active)
    sub = SubdivisionMap(source, target, sigma, boundary=bset, cells=cells)
    sub.require_sfs()
    bmap = sub.boundary_map()
    bmap.require_sfs()
    return sub


def star_subdivision_sfs(polytope, cone) -> SubdivisionMap:
    """The coning subdivision T of a convenient P: boundary faces and their
    hulls with a base point of P ∩ C_min, as a subdivision with boundary.

    Requires the minimal cone face to meet P in a single point (true for
    orthant cones, where the base point is the origin of P).
    """
    if not is_convenient(polytope, cone):
        raise PreconditionError("polytope is not convenient in the cone")
    cposet = cone.face_poset()
    cmin = cposet.bottom()
    base_pts = cone.points_on_face(polytope.points, cmin)
    if len(base_pts) != 1:
        raise PreconditionError("star subdivision needs a unique base point on the minimal face")
    base = base_pts[0]
    bset = boundary_faces(polytope, cone)
    elements = []
    sigma = {}
    cells = {}
    rank = {}
    leq_pairs = {}
    source_faces = sorted(bset, key=lambda f: (len(f), sorted(f)))
    pposet = polytope.face_poset()
    for f in source_faces:
        elements.append(("b", f))
        cells[("b", f)] = tuple(polytope.face_points(f)) if f else None
        rank[("b", f)] = pposet.rank[f]
        pts = polytope.face_points(f)
        active = cone.face_of_points(pts) if pts else cmin
        sigma[("b", f)] = ("-", active)
    for f in source_faces:
        elements.append(("c", f))
        cpts = tuple(sorted(set(polytope.face_points(f)) | {base}))
        cells[("c", f)] = cpts
        rank[("c", f)] = pposet.rank[f] + 1
        pts = list(cpts)
        sigma[("c", f)] = ("+", cone.face_of_points(pts))
    up = {}
    for e in elements:
        kind, f = e
        ups = set()
        for e2 in elements:
            kind2, f2 = e2
            if kind == "b" and kind2 == "b" and f <= f2:
                ups.add(e2)
            elif kind == "b" and kind2 == "c" and f <= f2:
                ups.add(e2)
            elif kind == "c" and kind2 == "c" and f <= f2:
                ups.add(e2)
        up[e] = frozenset(ups)
    source = FinitePoset(elements, leq=up, rank=rank)
    sub = SubdivisionMap(source, twins_poset(cposet), sigma, boundary={("b", f) for f in bset}, cells=cells)
    sub.require_sfs()
    return sub


def agglutinate_sfs(sub1: SubdivisionMap, sub2: SubdivisionMap) -> SubdivisionMap:
    """Glue two subdivisions with identical boundary maps along the boundary.

    The result maps into the undoubled target R: boundary cells through the
    plus lift of the common boundary map, interior cells by their own sigma.
    """
    if sub1.boundary is None or sub2.boundary is None:
        raise PreconditionError("both maps need marked boundaries")
    b1 = {y: sub1.sigma[y] for y in sub1.boundary}
    b2 = {y: sub2.sigma[y] for y in sub2.boundary}
    if b1 != b2:
        raise PreconditionError("boundary maps disagree")
    if sub1.cells is not None and sub2.cells is not None:
        for y in sub1.boundary:
            if sub1.cells.get(y) != sub2.cells.get(y):
                raise PreconditionError("boundary cells disagree")
    src1, src2 = sub1.source, sub2.source
    bset = set(sub1.boundary)

    def label(side, e):
        return ("b", e) if e in bset else (side, e)

    elements = []
    up = {}
    rank = {}
    sigma = {}
    cells = {} if sub1.cells is not None else None
    for side, sub in ((1, sub1), (2, sub2)):
        src = sub.source
        for e in src.elements:
            le = label(side, e)
            if le not in up:
                elements.append(le)
                up[le] = set()
                rank[le] = src.rank[e]
                tgt_val = sub.sigma[e]
                # strip the twins tag: minus-copy (boundary) and plus-copy both
                # land on the underlying target element
                sigma[le] = tgt_val[1] if isinstance(tgt_val, tuple) and tgt_val[0] in ("+", "-") else tgt_val
                if cells is not None:
                    cells[le] = sub.cells.get(e)
            up[le] |= {label(side, f) for f in src.up[e]}
    up = {e: frozenset(v) for e, v in up.items()}
    source = FinitePoset(elements, leq=up, rank=rank)
    # target: the undoubled poset underlying the twins target of sub1
    tgt_elems = sorted({e[1] for e in sub1.target.elements}, key=lambda v: (sub1.target.rank[("+", v)], repr(v)))
    base = sub1.target
    leq = {v: frozenset(w for w in tgt_elems if base.le(("+", v), ("+", w))) for v in tgt_elems}
    target = FinitePoset(tgt_elems, leq=leq, rank={v: base.rank[("+", v)] for v in tgt_elems})
    out = SubdivisionMap(source, target, sigma, cells=cells)
    out.require_sfs()
    return out


def identity_sfs(polytope) -> SubdivisionMap:
    """The trivial subdivision of P by its own face poset, into [empty, P]."""
    poset, cells = face_complex_of_polytope(polytope)
    sigma = {f: f for f in poset.elements}
    return SubdivisionMap(poset, poset, sigma, cells=cells)


def polyhedral_subdivision_sfs(polytope, cell_vertex_sets) -> SubdivisionMap:
    """Subdivision of P given by top cells (each a list of points of P).

    Builds the face complex of the cells, maps each cell to the minimal face
    of P containing it, and validates the strong-formal-subdivision axioms.
    Cells must tile P and intersect along common faces (checked only through
    the SFS axioms, which fail on bad complexes in practice).
    """
    from .geometry import Polytope

    pposet = polytope.face_poset()
    # build all faces of all cells, keyed by their point sets
    face_map = {}
    for cell_pts in cell_vertex_sets:
        cp = Polytope(polytope.ambient_dim, cell_pts)
        for face, d in cp.hull()["faces"].items():
            if not face:
                continue
            pts = frozenset(cp.face_points(face))
            face_map[pts] = d
    empty = frozenset()
    elements = [empty] + sorted(face_map, key=lambda s: (face_map[s], sorted(s)))
    rank = {empty: 0}
    for pts in face_map:
        rank[pts] = face_map[pts] + 1
    up = {e: frozenset(f for f in elements if e <= f) for e in elements}
    source = FinitePoset(elements, leq=up, rank=rank)

    sigma = {empty: frozenset()}
    for pts in face_map:
        sigma[pts] = _minimal_containing_face(polytope, pts)
    cells = {e: (tuple(sorted(e)) if e else None) for e in elements}
    sub = SubdivisionMap(source, pposet, sigma, cells=cells)
    sub.require_sfs()
    return sub


def _minimal_containing_face(polytope, pts):
    faces = sorted(polytope.hull()["faces"].items(), key=lambda kv: kv[1])
    for face, d in faces:
        if not face:
            continue
        fp = polytope.face_polytope(face)
        if all(fp.contains_point(p) for p in pts):
            return face
    raise PreconditionError("cell not contained in the polytope")
