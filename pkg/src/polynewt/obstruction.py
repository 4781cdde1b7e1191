"""Euler obstructions of lattice point sets and e-Newton numbers.

The c-number of a face pair is the difference of projected-hull lattice
volumes, measured in the quotient lattice Z^n / sat(span(face - face)), with
a lower-dimensional subtrahend counting 0.  Euler obstructions are entries
of the inverse of the (upper triangular, unit diagonal) c-matrix, and the
e-Newton number at a rational projective point Q sums e * Vol over the faces
whose affine span contains Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import Cone
from .errors import InvariantError, PreconditionError
from .geometry import (
    LatticePointSet,
    Polytope,
    dim_of,
    lattice_volume_of_points,
    project_points_along,
    volume_in_dim,
)
from .intlin import in_rational_span, solve_rational
from .mixed_volume import mixed_volume


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of QP^n in homogeneous coordinates (x_1 : ... : x_n : w)."""

    coords: tuple  # integer tuple of length n + 1, not all zero

    def __init__(self, coords):
        c = tuple(int(x) for x in coords)
        if all(x == 0 for x in c):
            raise PreconditionError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", c)

    @classmethod
    def finite(cls, point) -> "ProjectivePoint":
        return cls(tuple(point) + (1,))

    @classmethod
    def at_infinity(cls, direction) -> "ProjectivePoint":
        return cls(tuple(direction) + (0,))

    @classmethod
    def origin(cls, n: int) -> "ProjectivePoint":
        return cls((0,) * n + (1,))

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        try:
            return cls(tuple(int(t) for t in text.split(":")))
        except ValueError as exc:
            raise PreconditionError(f"cannot parse projective point {text!r}") from exc

    @property
    def is_finite(self) -> bool:
        return self.coords[-1] != 0

    def dim(self) -> int:
        return len(self.coords) - 1


def faces_of_set(a: LatticePointSet):
    """All faces of A (intersections of A with hull faces), ordered by dimension.

    Each face is a frozenset of indices into a.points; includes A itself,
    excludes the empty face.
    """
    p = Polytope(a.ambient_dim, a.points)
    index_of = {pt: i for i, pt in enumerate(a.points)}
    faces = []
    for face, d in sorted(p.hull()["faces"].items(), key=lambda kv: (kv[1], sorted(kv[0]))):
        if not face:
            continue
        pts = p.face_points(face)
        faces.append(frozenset(index_of[pt] for pt in pts))
    return faces


def _span_rows(a: LatticePointSet, face):
    idx = sorted(face)
    base = a.points[idx[0]]
    n = a.ambient_dim
    return [[a.points[i][k] - base[k] for k in range(n)] for i in idx[1:]]


def c_number(a: LatticePointSet, sub, sup) -> int:
    """c^{sub}_{sup}: projected-hull volume difference; 1 on the diagonal.

    Both faces are index frozensets with sub <= sup required for a nonzero
    answer (0 otherwise, per the convention).
    """
    if not sub <= sup:
        return 0
    if sub == sup:
        return 1
    n = a.ambient_dim
    kill = _span_rows(a, sub)
    sup_pts = [a.points[i] for i in sorted(sup)]
    rest_pts = [a.points[i] for i in sorted(sup - sub)]
    img_sup = project_points_along(sup_pts, kill, n)
    img_rest = project_points_along(rest_pts, kill, n)
    d = dim_of(img_sup)
    vol_sup = lattice_volume_of_points(img_sup)
    vol_rest = lattice_volume_of_points(img_rest) if dim_of(img_rest) == d else 0
    return vol_sup - vol_rest


@dataclass
class ObstructionTable:
    point_set: LatticePointSet
    faces: list  # frozensets ordered by dimension
    c_matrix: dict  # (sub, sup) -> int
    e_values: dict  # (sub, sup) -> int

    def e(self, sub, sup=None) -> int:
        if sup is None:
            sup = self.faces[-1]
        return self.e_values.get((sub, sup), 0)

    def to_json(self):
        faces = [sorted(f) for f in self.faces]
        return {
            "faces": faces,
            "c_matrix": [[self.c_matrix.get((f, g), 0) for g in self.faces] for f in self.faces],
            "euler_obstructions": [self.e(f) for f in self.faces],
        }


def euler_obstructions(a: LatticePointSet) -> ObstructionTable:
    """Invert the c-matrix exactly over the face poset of the set."""
    faces = faces_of_set(a)
    cmat = {}
    for i, f in enumerate(faces):
        for g in faces[i:]:
            if f <= g:
                cmat[(f, g)] = c_number(a, f, g)
    evals = {}

    def e_entry(sub, sup):
        if (sub, sup) in evals:
            return evals[(sub, sup)]
        if sub == sup:
            evals[(sub, sup)] = 1
            return 1
        # sum over sub <= x <= sup of c^{sub}_x e^{x}_{sup} = 0
        total = 0
        for x in faces:
            if sub < x and x <= sup:
                c = cmat.get((sub, x), 0)
                if c:
                    total += c * e_entry(x, sup)
        evals[(sub, sup)] = -total
        return -total

    for f in faces:
        for g in faces:
            if f <= g:
                e_entry(f, g)
    table = ObstructionTable(a, faces, cmat, evals)
    # exact inversion check: C . E = I on the face poset
    for f in faces:
        for g in faces:
            if not f <= g:
                continue
            s = sum(cmat.get((f, x), 0) * evals.get((x, g), 0) for x in faces if f <= x <= g)
            if s != (1 if f == g else 0):
                raise InvariantError("c-matrix inversion failed")
    return table


def _affine_span_contains(a: LatticePointSet, face, q: ProjectivePoint) -> bool:
    """Does the affine span of the face contain Q (finite or at infinity)?"""
    n = a.ambient_dim
    idx = sorted(face)
    base = a.points[idx[0]]
    rows = _span_rows(a, face)
    if q.is_finite:
        w = q.coords[-1]
        target = [Fraction(q.coords[k], w) - base[k] for k in range(n)]
    else:
        target = [Fraction(q.coords[k]) for k in range(n)]
    return in_rational_span(target, rows or [[0] * n])


def admissible_faces(a: LatticePointSet, q: ProjectivePoint):
    return [f for f in faces_of_set(a) if _affine_span_contains(a, f, q)]


def e_newton(a: LatticePointSet, q: ProjectivePoint, table: ObstructionTable | None = None) -> int:
    """nu^e_Q(A) = sum over admissible faces of e^Gamma_A Vol_Z(Gamma) (>= 0)."""
    if q.dim() != a.ambient_dim:
        raise PreconditionError("projective point has wrong dimension")
    if table is None:
        table = euler_obstructions(a)
    total = 0
    for f in admissible_faces(a, q):
        vol = lattice_volume_of_points([a.points[i] for i in sorted(f)])
        total += table.e(f) * vol
    if total < 0:
        raise InvariantError("negative e-Newton number")
    return total


def inversion_identity_check(a: LatticePointSet, q: ProjectivePoint) -> dict:
    """Vol_Z(conv A) = sum over admissible faces of c^Gamma_A nu^e_Q(Gamma ∩ A)."""
    table = euler_obstructions(a)
    whole = table.faces[-1]
    total = 0
    for f in admissible_faces(a, q):
        sub_pts = [a.points[i] for i in sorted(f)]
        sub_set = LatticePointSet(a.ambient_dim, sub_pts)
        total += table.c_matrix.get((f, whole), 0) * e_newton(sub_set, q)
    vol = lattice_volume_of_points(a.points)
    ok = total == vol
    if not ok:
        raise InvariantError(f"inversion identity failed: {total} != {vol}")
    return {"volume": vol, "sum": total, "ok": ok}


def is_dual_defective(a: LatticePointSet) -> bool:
    """nu^e at the origin vanishes (set translated by a member if 0 not in A)."""
    n = a.ambient_dim
    origin = (0,) * n
    if origin not in a.points:
        member = a.points[0]
        a = a.translate(tuple(-x for x in member))
    return e_newton(a, ProjectivePoint.origin(n)) == 0


def smooth_at_face(a: LatticePointSet, face) -> bool:
    """Is A smooth at the face: the projected hull difference is a unimodular simplex."""
    n = a.ambient_dim
    kill = _span_rows(a, face)
    img_all = project_points_along(a.points, kill, n)
    rest = [a.points[i] for i in range(len(a.points)) if i not in face]
    if not rest:
        return True  # the whole set projects to a point
    img_rest = project_points_along(rest, kill, n)
    d = dim_of(img_all)
    p_img = sorted(set(img_all) - set(img_rest))
    # image of the face is a single point p (the span was killed)
    face_img = set(project_points_along([a.points[i] for i in sorted(face)], kill, n))
    if len(face_img) != 1:
        return False
    p = next(iter(face_img))
    x = Polytope(len(p), img_all)
    y_pts = sorted(set(img_rest))
    dy = dim_of(y_pts)
    if dy < d:
        # closure of X minus a lower-dimensional set is X itself
        return _is_unimodular_simplex(x)
    y = Polytope(len(p), y_pts)
    if y.contains_point(p):
        return False  # difference is empty
    # visible facets of Y from p; the difference closes up to the union of
    # cones from p over them
    visible = []
    ycoords = {pt: c for pt, c in zip(y.points, y.span_coords())}
    # p may be outside the span lattice of Y; compare in Y's span via exact solve
    from .intlin import coords_in_saturation

    base = y.points[0]
    rows = [[q[i] - base[i] for i in range(len(p))] for q in y.points[1:]]
    diff = [p[i] - base[i] for i in range(len(p))]
    if not in_rational_span([Fraction(v) for v in diff], rows or [[0] * len(p)]):
        # p adds a new direction: X is a pyramid over Y with apex p
        return _is_unimodular_simplex(x)
    pc = coords_in_saturation([diff], rows, len(p))[0]
    for normal, off, onset in y.hull()["facets"]:
        val = sum(normal[k] * pc[k] for k in range(len(pc)))
        if val > off:
            visible.append(onset)
    if len(visible) != 1:
        return False
    g_pts = [y.points[i] for i in sorted(visible[0])]
    cone_piece = Polytope(len(p), g_pts + [p])
    return _is_unimodular_simplex(cone_piece)


def _is_unimodular_simplex(p: Polytope) -> bool:
    return len(p.vertices) == p.dim + 1 and p.lattice_volume() == 1


def smoothness_report(a: LatticePointSet, q: ProjectivePoint) -> dict:
    faces = admissible_faces(a, q)
    bad = [sorted(f) for f in faces if not smooth_at_face(a, f)]
    return {"smooth": not bad, "non_smooth_faces": bad}


def e_newton_smooth_check(a: LatticePointSet, q: ProjectivePoint) -> dict:
    """Compare nu^e_Q with the Newton number over the cone with vertex Q spanned by A.

    Requires smoothness of A at every admissible face and a finite lattice Q;
    refuses (raises) otherwise, reporting the offending faces.
    """
    rep = smoothness_report(a, q)
    if not rep["smooth"]:
        raise PreconditionError(f"set is not smooth at faces {rep['non_smooth_faces']}")
    if not q.is_finite or any(c % q.coords[-1] for c in q.coords[:-1]):
        raise PreconditionError("smooth check needs a lattice point Q")
    w = q.coords[-1]
    qpt = tuple(c // w for c in q.coords[:-1])
    shifted = a.translate(tuple(-x for x in qpt))
    cone = Cone.from_generators(a.ambient_dim, [pt for pt in shifted.points if any(pt)])
    nu_e = e_newton(a, q)
    from .newton import newton_number

    nu = newton_number(Polytope(a.ambient_dim, shifted.points), cone)
    ok = nu_e == nu
    if not ok:
        raise InvariantError(f"smooth-case equality failed: nu^e={nu_e} nu={nu}")
    return {"nu_e": nu_e, "nu_cone": nu, "ok": ok}


def e_newton_mv_check(a: LatticePointSet, cone: Cone, q: ProjectivePoint) -> dict:
    """Compare nu^e_Q with MV(conv(A\\E_1),...,conv(A\\E_m),A,...,A).

    The cone must have a boolean face poset; the affine span of every
    admissible face must be the span of a cone face (validated, refusal
    reported otherwise).
    """
    poset = cone.face_poset()
    if not poset.is_boolean():
        raise PreconditionError("mixed-volume formula needs a boolean cone face poset")
    n = a.ambient_dim
    # validate: every admissible face spans a cone face's span
    face_spans = []
    for f in cone.faces():
        rays = [list(r) for r in f["rays"]] + [list(v) for v in cone.lineality]
        face_spans.append((f["dim"], rays))
    for f in admissible_faces(a, q):
        rows = _span_rows(a, f)
        base = a.points[sorted(f)[0]]
        d = dim_of([a.points[i] for i in sorted(f)])
        ok = False
        for fd, rays in face_spans:
            if fd != d:
                continue
            if all(in_rational_span([Fraction(v) for v in row], rays or [[0] * n]) for row in rows):
                # also the base point must lie in the span (faces through Q)
                if in_rational_span([Fraction(v) for v in base], rays or [[0] * n]):
                    ok = True
                    break
        if not ok:
            raise PreconditionError(f"admissible face {sorted(f)} does not span a cone face")
    facets = cone.facets()
    pieces = []
    for f in facets:
        normal = None
        # facet = active singleton; points NOT on the facet
        active = f["active"]
        off_pts = [pt for pt in a.points if pt not in cone.points_on_face(a.points, active)]
        if not off_pts:
            raise PreconditionError("a facet contains the whole set")
        pieces.append(off_pts)
    m = len(facets)
    pieces += [list(a.points)] * (n - m)
    mv = mixed_volume(pieces, ambient_dim=n)
    nu_e = e_newton(a, q)
    ok = mv == nu_e
    if not ok:
        raise InvariantError(f"mixed-volume formula failed: nu^e={nu_e} MV={mv}")
    return {"nu_e": nu_e, "mixed_volume": mv, "ok": ok}
