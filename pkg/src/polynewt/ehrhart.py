"""Ehrhart polynomials, h*- and local h*-polynomials, thinness and joins.

The local h* face sum runs over all faces including the empty one, with
h*(empty) = 1 and dim(empty) = -1; this is the unique convention under which
l*(point) = 0 and the h* reconstruction identity hold.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvariantError, PreconditionError
from .geometry import Polytope, count_lattice_points
from .intlin import rank
from .polynomials import IntPolynomial, eval_rational, interpolate_rational, t_minus_one_power
from .posets import g_of_dual_interval, g_of_interval
from .subdivision import SubdivisionMap


def ehrhart_polynomial(p: Polytope):
    """Coefficients (lowest first, Fractions) of f_P(m) = #(mP ∩ Z^n); f_P(0)=1."""
    d = p.dim
    values = [1] + [count_lattice_points(p, m) for m in range(1, d + 1)]
    return interpolate_rational(values)


def h_star(p: Polytope) -> IntPolynomial:
    """Numerator of the Ehrhart series, sum_j h*_j t^j with h*_j >= 0."""
    d = p.dim
    ehr = ehrhart_polynomial(p)
    vals = [eval_rational(ehr, m) for m in range(d + 1)]
    from math import comb

    coeffs = []
    for j in range(d + 1):
        c = sum((-1) ** (j - i) * comb(d + 1, j - i) * vals[i] for i in range(j + 1))
        if c.denominator != 1:
            raise InvariantError("non-integer h* coefficient: Ehrhart interpolation bug")
        coeffs.append(int(c))
    hs = IntPolynomial(coeffs)
    if not hs.is_nonnegative():
        raise InvariantError("negative h* coefficient")
    return hs


def _h_star_of_face(p: Polytope, face) -> IntPolynomial:
    """h* of a face, empty face giving 1 (its own span lattice normalization)."""
    if not face:
        return IntPolynomial.one()
    return h_star(p.face_polytope(face))


def local_h_star(p: Polytope) -> IntPolynomial:
    """l*(P;t) = sum over faces Q (incl. empty) of (-1)^(dim P - dim Q) h*(Q) g([Q,P]*)."""
    poset = p.face_poset()
    top = poset.top()
    dp = p.dim
    out = IntPolynomial.zero()
    dims = p.hull()["faces"]
    for face in poset.elements:
        dq = dims[face]
        sign = -1 if (dp - dq) % 2 else 1
        out = out + sign * _h_star_of_face(p, face) * g_of_dual_interval(poset, face, top)
    if not out.is_nonnegative():
        raise InvariantError("negative local h* coefficient")
    if not out.is_symmetric(dp + 1):
        raise InvariantError("local h* not symmetric about (dim+1)/2")
    return out


def degree(p: Polytope) -> int:
    """Degree of the h*-polynomial (0 for a point)."""
    return max(h_star(p).degree(), 0)


def codegree(p: Polytope) -> int:
    """Smallest dilate with an interior lattice point; equals dim + 1 - degree."""
    d = p.dim
    ehr = ehrhart_polynomial(p)
    cod = None
    for lam in range(1, d + 2):
        interior = (-1) ** d * eval_rational(ehr, -lam)
        if interior > 0:
            cod = lam
            break
    if cod is None:
        raise InvariantError("no interior point up to dilate dim+1")
    if cod != d + 1 - degree(p):
        raise InvariantError("codegree mismatch with dim + 1 - deg")
    return cod


def interior_points(p: Polytope, dilate: int = 1) -> int:
    ehr = ehrhart_polynomial(p)
    return int((-1) ** p.dim * eval_rational(ehr, -dilate))


def is_thin(p: Polytope) -> bool:
    return local_h_star(p).is_zero()


def is_trivially_thin(p: Polytope) -> bool:
    return p.dim >= 2 * degree(p)


def is_join(p: Polytope) -> bool:
    """Is P the join of two disjoint nonempty faces spanning independent directions?"""
    faces = [f for f, d in p.hull()["faces"].items() if f and d < p.dim]
    verts = set(p.hull()["vertices"])
    pts = p.points
    n = p.ambient_dim

    def span_rows(face):
        idx = sorted(face)
        base = pts[idx[0]]
        return [[pts[i][k] - base[k] for k in range(n)] for i in idx[1:]]

    for i, f1 in enumerate(faces):
        for f2 in faces[i + 1:]:
            if f1 & f2:
                continue
            if not verts <= (f1 | f2):
                continue
            r1 = span_rows(f1)
            r2 = span_rows(f2)
            if rank(r1) + rank(r2) == rank(r1 + r2):
                return True
    return False


def free_join(p: Polytope, q: Polytope) -> Polytope:
    """conv(P x 0 x 0, 0 x Q x 1); h* and l* are multiplicative over it."""
    n, m = p.ambient_dim, q.ambient_dim
    pts = [tuple(v) + (0,) * m + (0,) for v in p.vertices]
    pts += [(0,) * n + tuple(w) + (1,) for w in q.vertices]
    return Polytope(n + m + 1, pts)


# -- polyhedral strong formal subdivisions --------------------------------------


def _cell_polytope(sub: SubdivisionMap, cell) -> Polytope | None:
    pts = sub.cells.get(cell)
    if pts is None:
        return None
    return Polytope(len(pts[0]), pts)


def _cell_dim(sub: SubdivisionMap, cell) -> int:
    pts = sub.cells.get(cell)
    if pts is None:
        return -1
    from .geometry import dim_of

    return dim_of(pts)


def h_star_sfs(sub: SubdivisionMap, x=None) -> IntPolynomial:
    """h*-polynomial of a polyhedral strong formal subdivision over [0, x].

    h*(S_x;t) = sum over cells F with sigma(F) = x of h*(F) (t-1)^(dim S_x - dim F),
    where dim S_x is the dimension of the maximal cells of S_x.
    """
    if sub.cells is None:
        raise PreconditionError("subdivision carries no polytopal cells")
    tgt = sub.target
    if x is None:
        x = tgt.top()
    cells = [y for y in sub.source.elements if sub.sigma[y] == x]
    if not cells:
        raise PreconditionError("strong surjectivity violated: empty top fiber")
    fiber_all = [y for y in sub.source.elements if tgt.le(sub.sigma[y], x)]
    dim_s = max(_cell_dim(sub, y) for y in fiber_all)
    out = IntPolynomial.zero()
    for y in cells:
        poly = _cell_polytope(sub, y)
        hs = IntPolynomial.one() if poly is None else h_star(poly)
        df = -1 if poly is None else poly.dim
        out = out + hs * t_minus_one_power(dim_s - df)
    return out


def local_h_star_sfs(sub: SubdivisionMap) -> IntPolynomial:
    """l*_R(S;t) = sum over x in R of (-1)^(rk 1 - rk x) h*(S_x) g([x,1]*)."""
    if sub.cells is None:
        raise PreconditionError("subdivision carries no polytopal cells")
    tgt = sub.target
    top = tgt.top()
    if top is None:
        raise PreconditionError("target needs a maximum")
    out = IntPolynomial.zero()
    for x in tgt.elements:
        sign = -1 if (tgt.rank[top] - tgt.rank[x]) % 2 else 1
        out = out + sign * h_star_sfs(sub, x) * g_of_dual_interval(tgt, x, top)
    return out


def h_star_sfs_from_local(sub: SubdivisionMap) -> IntPolynomial:
    """Reconstruction h*_R(S) = sum over x of l*_{[0,x]}(S_x) g([x,1]) (cross-check)."""
    tgt = sub.target
    top = tgt.top()
    out = IntPolynomial.zero()
    for x in tgt.elements:
        # restricted local h*: same sum with top replaced by x
        inner = IntPolynomial.zero()
        for x2 in tgt.elements:
            if not tgt.le(x2, x):
                continue
            sign = -1 if (tgt.rank[x] - tgt.rank[x2]) % 2 else 1
            sub_int = tgt.interval(tgt.bottom(), x)
            inner = inner + sign * h_star_sfs(sub, x2) * g_of_dual_interval(sub_int, x2, x)
        out = out + inner * g_of_interval(tgt, x, top)
    return out
