"""Algebraic degrees (MML, ML, ED, polar) via e-Newton numbers of Cayley sums.

All degrees are e-Newton numbers of explicit Cayley configurations:

  MMLdeg(P_1..P_m; u) = nu^e at the infinite point in direction u on the
      Cayley block, of O * P_1 * ... * P_m;
  MLdeg(P_1..P_m; u)  = nu^e at the origin of {u} * P_1 * ... * P_m;
  EDdeg(P_1..P_m)     = nu^e at the origin of D_rho * P_1 * ... * P_m,
      D_rho = {0} ∪ {e_i} ∪ {2 e_i};
  Pdeg(f)             = nu^e at the origin of P * D_(n+1),
      D_(n+1) = vertices of the unit simplex conv(0, e_1, .., e_(n+1)).

The polar degree is cross-checked against the reduced Newton-number form
over the cone through the homogeneity simplex (apex term 0) and optionally
against the facet mixed-volume formula.
"""

from __future__ import annotations

import itertools

from .errors import InvariantError, PreconditionError
from .geometry import LatticePointSet, cayley_sum, volume_in_dim
from .intlin import coords_in_saturation, integer_kernel_rows
from .mixed_volume import mixed_volume
from .obstruction import ProjectivePoint, e_newton


def _cayley(sets):
    return cayley_sum(list(sets))


def mml_degree(supports, u) -> int:
    """Critical points of Theta_1^u1 ... Theta_m^um off the vanishing locus."""
    m = len(supports)
    u = tuple(int(x) for x in u)
    if len(u) != m or all(x == 0 for x in u):
        raise PreconditionError("u must be a nonzero integer vector of length m")
    base = supports[0].ambient_dim
    origin = LatticePointSet(base, [(0,) * base])
    cay = _cayley([origin] + list(supports))
    # Cayley coordinates come last; Q_u is at infinity in direction (0_base, u)
    q = ProjectivePoint.at_infinity((0,) * base + u)
    return e_newton(cay, q)


def ml_degree(supports, u) -> int:
    """ML degree of the very affine complete intersection with the given supports."""
    base = supports[0].ambient_dim
    u = tuple(int(x) for x in u)
    if len(u) != base:
        raise PreconditionError("u must be an integer point of the base lattice")
    upt = LatticePointSet(base, [u])
    cay = _cayley([upt] + list(supports))
    return e_newton(cay, ProjectivePoint.origin(cay.ambient_dim))


def ml_degree_mv(supports, u) -> int:
    """Generic-u cross-check: MV(P_1,...,P_m, P,...,P), P the Cayley polytope."""
    base = supports[0].ambient_dim
    upt = LatticePointSet(base, [tuple(int(x) for x in u)])
    cay = _cayley([upt] + list(supports))
    n = cay.ambient_dim
    m = len(supports)
    pieces = []
    for s in supports:
        # embed the support in the Cayley ambient with zero tag
        pieces.append([tuple(p) + (0,) * m for p in s.points])
    pieces += [list(cay.points)] * (n - m)
    return mixed_volume(pieces, ambient_dim=n)


def ed_supports(base_dim: int) -> LatticePointSet:
    """Support of the squared distance function: origin, e_i, 2 e_i."""
    pts = [(0,) * base_dim]
    for i in range(base_dim):
        for c in (1, 2):
            pts.append(tuple(c if j == i else 0 for j in range(base_dim)))
    return LatticePointSet(base_dim, pts)


def ed_degree(supports) -> int:
    base = supports[0].ambient_dim
    cay = _cayley([ed_supports(base)] + list(supports))
    return e_newton(cay, ProjectivePoint.origin(cay.ambient_dim))


def _check_homogeneous(support: LatticePointSet, d: int):
    for p in support.points:
        if sum(p) != d:
            raise PreconditionError(f"support point {p} is not of homogeneous degree {d}")
        if any(x < 0 for x in p):
            raise PreconditionError("homogeneous supports need nonnegative exponents")


def polar_degree(support: LatticePointSet, d: int, cross_check: bool = True) -> dict:
    """Pdeg of a degree-d form in (ambient_dim) variables, with cross-checks.

    Returns a dict with the value, the reduced Newton-number form, flags for
    the vanishing-hessian (Pdeg = 0) and homaloidal (Pdeg = 1) candidates.
    """
    if d < 2:
        raise PreconditionError("polar degree needs degree >= 2")
    nvars = support.ambient_dim  # n + 1 homogeneous variables
    _check_homogeneous(support, d)
    simplex = LatticePointSet(nvars, [(0,) * nvars] + [tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars)])
    cay = _cayley([support, simplex])
    nu_e = e_newton(cay, ProjectivePoint.origin(cay.ambient_dim))
    nu_reduced = polar_newton_reduced(support, d)
    checks = {"nu_e": nu_e, "nu_reduced": nu_reduced}
    if nu_e != nu_reduced:
        raise InvariantError(f"polar degree forms disagree: nu^e={nu_e} reduced-nu={nu_reduced}")
    if cross_check:
        mv = polar_degree_mv(support, d)
        checks["mixed_volume"] = mv
        if mv != nu_e:
            raise InvariantError(f"polar mixed-volume form disagrees: {mv} != {nu_e}")
    flags = []
    if nu_e == 0:
        flags.append("vanishing-hessian candidate")
    if nu_e == 1:
        flags.append("homaloidal candidate")
    return {"pdeg": nu_e, "checks": checks, "flags": flags, "all_equal": True}


def polar_newton_reduced(support: LatticePointSet, d: int) -> int:
    """nu over the cone through the homogeneity simplex, via its face poset.

    The cone's faces correspond to the nonempty faces of the unit simplex
    (the apex contributes 0): the piece over a face T is the Cayley sum of
    the T-restricted support with the T-simplex, and its volume counts only
    in full dimension |T|.
    """
    nvars = support.ambient_dim
    _check_homogeneous(support, d)
    total = 0
    for size in range(1, nvars + 1):
        for tset in itertools.combinations(range(nvars), size):
            tpl = set(tset)
            p_t = [tuple(p[j] for j in tset) for p in support.points if all(p[j] == 0 for j in range(nvars) if j not in tpl)]
            simplex_t = [tuple(1 if j == i else 0 for j in range(size)) for i in range(size)]
            pts = [q + (0,) for q in p_t] + [s + (1,) for s in simplex_t]
            vol = volume_in_dim(pts, size)
            total += vol if (nvars - size) % 2 == 0 else -vol
    return total


def polar_degree_mv(support: LatticePointSet, d: int) -> int:
    """Facet mixed-volume form: MV(D_0,...,D_n) inside the Cayley span.

    D_i = conv((P * simplex) minus the i-th facet of the homogeneity cone)
    = (points of P with positive i-th exponent) ∪ {e_i at Cayley level 1},
    with the mixed volume taken in the lattice of the common affine span.
    """
    nvars = support.ambient_dim
    _check_homogeneous(support, d)
    n_amb = nvars + 1
    pieces = []
    for i in range(nvars):
        pts = [tuple(p) + (0,) for p in support.points if p[i] > 0]
        pts.append(tuple(1 if j == i else 0 for j in range(nvars)) + (1,))
        if not pts:
            raise PreconditionError("support misses a variable entirely")
        pieces.append(pts)
    # all pieces live in the affine hyperplane sum(x) + (d-1) t = d; express
    # them in a basis of its direction lattice (the saturated kernel of the normal)
    normal = [1] * nvars + [d - 1]
    kern = integer_kernel_rows([normal], n_amb)
    dim_span = n_amb - 1
    base = pieces[0][0]
    reduced = []
    for pts in pieces:
        diffs = [[p[j] - base[j] for j in range(n_amb)] for p in pts]
        red = [tuple(c) for c in coords_in_saturation(diffs, kern, n_amb)]
        reduced.append(red)
    return mixed_volume(reduced, ambient_dim=dim_span)


def pdeg_lstar_bound(support: LatticePointSet, d: int) -> dict:
    """Pdeg(P) <= l*(P * simplex_without_origin; 1)."""
    from .ehrhart import local_h_star
    from .geometry import Polytope

    nvars = support.ambient_dim
    _check_homogeneous(support, d)
    simplex0 = LatticePointSet(nvars, [tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars)])
    cay = _cayley([support, simplex0])
    bound = local_h_star(Polytope(cay.ambient_dim, cay.points))(1)
    pdeg = polar_degree(support, d, cross_check=False)["pdeg"]
    ok = pdeg <= bound
    if not ok:
        raise InvariantError(f"l* bound violated: Pdeg={pdeg} > {bound}")
    return {"pdeg": pdeg, "lstar_bound": bound, "ok": ok}
