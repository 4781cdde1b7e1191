"""Newton numbers: the classical alternating volume sum and the l-Newton number.

nu_C(P) sums (-1)^(dim C - dim F) Vol_Z(P ∩ F) over the faces of the cone,
with each piece's volume measured in the lattice of F (lower-dimensional
pieces contribute 0, empty pieces contribute 0, a point on a point-face
contributes 1).  nu^l_C(P) is half the value at 1 of the local h*-polynomial
of the self-agglutinated boundary subdivision of a convenient P.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cones import Cone
from .ehrhart import h_star_sfs, local_h_star, local_h_star_sfs
from .errors import InvariantError, PreconditionError
from .geometry import Polytope, volume_in_dim
from .polynomials import IntPolynomial
from .subdivision import (
    agglutinate_sfs,
    boundary_faces,
    boundary_sfs,
    is_convenient,
    local_h,
    star_subdivision_sfs,
)


def newton_number(p: Polytope, c: Cone) -> int:
    """nu_C(P): may be negative for cones with non-boolean face posets."""
    for v in p.points:
        if not c.contains(v):
            raise PreconditionError("polytope is not contained in the cone")
    total = 0
    n = c.dim
    for f in c.faces():
        pts = c.points_on_face(p.points, f["active"])
        vol = volume_in_dim(pts, f["dim"]) if pts else 0
        if vol:
            total += -vol if (n - f["dim"]) % 2 else vol
    return total


@dataclass
class NewtonReport:
    nu: int
    ell_nu: int
    ell_star_agglutinated: IntPolynomial
    h_star_agglutinated: IntPolynomial
    per_face: list = field(default_factory=list)

    def to_json(self):
        return {
            "nu": self.nu,
            "ell_nu": self.ell_nu,
            "ell_star_agglutinated": list(self.ell_star_agglutinated.coeffs),
            "h_star_agglutinated": list(self.h_star_agglutinated.coeffs),
            "per_face": [
                {"face": sorted(face), "dim": dim, "h_star_fiber": list(poly.coeffs)}
                for face, dim, poly in self.per_face
            ],
        }


def ell_newton(p: Polytope, c: Cone) -> NewtonReport:
    """nu^l_C(P) = l*_C(P # P; 1) / 2 for a convenient polytope P in C."""
    if not is_convenient(p, c):
        raise PreconditionError("polytope is not convenient in the cone")
    sub = boundary_sfs(p, c)
    agg = agglutinate_sfs(sub, boundary_sfs(p, c))
    lstar = local_h_star_sfs(agg)
    hstar = h_star_sfs(agg)
    n = c.dim
    if not lstar.is_nonnegative():
        raise InvariantError("agglutinated local h* has a negative coefficient")
    if not lstar.is_symmetric(n + 1):
        raise InvariantError("agglutinated local h* is not symmetric about (n+1)/2")
    if not hstar.is_nonnegative():
        raise InvariantError("agglutinated h* has a negative coefficient")
    val = lstar(1)
    if val % 2:
        raise InvariantError("l*_C(P#P;1) must be even")
    ell = val // 2
    if ell < 0:
        raise InvariantError("l-Newton number must be nonnegative")
    per_face = []
    tgt = agg.target
    for x in tgt.elements:
        per_face.append((x, tgt.rank[x], h_star_sfs(agg, x)))
    nu = newton_number(p, c)
    return NewtonReport(nu=nu, ell_nu=ell, ell_star_agglutinated=lstar, h_star_agglutinated=hstar, per_face=per_face)


def stapledon_consistency(p: Polytope, c: Cone) -> dict:
    """Check the monodromy-compatibility identity on a convenient P in an orthant.

    With T the coning subdivision of P (boundary faces and their hulls with
    the origin) the identities verified are:

      * l_{C+-}(T, max, F; t) = 0 for every boundary face F;
      * nu_C(P) = sum over boundary faces F of
            l_{C-}(P_B, max, F; 1) * (l*(F;1) + l*(F^0;1)),
        where F^0 is the hull of F with the origin and l*(empty) = 1.
    """
    if c.orthant_coords is None or len(c.orthant_coords) != c.ambient:
        raise PreconditionError("Stapledon check needs the full orthant cone")
    if not is_convenient(p, c):
        raise PreconditionError("polytope is not convenient in the cone")
    star = star_subdivision_sfs(p, c)
    bsub = boundary_sfs(p, c)
    bmap = bsub.boundary_map()
    nu = newton_number(p, c)
    bset = sorted(boundary_faces(p, c), key=lambda f: (len(f), sorted(f)))
    base = c.points_on_face(p.points, c.face_poset().bottom())[0]

    vanish_ok = True
    total = 0
    terms = []
    for f in bset:
        if not local_h(star, y=("b", f)).is_zero():
            vanish_ok = False
        coeff = local_h(bmap, y=f)(1)
        if f:
            lf = local_h_star(p.face_polytope(f))(1)
            f0_pts = sorted(set(p.face_points(f)) | {base})
            lf0 = local_h_star(Polytope(p.ambient_dim, f0_pts))(1)
        else:
            lf = 1  # l*(empty) = 1 under the empty-face convention
            lf0 = 0  # l*(point) = 0
        total += coeff * (lf + lf0)
        terms.append({"face": sorted(f), "coeff": coeff, "lstar": lf, "lstar_coned": lf0})
    ok = vanish_ok and (total == nu)
    if not ok:
        raise InvariantError(f"Stapledon consistency failed: nu={nu} rhs={total} vanish={vanish_ok}")
    return {"nu": nu, "rhs": total, "vanishing_ok": vanish_ok, "terms": terms, "ok": ok}
