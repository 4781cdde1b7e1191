"""B_k-polytope detection, negligibility, and seeded corpus generators.

Detection is in coordinate form only: a certificate names k orthant
coordinates K such that every point projects into {0, e_i} on K, every
Cayley class is nonempty, the 0-class spans dimension n-k, and the Minkowski
sum of the other classes has dimension < k.  Certificates are canonical:
smallest k first, then lexicographic K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cones import Cone
from .errors import PreconditionError
from .geometry import LatticePointSet, Polytope, cayley_sum, dim_of
from .newton import ell_newton, newton_number
from .subdivision import is_convenient


@dataclass
class BkCertificate:
    k: int
    coords: tuple  # the Cayley coordinate subset K (0-based)
    summands: list  # point lists of P_0, ..., P_k in the remaining coordinates

    def to_json(self):
        return {"k": self.k, "coords": list(self.coords), "summands": [[list(p) for p in s] for s in self.summands]}


def _classes_for(points, coords, n):
    """Split points by their K-projection; None when a projection is invalid."""
    k = len(coords)
    rest = [j for j in range(n) if j not in coords]
    classes = [[] for _ in range(k + 1)]
    for p in points:
        proj = tuple(p[c] for c in coords)
        ones = [i for i, v in enumerate(proj) if v != 0]
        if not ones:
            idx = 0
        elif len(ones) == 1 and proj[ones[0]] == 1:
            idx = ones[0] + 1
        else:
            return None, rest
        classes[idx].append(tuple(p[j] for j in rest))
    return classes, rest


def detect_bk(p: Polytope, c: Cone) -> BkCertificate | None:
    """Search all k and all k-subsets of the orthant coordinates, canonically."""
    if c.orthant_coords is None:
        raise PreconditionError("B_k detection needs an orthant-product cone")
    if not is_convenient(p, c):
        raise PreconditionError("polytope is not convenient in the cone")
    import itertools

    n = p.ambient_dim
    pts = p.points
    for k in range(1, len(c.orthant_coords) + 1):
        for coords in itertools.combinations(sorted(c.orthant_coords), k):
            classes, rest = _classes_for(pts, coords, n)
            if classes is None or any(not cl for cl in classes):
                continue
            if dim_of(classes[0]) != n - k:
                continue
            stacked = []
            for cl in classes[1:]:
                base = cl[0]
                stacked.extend(tuple(q[j] - base[j] for j in range(n - k)) for q in cl)
            stacked.append((0,) * (n - k))
            if dim_of(stacked) >= k:
                continue
            return BkCertificate(k=k, coords=tuple(coords), summands=[sorted(set(cl)) for cl in classes])
    return None


def reconstruct_from_certificate(cert: BkCertificate, n: int) -> Polytope:
    """Cayley sum of the certificate's summands, with K placed back in position."""
    base_dim = n - cert.k
    cay = cayley_sum([LatticePointSet(base_dim, s) for s in cert.summands])
    # cayley_sum puts the Cayley block last; permute it back into cert.coords
    rest = [j for j in range(n) if j not in cert.coords]
    pts = []
    for q in cay.points:
        p = [0] * n
        for i, j in enumerate(rest):
            p[j] = q[i]
        for i, j in enumerate(cert.coords):
            p[j] = q[base_dim + i]
        pts.append(tuple(p))
    return Polytope(n, pts)


def is_negligible(p: Polytope, c: Cone) -> bool:
    """nu = 0 for orthant-product cones, nu^l = 0 for general cones."""
    if not is_convenient(p, c):
        raise PreconditionError("negligibility is defined for convenient polytopes")
    if c.orthant_coords is not None:
        return newton_number(p, c) == 0
    return ell_newton(p, c).ell_nu == 0


def bk_theorem_check(p: Polytope, c: Cone) -> dict:
    """Assert negligible <=> B_k-detected (a discrepancy is build-failing)."""
    neg = is_negligible(p, c)
    cert = detect_bk(p, c)
    ok = neg == (cert is not None)
    return {
        "negligible": neg,
        "detected": cert is not None,
        "certificate": cert.to_json() if cert else None,
        "ok": ok,
    }


# -- seeded generators ----------------------------------------------------------


def generate_convenient(seed, n: int, m: int, extra_points: int = 3, coord_bound: int = 3) -> Polytope:
    """Deterministic pseudo-random convenient polytope in R^m_{>=0} ⊕ R^(n-m).

    Construction: a full-dimensional simplex in the free coordinates placed
    at the origin of the orthant block, one point on each orthant axis, and
    a few extra points in the cone.
    """
    if not (0 <= m <= n and n >= 1):
        raise PreconditionError("need 0 <= m <= n")
    rng = random.Random((seed, n, m, "convenient"))
    free = n - m
    pts = []
    # base: simplex spanning the free coordinates (just the origin if m = n)
    base = [(0,) * n]
    for j in range(free):
        v = [0] * n
        v[m + j] = rng.choice([1, 1, 2, -1])
        for j2 in range(free):
            if j2 != j and rng.random() < 0.3:
                v[m + j2] = rng.randint(-coord_bound, coord_bound)
        base.append(tuple(v))
    pts.extend(base)
    for i in range(m):
        v = [0] * n
        v[i] = rng.randint(1, coord_bound)
        for j in range(free):
            if rng.random() < 0.4:
                v[m + j] = rng.randint(-2, 2)
        pts.append(tuple(v))
    for _ in range(extra_points):
        v = [rng.randint(0, coord_bound) for _ in range(m)] + [rng.randint(-2, 2) for _ in range(free)]
        pts.append(tuple(v))
    return Polytope(n, pts)


def generate_bk(seed, n: int, k: int, m: int, coord_bound: int = 3) -> Polytope:
    """Deterministic B_k-polytope, convenient in R^m_{>=0} ⊕ R^(n-m).

    Coordinates: the first k are the Cayley block, the next m-k the other
    orthant coordinates, the last n-m free.  P_0 is a convenient polytope of
    full dimension n-k in the base; the other summands are points or
    parallel segments (so their Minkowski sum has dimension < k), each
    containing a point with vanishing orthant-base coordinates so the Cayley
    sum stays convenient.
    """
    if not (1 <= k <= m <= n) or n - k < 0:
        raise PreconditionError("need 1 <= k <= m <= n")
    rng = random.Random((seed, n, k, m, "bk"))
    base_dim = n - k
    base_orthant = m - k
    # P_0: convenient in R^(m-k)_{>=0} ⊕ R^(n-m), full-dimensional
    p0 = generate_convenient((seed, "p0"), base_dim, base_orthant, extra_points=rng.randint(0, 2), coord_bound=coord_bound) if base_dim else Polytope(0, [()])
    if base_dim and p0.dim != base_dim:
        # retry with a denser simplex; the constructive base always spans
        raise PreconditionError("generator failed to span the base")
    # common direction for the parallel summands (dim of the sum stays <= 1 < k for k >= 2)
    if base_dim:
        direction = [0] * base_dim
        if k >= 2:
            direction[rng.randrange(base_dim)] = rng.choice([1, 1, 2])
    summands = [list(p0.points)]
    for i in range(k):
        anchor = [0] * base_orthant + [rng.randint(-1, 1) for _ in range(base_dim - base_orthant)]
        pts = [tuple(anchor)]
        if k >= 2 and base_dim and rng.random() < 0.7:
            pts.append(tuple(anchor[j] + direction[j] for j in range(base_dim)))
        summands.append(pts)
    cay = cayley_sum([LatticePointSet(base_dim, s) for s in summands])
    # cayley block is last; move it to the front
    pts = []
    for q in cay.points:
        body = q[:base_dim]
        tag = q[base_dim:]
        pts.append(tuple(tag) + tuple(body))
    return Polytope(n, pts)


def orthant_cone_for(n: int, m: int) -> Cone:
    return Cone.orthant_product(n, range(m))
