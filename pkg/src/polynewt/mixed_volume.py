"""Lattice-normalized mixed volumes and Cayley-sum volume identities.

MV is computed by inclusion-exclusion polarization over Minkowski subset
sums, normalized so that MV(P,...,P) = Vol_Z(P); subset sums are grouped by
multiset to avoid recomputation.
"""

from __future__ import annotations

import itertools
from math import comb

from .errors import InvariantError, PreconditionError
from .geometry import (
    Polytope,
    cayley_sum,
    dim_of,
    lattice_volume_of_points,
    minkowski_sum_points,
    volume_in_dim,
)


def _point_lists(polytopes):
    out = []
    for p in polytopes:
        if isinstance(p, Polytope):
            out.append([tuple(v) for v in p.vertices])
        else:
            out.append([tuple(v) for v in p.points] if hasattr(p, "points") else [tuple(v) for v in p])
    return out


def mixed_volume(polytopes, ambient_dim=None) -> int:
    """MV_Z(P_1,...,P_n) with n = ambient dimension (repeats allowed)."""
    pls = _point_lists(polytopes)
    if ambient_dim is None:
        ambient_dim = len(pls[0][0])
    n = ambient_dim
    if len(pls) != n:
        raise PreconditionError(f"need exactly {n} polytopes in R^{n}")
    for pl in pls:
        if any(len(p) != n for p in pl):
            raise PreconditionError("ambient dimension mismatch")
    # group identical summands: volumes of subset sums depend on the multiset
    distinct = []
    counts = []
    for pl in pls:
        key = frozenset(pl)
        for i, (k, _) in enumerate(distinct):
            if k == key:
                counts[i] += 1
                break
        else:
            distinct.append((key, pl))
            counts.append(1)
    total = 0
    ranges = [range(c + 1) for c in counts]
    for take in itertools.product(*ranges):
        size = sum(take)
        if size == 0:
            continue
        pieces = []
        for (_, pl), cnt in zip(distinct, take):
            pieces.extend([pl] * cnt)
        pts = minkowski_sum_points(pieces, n)
        vol = volume_in_dim(pts, n)
        mult = 1
        for c, t in zip(counts, take):
            mult *= comb(c, t)
        total += mult * (vol if (n - size) % 2 == 0 else -vol)
    from math import factorial

    if total % factorial(n):
        raise InvariantError("mixed volume polarization gave a non-integer")
    total //= factorial(n)
    if total < 0:
        raise InvariantError("negative mixed volume: normalization bug")
    return total


def mv_zero_structural(polytopes, ambient_dim=None) -> bool:
    """Some k of the polytopes sum to dimension < k (the MV = 0 criterion)."""
    pls = _point_lists(polytopes)
    if ambient_dim is None:
        ambient_dim = len(pls[0][0])
    n = ambient_dim
    for size in range(1, len(pls) + 1):
        for sub in itertools.combinations(range(len(pls)), size):
            stacked = []
            for i in sub:
                base = pls[i][0]
                stacked.extend([tuple(p[j] - base[j] for j in range(n)) for p in pls[i]])
            if dim_of(stacked + [tuple([0] * n)]) < size:
                return True
    return False


def cayley_volume_identity(point_sets) -> dict:
    """Verify the Cayley volume identity and its signed (BKK) variant.

    For P_0,...,P_k in Z^(n-k):
      Vol_Z(P_0 * ... * P_k) = sum over a_0+...+a_k = n-k, a_i >= 0 of MV(...)
      sum over J of (-1)^(k-|J|) Vol(P_0 * P_{j in J}) = sum with a_0 >= 0, a_i > 0.
    Returns a report with both sides of both identities.
    """
    pls = _point_lists(point_sets)
    k = len(pls) - 1
    base_dim = len(pls[0][0])
    nk = base_dim  # n - k in the paper's notation
    cay = cayley_sum([_as_set(pl, base_dim) for pl in pls])
    vol_cayley = volume_in_dim(cay.points, base_dim + k)

    mv_total = 0
    for alloc in _compositions(nk, k + 1):
        pieces = []
        for pl, a in zip(pls, alloc):
            pieces.extend([pl] * a)
        mv_total += mixed_volume(pieces, ambient_dim=nk) if pieces else 0

    signed_lhs = 0
    for size in range(0, k + 1):
        for sub in itertools.combinations(range(1, k + 1), size):
            chosen = [pls[0]] + [pls[i] for i in sub]
            cs = cayley_sum([_as_set(pl, base_dim) for pl in chosen])
            vol = volume_in_dim(cs.points, base_dim + size)
            signed_lhs += vol if (k - size) % 2 == 0 else -vol
    signed_rhs = 0
    for alloc in _compositions(nk, k + 1):
        if any(a == 0 for a in alloc[1:]):
            continue
        pieces = []
        for pl, a in zip(pls, alloc):
            pieces.extend([pl] * a)
        signed_rhs += mixed_volume(pieces, ambient_dim=nk)

    ok = (vol_cayley == mv_total) and (signed_lhs == signed_rhs)
    if not ok:
        raise InvariantError(
            f"Cayley identity failed: Vol={vol_cayley} MVsum={mv_total} signed {signed_lhs}!={signed_rhs}"
        )
    return {
        "vol_cayley": vol_cayley,
        "mv_sum": mv_total,
        "signed_alternating": signed_lhs,
        "mv_positive_sum": signed_rhs,
        "ok": ok,
    }


def _as_set(point_list, dim):
    from .geometry import LatticePointSet

    return LatticePointSet(dim, point_list)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
