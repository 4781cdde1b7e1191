"""Exact lattice geometry: hulls, face lattices, lattice volumes, sums.

All volumes are lattice volumes Vol_Z: the (dim)!-normalized volume measured
in the lattice of the affine span (span intersected with Z^n), so a
unimodular simplex has volume 1 and a point has volume 1.  No floating point
is used anywhere; numpy appears only for exact int64 box scans when counting
lattice points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .intlin import (
    bareiss_det,
    coords_in_saturation,
    hyperplane_normal,
    in_rational_span,
    integer_kernel_rows,
    quotient_coords,
    rank,
    smith_transform,
)
from .posets import FinitePoset


@dataclass(frozen=True)
class LatticePointSet:
    """A finite set of integer points in Z^ambient_dim (deduplicated)."""

    ambient_dim: int
    points: tuple

    def __init__(self, ambient_dim, points):
        if ambient_dim < 0:
            raise PreconditionError("ambient dimension must be nonnegative")
        pts = []
        seen = set()
        for p in points:
            t = tuple(int(x) for x in p)
            if len(t) != ambient_dim:
                raise PreconditionError(f"point {t} has wrong length, expected {ambient_dim}")
            if t not in seen:
                seen.add(t)
                pts.append(t)
        if not pts:
            raise PreconditionError("point set must be nonempty")
        pts.sort()
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "points", tuple(pts))

    def translate(self, v):
        return LatticePointSet(self.ambient_dim, [tuple(p[i] + v[i] for i in range(self.ambient_dim)) for p in self.points])

    def to_json(self):
        return {"dim": self.ambient_dim, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj["dim"]), obj["points"])
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"bad point-set JSON near field {exc}") from exc


@dataclass(frozen=True)
class LatticeMap:
    """An affine lattice map x -> matrix.x + translation."""

    matrix: tuple
    translation: tuple

    def __init__(self, matrix, translation=None):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if translation is None:
            translation = (0,) * len(m)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", tuple(int(x) for x in translation))

    def __call__(self, p):
        return tuple(sum(self.matrix[i][j] * p[j] for j in range(len(p))) + self.translation[i] for i in range(len(self.matrix)))

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        mat = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(len(other.matrix))) for j in range(len(other.matrix[0]))] for i in range(len(self.matrix))]
        tr = [sum(self.matrix[i][k] * other.translation[k] for k in range(len(other.translation))) + self.translation[i] for i in range(len(self.matrix))]
        return LatticeMap(mat, tr)


# -- span coordinates ---------------------------------------------------------

def span_data(points):
    """Exact coordinates of the points in the lattice of their affine span.

    Returns (dim, coords) where coords are integer tuples of length dim in a
    basis of (affine span) ∩ Z^n.  A single point gets dim 0.
    """
    pts = [tuple(p) for p in points]
    p0 = pts[0]
    n = len(p0)
    diffs = [[p[i] - p0[i] for i in range(n)] for p in pts[1:]]
    if not diffs:
        return 0, [()] * len(pts)
    r, _, tinv = smith_transform(diffs, n)
    coords = [(0,) * r]
    for d in diffs:
        c = [sum(d[i] * tinv[i][j] for i in range(n)) for j in range(n)]
        assert all(x == 0 for x in c[r:])
        coords.append(tuple(c[:r]))
    return r, coords


def dim_of(points) -> int:
    pts = [tuple(p) for p in points]
    if not pts:
        return -1
    p0 = pts[0]
    n = len(p0)
    return rank([[p[i] - p0[i] for i in range(n)] for p in pts[1:]])


# -- hull engine --------------------------------------------------------------

def _placing_triangulation(coords, d):
    """Triangulation of conv(coords) in Z^d by placing; returns index simplices.

    Points may include non-extreme ones; coplanar placements add only the
    strictly visible cones, which is enough for exact volumes and boundary
    hyperplanes.
    """
    npts = len(coords)
    # initial affinely independent simplex
    simplex = [0]
    basis = []
    for i in range(1, npts):
        cand = [coords[i][k] - coords[simplex[0]][k] for k in range(d)]
        if rank(basis + [cand]) > len(basis):
            basis.append(cand)
            simplex.append(i)
            if len(simplex) == d + 1:
                break
    assert len(simplex) == d + 1, "points do not span the expected dimension"

    def orient(face, i):
        # sign of det of (face points, point i) relative to face hyperplane
        base = coords[face[0]]
        rows = [[coords[f][k] - base[k] for k in range(d)] for f in face[1:]]
        rows.append([coords[i][k] - base[k] for k in range(d)])
        return bareiss_det(rows)

    simplices = [tuple(simplex)]
    # boundary faces with outward orientation: map frozenset(face) -> (face tuple, opposite vertex)
    boundary = {}
    for j in range(d + 1):
        face = tuple(v for t, v in enumerate(simplex) if t != j)
        boundary[frozenset(face)] = (face, simplex[j])

    placed = set(simplex)
    for i in range(npts):
        if i in placed:
            continue
        placed.add(i)
        visible = []
        for key, (face, opp) in boundary.items():
            s_new = orient(face, i)
            if s_new == 0:
                continue
            s_old = orient(face, opp)
            if s_old * s_new < 0:
                visible.append(key)
        if not visible:
            continue  # inside current hull (or on its boundary)
        for key in visible:
            face, _ = boundary.pop(key)
            simplices.append(face + (i,))
            for j in range(d):
                sub = tuple(v for t, v in enumerate(face) if t != j) + (i,)
                skey = frozenset(sub)
                if skey in boundary:
                    del boundary[skey]
                else:
                    boundary[skey] = (sub, face[j])
    return simplices, [face for face, _ in boundary.values()]


def _hull_engine(points):
    """Facets, faces and volume of conv(points), computed in span coordinates.

    Returns a dict with keys: dim, coords, volume, facets (list of
    (normal, offset, frozenset of on-indices)), faces (dict frozenset ->
    dim, including the full set and the empty set), vertices (sorted index
    list).
    """
    pts = [tuple(p) for p in points]
    d, coords = span_data(pts)
    index_all = frozenset(range(len(pts)))
    if d == 0:
        return {
            "dim": 0,
            "coords": coords,
            "volume": 1,
            "facets": [],
            "faces": {index_all: 0, frozenset(): -1},
            "vertices": [0],
        }
    simplices, bfaces = _placing_triangulation(coords, d)
    volume = 0
    for s in simplices:
        base = coords[s[0]]
        rows = [[coords[v][k] - base[k] for k in range(d)] for v in s[1:]]
        volume += abs(bareiss_det(rows))

    # facet hyperplanes from boundary simplices of the triangulation
    facets = {}
    for face in bfaces:
        base = coords[face[0]]
        diffs = [[coords[v][k] - base[k] for k in range(d)] for v in face[1:]]
        normal = hyperplane_normal(diffs, d)
        if normal is None:
            continue
        off = sum(normal[k] * base[k] for k in range(d))
        vals = [sum(normal[k] * c[k] for k in range(d)) - off for c in coords]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            continue  # seam face of a degenerate placement, not supporting
        if any(v > 0 for v in vals):
            normal = [-x for x in normal]
            off = -off
            vals = [-v for v in vals]
        key = (tuple(normal), off)
        if key not in facets:
            facets[key] = frozenset(i for i, v in enumerate(vals) if v == 0)
    facet_list = [(list(nk), off, onset) for (nk, off), onset in facets.items()]

    # face lattice: closure of facet on-sets under intersection
    faces = {index_all: d, frozenset(): -1}
    frontier = {onset for _, _, onset in facet_list}
    for f in frontier:
        faces[f] = dim_of([pts[i] for i in f]) if f else -1
    while frontier:
        new = set()
        for f in frontier:
            for _, _, onset in facet_list:
                g = f & onset
                if g and g not in faces:
                    faces[g] = dim_of([pts[i] for i in g])
                    new.add(g)
                elif not g and g not in faces:
                    faces[g] = -1
        frontier = new
    vertices = sorted({next(iter(f)) for f, dm in faces.items() if dm == 0})
    return {
        "dim": d,
        "coords": coords,
        "volume": volume,
        "facets": facet_list,
        "faces": faces,
        "vertices": vertices,
    }


def lattice_volume_of_points(points) -> int:
    """Vol_Z of conv(points) in the lattice of its affine span (point -> 1)."""
    pts = [tuple(p) for p in points]
    if not pts:
        return 0
    d, coords = span_data(pts)
    if d == 0:
        return 1
    simplices, _ = _placing_triangulation(coords, d)
    vol = 0
    for s in simplices:
        base = coords[s[0]]
        rows = [[coords[v][k] - base[k] for k in range(d)] for v in s[1:]]
        vol += abs(bareiss_det(rows))
    return vol


def volume_in_dim(points, target_dim: int) -> int:
    """Vol_Z of conv(points) counted as a target_dim-dimensional body.

    Zero when the hull has smaller dimension (and for an empty set); this is
    the "volume measured in F" convention of the Newton-number sums.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return 0
    if dim_of(pts) < target_dim:
        return 0
    return lattice_volume_of_points(pts)


# -- extreme points via exact LP ----------------------------------------------

def _in_convex_hull(point, others) -> bool:
    """Exact feasibility of point in conv(others) (phase-1 simplex, Bland)."""
    if not others:
        return False
    n = len(point)
    m = n + 1
    cols = len(others)
    # rows: sum lam_i q_i = p, sum lam_i = 1;  lam >= 0
    a = [[Fraction(q[i]) for q in others] for i in range(n)]
    a.append([Fraction(1)] * cols)
    b = [Fraction(x) for x in point] + [Fraction(1)]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # tableau with artificial basis
    tab = [a[i][:] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [cols + i for i in range(m)]
    ncols = cols + m
    # objective: minimize sum of artificials; reduced cost row
    z = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            z[j] += tab[i][j]
    while True:
        enter = next((j for j in range(cols) if z[j] > 0), None)
        if enter is None:
            break
        ratios = [(tab[i][ncols] / tab[i][enter], basis[i], i) for i in range(m) if tab[i][enter] > 0]
        if not ratios:
            break
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [tab[i][j] - f * tab[leave][j] for j in range(ncols + 1)]
        f = z[enter]
        z = [z[j] - f * tab[leave][j] for j in range(ncols + 1)]
        basis[leave] = enter
    return z[ncols] == 0


def extreme_points(points):
    """The vertices of conv(points), exactly."""
    pts = sorted({tuple(p) for p in points})
    if len(pts) <= 1:
        return pts
    # cheap certificates first: unique optima of coordinate directions
    keep = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not _in_convex_hull(p, others):
            keep.append(p)
    return keep


# -- Polytope -----------------------------------------------------------------

class Polytope:
    """A lattice polytope, stored by its vertex set, with a cached face lattice.

    The face poset (including the empty face) is Eulerian with rank
    dim(face) + 1.
    """

    def __init__(self, ambient_dim, vertices, _hull=None):
        pts = sorted({tuple(int(x) for x in p) for p in vertices})
        if not pts:
            raise PreconditionError("polytope needs at least one point")
        for p in pts:
            if len(p) != ambient_dim:
                raise PreconditionError("vertex has wrong dimension")
        self.ambient_dim = ambient_dim
        self._given = pts
        self._hull = _hull
        self._vertices = None
        self._face_poset = None
        self._face_polytopes = {}

    @classmethod
    def from_points(cls, points_or_set, ambient_dim=None):
        if isinstance(points_or_set, LatticePointSet):
            return cls(points_or_set.ambient_dim, points_or_set.points)
        pts = [tuple(p) for p in points_or_set]
        if ambient_dim is None:
            ambient_dim = len(pts[0])
        return cls(ambient_dim, pts)

    def hull(self):
        if self._hull is None:
            self._hull = _hull_engine(self._given)
        return self._hull

    @property
    def dim(self) -> int:
        return self.hull()["dim"]

    @property
    def vertices(self):
        if self._vertices is None:
            h = self.hull()
            self._vertices = tuple(self._given[i] for i in h["vertices"])
        return self._vertices

    @property
    def points(self):
        """All generating points (vertices after construction via convex_hull)."""
        return tuple(self._given)

    def lattice_volume(self) -> int:
        return self.hull()["volume"] if self.dim > 0 else 1

    def faces(self):
        """List of (frozenset of generator indices, dim), all faces incl. empty and full."""
        return sorted(self.hull()["faces"].items(), key=lambda kv: (kv[1], sorted(kv[0])))

    def face_points(self, face):
        return [self._given[i] for i in sorted(face)]

    def face_polytope(self, face) -> "Polytope":
        key = frozenset(face)
        if key not in self._face_polytopes:
            if not key:
                raise PreconditionError("empty face has no polytope")
            self._face_polytopes[key] = Polytope(self.ambient_dim, self.face_points(key))
        return self._face_polytopes[key]

    def face_poset(self) -> FinitePoset:
        """Face lattice as an Eulerian poset, rank = dim + 1, labels = frozensets."""
        if self._face_poset is None:
            faces = self.hull()["faces"]
            elements = list(faces)
            leq = {f: frozenset(g for g in elements if f <= g) for f in elements}
            ranks = {f: faces[f] + 1 for f in elements}
            self._face_poset = FinitePoset(elements, leq=leq, rank=ranks)
        return self._face_poset

    def facet_inequalities(self):
        """Pairs (normal, offset) with normal.x <= offset on P, in span coordinates."""
        return [(n, off) for n, off, _ in self.hull()["facets"]]

    def span_coords(self):
        h = self.hull()
        return h["coords"]

    def contains_point(self, p) -> bool:
        """Exact membership of an ambient integer point."""
        pts = self._given
        n = self.ambient_dim
        p0 = pts[0]
        diff = [p[i] - p0[i] for i in range(n)]
        dmat = [[q[i] - p0[i] for i in range(n)] for q in pts[1:]]
        if not in_rational_span([Fraction(x) for x in diff], dmat or [[0] * n]):
            return False
        d, coords = span_data(pts)
        if d == 0:
            return tuple(p) == p0
        c = coords_in_saturation([diff], dmat, n)[0]
        for normal, off, _ in self.hull()["facets"]:
            if sum(normal[k] * c[k] for k in range(d)) > off:
                return False
        return True

    def translate(self, v):
        return Polytope(self.ambient_dim, [tuple(p[i] + v[i] for i in range(self.ambient_dim)) for p in self._given])

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.ambient_dim == other.ambient_dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim {self.dim} in Z^{self.ambient_dim}, {len(self.vertices)} vertices)"


def convex_hull(pts: LatticePointSet) -> Polytope:
    """Extreme points of a finite lattice set, as a Polytope."""
    p = Polytope(pts.ambient_dim, pts.points)
    return Polytope(pts.ambient_dim, p.vertices, _hull=None)


def face_lattice(p: Polytope) -> FinitePoset:
    return p.face_poset()


def lattice_volume(p: Polytope) -> int:
    return p.lattice_volume()


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_dim != q.ambient_dim:
        raise PreconditionError("Minkowski sum needs equal ambient dimensions")
    sums = {tuple(a[i] + b[i] for i in range(p.ambient_dim)) for a in p.vertices for b in q.vertices}
    return Polytope(p.ambient_dim, extreme_points(sums))


def minkowski_sum_points(point_sets, ambient_dim):
    """Support points of the Minkowski sum of several point sets (with reduction)."""
    acc = [(0,) * ambient_dim]
    for ps in point_sets:
        acc = list({tuple(a[i] + b[i] for i in range(ambient_dim)) for a in acc for b in ps})
        if len(acc) > 60:
            acc = extreme_points(acc)
    return acc


def cayley_sum(sets, as_polytope=False):
    """Cayley sum P0 * P1 * ... * Pk: P0 x {0} and Pi x {e_i} in Z^(n+k)."""
    if not sets:
        raise PreconditionError("Cayley sum of nothing")
    base = sets[0].ambient_dim if isinstance(sets[0], LatticePointSet) else len(next(iter(sets[0])))
    k = len(sets) - 1
    pts = []
    for idx, s in enumerate(sets):
        spts = s.points if isinstance(s, LatticePointSet) else [tuple(p) for p in s]
        for p in spts:
            if len(p) != base:
                raise PreconditionError("Cayley summands must share an ambient lattice")
            tag = tuple(1 if j == idx - 1 else 0 for j in range(k))
            pts.append(tuple(p) + tag)
    result = LatticePointSet(base + k, pts)
    if as_polytope:
        return convex_hull(result)
    return result


def count_lattice_points(p: Polytope, dilate: int = 1) -> int:
    """#(dilate * P ∩ Z^n) by exact box enumeration in span coordinates."""
    if dilate < 1:
        raise PreconditionError("dilate must be >= 1")
    h = p.hull()
    d = h["dim"]
    if d == 0:
        return 1
    coords = h["coords"]
    m = dilate
    los = [m * min(c[k] for c in coords) for k in range(d)]
    his = [m * max(c[k] for c in coords) for k in range(d)]
    ineqs = [(normal, m * off) for normal, off, _ in h["facets"]]
    if d == 1:
        count = 0
        for x in range(los[0], his[0] + 1):
            if all(n[0] * x <= off for n, off in ineqs):
                count += 1
        return count
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(los, his)]
    grid = np.meshgrid(*axes, indexing="ij")
    flat = np.stack([g.reshape(-1) for g in grid], axis=1)
    ok = np.ones(len(flat), dtype=bool)
    for normal, off in ineqs:
        vals = flat @ np.asarray(normal, dtype=np.int64)
        ok &= vals <= off
    return int(ok.sum())


def count_lattice_points_slicing(p: Polytope, dilate: int = 1) -> int:
    """Independent counting strategy: recursive slicing with rational bounds."""
    h = p.hull()
    d = h["dim"]
    if d == 0:
        return 1
    coords = h["coords"]
    m = dilate
    ineqs = [(normal, Fraction(m * off)) for normal, off, _ in h["facets"]]
    los = [m * min(c[k] for c in coords) for k in range(d)]
    his = [m * max(c[k] for c in coords) for k in range(d)]

    def rec(prefix, constraints):
        j = len(prefix)
        if j == d - 1:
            lo, hi = Fraction(los[j]), Fraction(his[j])
            for normal, off in constraints:
                a = normal[j]
                rest = off - sum(normal[i] * prefix[i] for i in range(j))
                if a > 0:
                    hi = min(hi, rest / a)
                elif a < 0:
                    lo = max(lo, rest / a)
                elif rest < 0:
                    return 0
            import math

            lo_i = math.ceil(lo)
            hi_i = math.floor(hi)
            return max(0, hi_i - lo_i + 1)
        total = 0
        for x in range(los[j], his[j] + 1):
            total += rec(prefix + [x], constraints)
        return total

    return rec([], ineqs)


def project_set(a: LatticePointSet, m: LatticeMap) -> LatticePointSet:
    """Image of a point set in the quotient lattice Z^n / sat(ker M).

    Coordinates are taken in the saturated quotient so that downstream
    lattice volumes match the projected-lattice normalization of the
    Euler-obstruction construction.
    """
    n = a.ambient_dim
    kernel_rows = integer_kernel_rows(m.matrix, n)
    imgs = project_points_along(a.points, kernel_rows, n)
    qdim = len(imgs[0]) if imgs else 0
    return LatticePointSet(qdim, imgs)


def project_points_along(points, kill_rows, n):
    """Quotient-lattice coordinates of points under Z^n -> Z^n/sat(span kill_rows)."""
    if not kill_rows:
        kill_rows = [[0] * n]
    return [tuple(v) for v in quotient_coords([list(p) for p in points], kill_rows, n)]


def unimodular_image(points, mat, translation=None):
    """Apply a unimodular map to points (used to move corpus examples into position)."""
    lm = LatticeMap(mat, translation)
    return [lm(p) for p in points]
