"""Rational polyhedral cones: orthant products, generator form, face posets.

A cone is either the orthant product R^m_{>=0} on a chosen coordinate set
(direct sum the remaining free coordinates), or a full-dimensional cone given
by rays and lineality generators.  Faces are keyed by the full set of facet
inequalities active on them; the face poset is Eulerian with rho(F) = dim F
and minimal face the lineality space.
"""

from __future__ import annotations

import itertools

from .errors import PreconditionError
from .intlin import integer_kernel_rows, rank
from .posets import FinitePoset


class Cone:
    def __init__(self, ambient, rays, lineality, facet_normals, orthant_coords=None):
        self.ambient = ambient
        self.rays = [tuple(r) for r in rays]
        self.lineality = [tuple(v) for v in lineality]
        self.facet_normals = [tuple(n) for n in facet_normals]
        self.orthant_coords = orthant_coords
        self._faces = None
        self._poset = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def orthant_product(cls, ambient: int, orthant_coords) -> "Cone":
        coords = sorted(set(orthant_coords))
        if any(c < 0 or c >= ambient for c in coords):
            raise PreconditionError("orthant coordinate out of range")
        unit = lambda c: tuple(1 if j == c else 0 for j in range(ambient))
        rays = [unit(c) for c in coords]
        lin = [unit(j) for j in range(ambient) if j not in coords]
        return cls(ambient, rays, lin, rays, orthant_coords=tuple(coords))

    @classmethod
    def from_generators(cls, ambient: int, rays, lineality=()) -> "Cone":
        rays = [tuple(int(x) for x in r) for r in rays]
        lin = [tuple(int(x) for x in v) for v in lineality]
        for v in rays + lin:
            if len(v) != ambient:
                raise PreconditionError("generator has wrong dimension")
        if any(all(x == 0 for x in r) for r in rays):
            raise PreconditionError("degenerate zero ray")
        gens = [list(g) for g in rays + lin]
        if rank(gens) != ambient:
            raise PreconditionError("general-form cones must be full-dimensional")
        normals = _dual_facets(ambient, rays, lin)
        return cls(ambient, rays, lin, normals)

    @classmethod
    def from_json(cls, obj) -> "Cone":
        if "rays" in obj or "lineality" in obj:
            rays = obj.get("rays", [])
            lin = obj.get("lineality", [])
            pts = list(rays) + list(lin)
            if not pts:
                raise PreconditionError("cone JSON needs rays or lineality")
            return cls.from_generators(len(pts[0]), rays, lin)
        try:
            ambient = int(obj["ambient"])
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"bad cone JSON near field {exc}") from exc
        if "orthant_coords" in obj:
            return cls.orthant_product(ambient, obj["orthant_coords"])
        m = int(obj.get("orthant", 0))
        if m < 0 or m > ambient:
            raise PreconditionError("bad orthant count")
        return cls.orthant_product(ambient, range(m))

    def to_json(self):
        if self.orthant_coords is not None:
            oc = self.orthant_coords
            if oc == tuple(range(len(oc))):
                return {"orthant": len(oc), "ambient": self.ambient}
            return {"orthant_coords": list(oc), "ambient": self.ambient}
        return {"rays": [list(r) for r in self.rays], "lineality": [list(v) for v in self.lineality], "ambient": self.ambient}

    # -- structure ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.ambient

    def contains(self, p) -> bool:
        return all(sum(n[i] * p[i] for i in range(self.ambient)) >= 0 for n in self.facet_normals)

    def _vanishing_normals(self, vectors) -> frozenset:
        out = []
        for i, n in enumerate(self.facet_normals):
            if all(sum(n[k] * v[k] for k in range(self.ambient)) == 0 for v in vectors):
                out.append(i)
        return frozenset(out)

    def faces(self):
        """All faces, sorted by dim; each is a dict with active set, rays, dim."""
        if self._faces is not None:
            return self._faces
        m = len(self.facet_normals)
        by_rays = {}
        for size in range(m + 1):
            for active in itertools.combinations(range(m), size):
                on_rays = tuple(
                    r
                    for r in self.rays
                    if all(sum(self.facet_normals[i][k] * r[k] for k in range(self.ambient)) == 0 for i in active)
                )
                if on_rays in by_rays:
                    continue
                span = [list(r) for r in on_rays] + [list(v) for v in self.lineality]
                full = self._vanishing_normals(list(on_rays) + list(self.lineality))
                by_rays[on_rays] = {
                    "active": full,
                    "rays": on_rays,
                    "dim": rank(span) if span else 0,
                }
        faces = sorted(by_rays.values(), key=lambda f: (f["dim"], sorted(f["active"])))
        self._faces = faces
        return faces

    def face_poset(self) -> FinitePoset:
        """Eulerian poset of faces (no empty face), rho(F) = dim F, labels = active sets."""
        if self._poset is not None:
            return self._poset
        faces = self.faces()
        elems = [f["active"] for f in faces]
        dims = {f["active"]: f["dim"] for f in faces}
        # F <= G iff every normal active on G is active on F (reverse inclusion)
        leq = {a: frozenset(b for b in elems if b <= a) for a in elems}
        self._poset = FinitePoset(elems, leq=leq, rank=dims)
        return self._poset

    def minimal_face(self) -> frozenset:
        return self.face_poset().bottom()

    def top_face(self) -> frozenset:
        return self._vanishing_normals([])  # usually the empty set

    def face_of_points(self, points) -> frozenset:
        """Active set of the smallest face containing the given cone points."""
        active = []
        for i, n in enumerate(self.facet_normals):
            if all(sum(n[k] * p[k] for k in range(self.ambient)) == 0 for p in points):
                active.append(i)
        return frozenset(active)

    def points_on_face(self, points, active: frozenset):
        out = []
        for p in points:
            if all(sum(self.facet_normals[i][k] * p[k] for k in range(self.ambient)) == 0 for i in active):
                out.append(tuple(p))
        return out

    def face_dim(self, active: frozenset) -> int:
        return self.face_poset().rank[active]

    def facets(self):
        return [f for f in self.faces() if f["dim"] == self.ambient - 1]


def _dual_facets(ambient, rays, lineality):
    """Facet normals of cone(rays) + span(lineality), by brute-force duality."""
    gens = [list(r) for r in rays]
    lin = [list(v) for v in lineality]
    n = ambient
    normals = set()
    for size in range(0, len(gens) + 1):
        for sub in itertools.combinations(gens, size):
            mat = lin + list(sub)
            if rank(mat) != n - 1:
                continue
            kern = integer_kernel_rows(mat, n)
            if len(kern) != 1:
                continue
            xi = kern[0]
            vals = [sum(xi[k] * r[k] for k in range(n)) for r in gens]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                xi = [-x for x in xi]
                vals = [-v for v in vals]
            else:
                continue
            if all(v == 0 for v in vals):
                continue
            tight = lin + [gens[i] for i, v in enumerate(vals) if v == 0]
            if rank(tight) == n - 1:
                normals.add(tuple(xi))
    return sorted(normals)
