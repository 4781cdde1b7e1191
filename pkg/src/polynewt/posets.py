"""Finite ranked posets, Eulerian structure, g/h-polynomials, twins, agglutination.

Rank functions are carried explicitly and are NOT normalized to rho(min)=0;
all polynomial formulas use rank differences only, while subdivision-map
validation compares ranks across posets, where the absolute values matter
(face posets of polytopes carry rho = dim + 1, cone face posets rho = dim).
"""

from __future__ import annotations

from .errors import PreconditionError
from .polynomials import IntPolynomial, t_minus_one_power


class FinitePoset:
    """An explicit finite poset with an integer rank function.

    `leq` maps each element to the frozenset of elements above or equal to
    it (the up-set).  g/h computations are memoized in a cache shared with
    all intervals and duals derived from this poset.
    """

    def __init__(self, elements, covers=None, leq=None, rank=None, _cache=None, _tag=0):
        self.elements = tuple(elements)
        eset = set(self.elements)
        if len(eset) != len(self.elements):
            raise PreconditionError("duplicate poset elements")
        if leq is None:
            if covers is None:
                raise PreconditionError("need covers or leq")
            above = {e: set() for e in self.elements}
            for a, b in covers:
                above[a].add(b)
            # transitive closure, elements processed in reverse topological order
            changed = True
            while changed:
                changed = False
                for e in self.elements:
                    new = set(above[e])
                    for f in above[e]:
                        new |= above[f]
                    if len(new) != len(above[e]):
                        above[e] = new
                        changed = True
            self.up = {e: frozenset(above[e] | {e}) for e in self.elements}
        else:
            self.up = {e: frozenset(leq[e]) for e in self.elements}
        if rank is None:
            rank = self._infer_rank()
        self.rank = dict(rank)
        self._cache = _cache if _cache is not None else {}
        self._tag = _tag  # 0 = as built, 1 = dual orientation (cache keying)

    # -- basic structure -------------------------------------------------

    def _infer_rank(self):
        depth = {}
        # longest chain below each element
        order = sorted(self.elements, key=lambda e: len(self.up[e]), reverse=True)
        for e in order:  # elements with large up-sets are low
            below = [f for f in self.elements if e in self.up[f] and f != e]
            depth[e] = 1 + max((depth[f] for f in below if f in depth), default=-1)
        return depth

    def le(self, a, b) -> bool:
        return b in self.up[a]

    def lt(self, a, b) -> bool:
        return a != b and b in self.up[a]

    def covers(self):
        cov = []
        for a in self.elements:
            above = [b for b in self.up[a] if b != a]
            for b in above:
                if not any(c != a and c != b and c in self.up[a] and b in self.up[c] for c in above):
                    cov.append((a, b))
        return cov

    def minimal_elements(self):
        return [e for e in self.elements if not any(e in self.up[f] and f != e for f in self.elements)]

    def maximal_elements(self):
        return [e for e in self.elements if self.up[e] == frozenset({e})]

    def bottom(self):
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self):
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    def rk(self) -> int:
        """Length of the longest chain (max rank difference)."""
        if not self.elements:
            return 0
        return max(self.rank.values()) - min(self.rank.values())

    def interval(self, a, b) -> "FinitePoset":
        if not self.le(a, b):
            raise PreconditionError("empty interval")
        elems = [e for e in self.elements if e in self.up[a] and b in self.up[e]]
        eset = set(elems)
        leq = {e: frozenset(self.up[e] & eset) for e in elems}
        return FinitePoset(elems, leq=leq, rank={e: self.rank[e] for e in elems}, _cache=self._cache, _tag=self._tag)

    def subposet(self, elems) -> "FinitePoset":
        eset = set(elems)
        keep = [e for e in self.elements if e in eset]
        leq = {e: frozenset(self.up[e] & eset) for e in keep}
        return FinitePoset(keep, leq=leq, rank={e: self.rank[e] for e in keep}, _cache=self._cache, _tag=self._tag)

    def dual(self) -> "FinitePoset":
        eset = set(self.elements)
        down = {e: frozenset(f for f in eset if e in self.up[f]) for e in eset}
        mx = max(self.rank.values()) if self.elements else 0
        return FinitePoset(self.elements, leq=down, rank={e: mx - self.rank[e] for e in self.elements}, _cache=self._cache, _tag=1 - self._tag)

    # -- Eulerian structure ------------------------------------------------

    def is_ranked(self) -> bool:
        return all(self.rank[b] == self.rank[a] + 1 for a, b in self.covers())

    def is_locally_eulerian(self) -> bool:
        if not self.is_ranked():
            return False
        for a in self.elements:
            for b in self.up[a]:
                if a == b:
                    continue
                evens = odds = 0
                for c in self.up[a]:
                    if b in self.up[c]:
                        if (self.rank[c] - self.rank[a]) % 2 == 0:
                            evens += 1
                        else:
                            odds += 1
                if evens != odds:
                    return False
        return True

    def classify(self) -> str:
        """Strongest of eulerian / lower_eulerian / ranked / none."""
        if not self.is_ranked():
            return "none"
        if not self.is_locally_eulerian():
            return "ranked"
        if self.bottom() is None:
            return "ranked"
        if self.top() is not None:
            return "eulerian"
        return "lower_eulerian"

    def is_eulerian(self) -> bool:
        return self.classify() == "eulerian"

    def is_lower_eulerian(self) -> bool:
        return self.classify() in ("eulerian", "lower_eulerian")

    def is_boolean(self) -> bool:
        """Is this poset a Boolean algebra (face lattice of a simplex)?"""
        bot, top = self.bottom(), self.top()
        if bot is None or top is None or not self.is_ranked():
            return False
        n = self.rank[top] - self.rank[bot]
        if len(self.elements) != 2 ** n:
            return False
        atoms = [e for e in self.elements if self.rank[e] == self.rank[bot] + 1 and e in self.up[bot]]
        if len(atoms) != n:
            return False
        sig = {}
        for e in self.elements:
            key = frozenset(a for a in atoms if e in self.up[a])
            if key in sig or len(key) != self.rank[e] - self.rank[bot]:
                return False
            sig[key] = e
        return len(sig) == 2 ** n

    def is_simplicial(self) -> bool:
        bot = self.bottom()
        if bot is None:
            return False
        return all(self.interval(bot, x).is_boolean() for x in self.elements)

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "elements": [repr(e) for e in self.elements],
            "covers": [[repr(a), repr(b)] for a, b in self.covers()],
            "rank": {repr(e): self.rank[e] for e in self.elements},
        }

    @classmethod
    def from_json(cls, obj):
        try:
            elements = list(obj["elements"])
            covers = [tuple(c) for c in obj["covers"]]
            rank = dict(obj["rank"]) if "rank" in obj and obj["rank"] else None
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"bad poset JSON near field {exc}") from exc
        return cls(elements, covers=covers, rank=rank)


# -- g and h polynomials -------------------------------------------------------


def g_polynomial(poset: FinitePoset) -> IntPolynomial:
    """Stanley's g-polynomial of an Eulerian poset, by the defining recursion."""
    bot, top = poset.bottom(), poset.top()
    if bot is None or top is None:
        raise PreconditionError("g-polynomial needs a bounded poset")
    return _g(poset, bot, top)


def _g(poset, bot, top) -> IntPolynomial:
    # cache key: orientation tag + the interval's element set
    elems = frozenset(e for e in poset.elements if poset.le(bot, e) and poset.le(e, top))
    key = ("g", poset._tag, elems)
    cache = poset._cache
    if key in cache:
        return cache[key]
    n = poset.rank[top] - poset.rank[bot]
    if n == 0:
        cache[key] = IntPolynomial.one()
        return cache[key]
    # sum over x < top of g([bot,x]) (t-1)^(n - rho(x)); since deg g < n/2,
    # the high-degree half of t^n g(1/t) = rhs + g determines g
    rhs = IntPolynomial.zero()
    for x in elems:
        if x == top:
            continue
        rhs = rhs + _g(poset, bot, x) * t_minus_one_power(n - (poset.rank[x] - poset.rank[bot]))
    g = [rhs[n - k] for k in range((n - 1) // 2 + 1)]
    gp = IntPolynomial(g)
    if gp.reverse(n) - rhs != gp:
        raise PreconditionError("g-recursion inconsistent: interval is not Eulerian")
    cache[key] = gp
    return gp


def h_polynomial(poset: FinitePoset) -> IntPolynomial:
    """h-polynomial of a lower Eulerian poset: t^n h(1/t) = sum g([0,x])(t-1)^(n-rho x)."""
    bot = poset.bottom()
    if bot is None:
        raise PreconditionError("h-polynomial needs a minimum")
    n = max(poset.rank[e] for e in poset.elements) - poset.rank[bot]
    rhs = IntPolynomial.zero()
    for x in poset.elements:
        gx = _g(poset, bot, x)
        rhs = rhs + gx * t_minus_one_power(n - (poset.rank[x] - poset.rank[bot]))
    return IntPolynomial([rhs[n - k] for k in range(n + 1)])


def g_of_interval(poset: FinitePoset, a, b) -> IntPolynomial:
    return _g(poset, a, b)


def g_of_dual_interval(poset: FinitePoset, a, b) -> IntPolynomial:
    """g([a,b]^*), the g-polynomial of the reversed interval."""
    dual = poset.interval(a, b).dual()
    return _g(dual, b, a)


# -- constructions -------------------------------------------------------------


def boolean_poset(n: int) -> FinitePoset:
    elems = [frozenset(s) for k in range(n + 1) for s in _subsets(range(n), k)]
    leq = {e: frozenset(f for f in elems if e <= f) for e in elems}
    return FinitePoset(elems, leq=leq, rank={e: len(e) for e in elems})


def _subsets(iterable, k):
    import itertools

    return itertools.combinations(iterable, k)


def chain_poset(n: int) -> FinitePoset:
    elems = list(range(n + 1))
    leq = {e: frozenset(range(e, n + 1)) for e in elems}
    return FinitePoset(elems, leq=leq, rank={e: e for e in elems})


def twins_poset(r: FinitePoset) -> FinitePoset:
    """The twins-poset R^± = R ⊔ R^- with phi^-(x) < x; R copy shifted up in rank.

    Elements are tagged ("+", x) and ("-", x); rho(("-",x)) = rho_R(x) and
    rho(("+",x)) = rho_R(x) + 1, so twins of a cone face poset matches the
    boundary-subdivision target ranks.
    """
    elems = [("-", x) for x in r.elements] + [("+", x) for x in r.elements]
    leq = {}
    for x in r.elements:
        ups = r.up[x]
        leq[("-", x)] = frozenset({("-", y) for y in ups} | {("+", y) for y in ups})
        leq[("+", x)] = frozenset({("+", y) for y in ups})
    rank = {}
    for x in r.elements:
        rank[("-", x)] = r.rank[x]
        rank[("+", x)] = r.rank[x] + 1
    return FinitePoset(elems, leq=leq, rank=rank)


def agglutinate_posets(g1: FinitePoset, g2: FinitePoset, boundary) -> FinitePoset:
    """Agglutination of two posets along a shared boundary lower set.

    `boundary` is a set of element labels present in both posets with the
    same induced order; elements outside it are tagged by side.  The
    boundary must be a lower set of both with rank deficit 1.
    """
    bset = set(boundary)
    for g in (g1, g2):
        for e in bset:
            if e not in g.up:
                raise PreconditionError("boundary element missing from a summand")
            below = {f for f in g.elements if e in g.up[f]}
            if not below <= bset:
                raise PreconditionError("boundary is not a lower set")
    if max(g1.rank[e] for e in bset) != max(g1.rank[e] for e in g1.elements) - 1:
        raise PreconditionError("boundary must have rank deficit 1")

    def label(side, e):
        return e if e in bset else (side, e)

    elems = [label(1, e) for e in g1.elements] + [label(2, e) for e in g2.elements if e not in bset]
    leq = {}
    for side, g in ((1, g1), (2, g2)):
        for e in g.elements:
            le = label(side, e)
            ups = frozenset(label(side, f) for f in g.up[e])
            leq[le] = leq.get(le, frozenset()) | ups
    rank = {}
    for side, g in ((1, g1), (2, g2)):
        for e in g.elements:
            rank[label(side, e)] = g.rank[e]
    return FinitePoset(elems, leq=leq, rank=rank)
