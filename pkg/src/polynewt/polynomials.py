"""Dense exact-coefficient univariate polynomials.

IntPolynomial is the value type of every g/h/h*/l* computation: integer
coefficients, lowest degree first, trailing zeros trimmed.  A thin layer of
Fraction-coefficient helpers supports Ehrhart interpolation.
"""

from __future__ import annotations

from fractions import Fraction


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        for v in c:
            if not isinstance(v, int):
                raise TypeError(f"integer coefficients required, got {v!r}")
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1):
        return cls((0,) * k + (c,))

    def degree(self) -> int:
        """Degree, with deg 0 = -1 convention for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, t: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * t + c
        return v

    def reverse(self, n: int) -> "IntPolynomial":
        """t^n * p(1/t); requires deg p <= n."""
        if self.degree() > n:
            raise ValueError("degree exceeds reversal bound")
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return IntPolynomial(out)

    def is_symmetric(self, twice_center: int) -> bool:
        """Coefficients symmetric centered at twice_center/2, i.e. p = t^(2c)p(1/t)."""
        if self.is_zero():
            return True
        if twice_center < self.degree():
            return False
        top = twice_center
        return all(self[i] == self[top - i] for i in range(top + 1))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def truncate_below(self, k: int) -> "IntPolynomial":
        """Keep only terms of degree >= k, shifted down by k."""
        return IntPolynomial(self.coeffs[k:])

    def __repr__(self):
        if not self.coeffs:
            return "IntPolynomial(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "IntPolynomial(" + " + ".join(parts) + ")"


def t_minus_one_power(k: int) -> IntPolynomial:
    """(t-1)^k as an IntPolynomial."""
    if k < 0:
        raise ValueError("negative exponent")
    p = IntPolynomial.one()
    step = IntPolynomial((-1, 1))
    for _ in range(k):
        p = p * step
    return p


def interpolate_rational(values) -> list[Fraction]:
    """Coefficients of the polynomial p with p(i) = values[i] for i = 0..n.

    Plain Newton forward differences over Fraction; lowest degree first.
    """
    n = len(values)
    diffs = [Fraction(v) for v in values]
    newton = [diffs[0]]
    for k in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0])
    # expand sum_k newton[k] * binom(m, k) in the monomial basis
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # falling factorial m(m-1)...(m-k+1)/k!
    for k in range(n):
        scale = newton[k]
        for i, c in enumerate(basis):
            coeffs[i] += scale * c
        # multiply basis by (m - k) / (k + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c
            nxt[i] -= k * c
        basis = [c / (k + 1) for c in nxt]
    return coeffs


def eval_rational(coeffs, m: int) -> Fraction:
    v = Fraction(0)
    for c in reversed(coeffs):
        v = v * m + c
    return v
