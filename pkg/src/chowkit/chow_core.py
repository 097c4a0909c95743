"""Characteristic classes of vector bundles on projective space.

Everything lives in the truncated ring Z[h]/(h^{n+1}) (or its rational
extension), where h is the hyperplane class of P^n.  Bundles are recorded
only through rank and total Chern class.  Exterior and symmetric powers,
twists and duals are computed through the Chern character: the Newton-type
lambda-ring recursions are run on ``ch`` with exact rationals and converted
back with an integrality assertion that doubles as a correctness tripwire.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Sequence

from .errors import DimensionMismatch, NonIntegralError

__all__ = [
    "TruncatedClass",
    "BundleClass",
    "mul",
    "series_inverse",
    "line_bundle",
    "trivial_bundle",
    "direct_sum",
    "tangent_twist",
    "dual",
    "chern_to_ch",
    "ch_to_chern",
    "adams",
    "exterior_power",
    "symmetric_power",
    "twist",
    "segre",
    "form_bundle",
    "hom_bundle",
    "wedge2_bundle",
]


def _exact(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficient {c!r} is not an exact integer or rational")
    return c


@dataclass(frozen=True)
class TruncatedClass:
    """``sum coeffs[i] * h**i`` modulo ``h**(n+1)``.

    Coefficients are ``int`` (integer variant) or ``Fraction`` (rational
    variant); the two compare equal whenever their values agree.
    """

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ambient dimension must be non-negative")
        cs = tuple(_exact(c) for c in self.coeffs)
        if len(cs) > self.n + 1:
            cs = cs[: self.n + 1]
        cs = cs + (0,) * (self.n + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, n: int) -> TruncatedClass:
        return cls(n, (1,))

    @classmethod
    def zero(cls, n: int) -> TruncatedClass:
        return cls(n, ())

    @classmethod
    def h(cls, n: int) -> TruncatedClass:
        return cls(n, (0, 1))

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i <= self.n else 0

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def rational(self) -> TruncatedClass:
        return TruncatedClass(self.n, tuple(Fraction(c) for c in self.coeffs))

    def integral(self) -> TruncatedClass:
        out = []
        for i, c in enumerate(self.coeffs):
            c = Fraction(c)
            if c.denominator != 1:
                raise NonIntegralError(f"coefficient of h^{i} is {c}, not an integer")
            out.append(int(c))
        return TruncatedClass(self.n, tuple(out))

    def _check(self, other: TruncatedClass):
        if not isinstance(other, TruncatedClass):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"classes live on P^{self.n} and P^{other.n}")
        return other

    def __add__(self, other):
        if isinstance(other, Rational):
            other = TruncatedClass(self.n, (other,))
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedClass(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return TruncatedClass(self.n, tuple(other * c for c in self.coeffs))
        if not isinstance(other, TruncatedClass):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return series_inverse(self) ** (-k)
        out = TruncatedClass.one(self.n)
        base = self
        while k:
            if k & 1:
                out = mul(out, base)
            base = mul(base, base)
            k >>= 1
        return out

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("h" if i == 1 else f"h^{i}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                coef = str(c) if Fraction(c).denominator == 1 else f"({c})"
                term = coef + ("*" + mono if mono else "")
            parts.append(term)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def mul(a: TruncatedClass, b: TruncatedClass) -> TruncatedClass:
    """Product in Z[h]/(h^{n+1}); terms above degree n are dropped eagerly."""
    if a.n != b.n:
        raise DimensionMismatch(f"classes live on P^{a.n} and P^{b.n}")
    n = a.n
    out = [0] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j in range(n + 1 - i):
            y = b.coeffs[j]
            if y:
                out[i + j] += x * y
    return TruncatedClass(n, tuple(out))


def series_inverse(a: TruncatedClass) -> TruncatedClass:
    """Multiplicative inverse of a class with constant term 1."""
    if a.coeffs[0] != 1:
        raise ValueError(f"constant term is {a.coeffs[0]}, expected 1")
    n = a.n
    b = [1] + [0] * n
    for k in range(1, n + 1):
        b[k] = -sum(a.coeffs[i] * b[k - i] for i in range(1, k + 1))
    return TruncatedClass(n, tuple(b))


@dataclass(frozen=True)
class BundleClass:
    """A vector bundle on P^n up to its rank and total Chern class."""

    n: int
    rank: int
    chern: TruncatedClass

    def __post_init__(self):
        chern = self.chern
        if not isinstance(chern, TruncatedClass):
            chern = TruncatedClass(self.n, tuple(chern))
            object.__setattr__(self, "chern", chern)
        if chern.n != self.n:
            raise DimensionMismatch("Chern class and bundle live on different P^n")
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        chern = chern.integral()
        object.__setattr__(self, "chern", chern)
        if chern.coeffs[0] != 1:
            raise ValueError("total Chern class must start with 1")
        top = min(self.rank, self.n)
        for i in range(top + 1, self.n + 1):
            if chern.coeffs[i] != 0:
                raise ValueError(f"c_{i} must vanish for a rank {self.rank} bundle")

    def c(self, i: int) -> int:
        return self.chern[i]

    def __add__(self, other: BundleClass) -> BundleClass:
        return direct_sum(self, other)

    def __str__(self):
        return f"rank {self.rank}, c = {self.chern}"


def trivial_bundle(n: int, rank: int = 1) -> BundleClass:
    return BundleClass(n, rank, TruncatedClass.one(n))


def line_bundle(n: int, d: int) -> BundleClass:
    """O(d) on P^n."""
    return BundleClass(n, 1, TruncatedClass(n, (1, d)))


def direct_sum(a: BundleClass, b: BundleClass) -> BundleClass:
    if a.n != b.n:
        raise DimensionMismatch(f"bundles live on P^{a.n} and P^{b.n}")
    return BundleClass(a.n, a.rank + b.rank, mul(a.chern, b.chern))


def tangent_twist(n: int) -> BundleClass:
    """T(-1), the quotient O^{n+1}/O(-1) of the Euler sequence."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return BundleClass(n, n, series_inverse(TruncatedClass(n, (1, -1))))


def dual(a: BundleClass) -> BundleClass:
    return BundleClass(a.n, a.rank, TruncatedClass(a.n, tuple((-1) ** i * c for i, c in enumerate(a.chern))))


def _power_sums(chern: TruncatedClass) -> list:
    # Newton: p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    n = chern.n
    e = chern.coeffs
    p = [0] * (n + 1)
    for k in range(1, n + 1):
        s = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            s += (-1) ** (i - 1) * e[i] * p[k - i]
        p[k] = s
    return p


def chern_to_ch(a: BundleClass) -> TruncatedClass:
    """Chern character ``rank + sum p_k/k! h^k`` as a rational class."""
    p = _power_sums(a.chern)
    coeffs = [Fraction(a.rank)] + [Fraction(p[k], factorial(k)) for k in range(1, a.n + 1)]
    return TruncatedClass(a.n, tuple(coeffs))


def ch_to_chern(n: int, rank: int, ch: TruncatedClass) -> BundleClass:
    """Invert :func:`chern_to_ch`.

    Raises NonIntegralError when some Chern class picks up a denominator,
    i.e. the rational class is not the character of an actual bundle.
    """
    if ch.n != n:
        raise DimensionMismatch(f"character lives on P^{ch.n}, expected P^{n}")
    if ch.coeffs[0] != rank:
        raise ValueError(f"ch_0 = {ch.coeffs[0]} does not match rank {rank}")
    p = [Fraction(0)] + [Fraction(ch.coeffs[k]) * factorial(k) for k in range(1, n + 1)]
    e = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = sum((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1))
        e[k] = s / k
    for k, x in enumerate(e):
        if x.denominator != 1:
            raise NonIntegralError(f"c_{k} = {x} is not integral")
    return BundleClass(n, rank, TruncatedClass(n, tuple(int(x) for x in e)))


def adams(k: int, ch: TruncatedClass) -> TruncatedClass:
    """psi^k: scale the degree-i part by k**i."""
    if k < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    return TruncatedClass(ch.n, tuple(c * k**i for i, c in enumerate(ch.coeffs)))


def _lambda_recursion(j: int, a: BundleClass, sign: int) -> TruncatedClass:
    # j*ch(P^j) = sum_{i=1..j} sign^{i+1} psi^i(ch A) ch(P^{j-i}); sign=-1 for wedge, +1 for sym
    x = chern_to_ch(a)
    psi = [None] + [adams(i, x) for i in range(1, j + 1)]
    chs = [TruncatedClass(a.n, (Fraction(1),))]
    for m in range(1, j + 1):
        acc = TruncatedClass.zero(a.n)
        for i in range(1, m + 1):
            term = mul(psi[i], chs[m - i])
            acc = acc + (term if sign ** (i + 1) == 1 else -term)
        chs.append(acc * Fraction(1, m))
    return chs[j]


def exterior_power(j: int, a: BundleClass) -> BundleClass:
    if j < 0:
        raise ValueError("exterior power index must be non-negative")
    return ch_to_chern(a.n, comb(a.rank, j), _lambda_recursion(j, a, -1))


def symmetric_power(j: int, a: BundleClass) -> BundleClass:
    if j < 0:
        raise ValueError("symmetric power index must be non-negative")
    rank = comb(a.rank + j - 1, j) if a.rank else (1 if j == 0 else 0)
    return ch_to_chern(a.n, rank, _lambda_recursion(j, a, 1))


def twist(a: BundleClass, d: int) -> BundleClass:
    """A tensor O(d)."""
    if d == 0:
        return a
    return ch_to_chern(a.n, a.rank, mul(chern_to_ch(a), chern_to_ch(line_bundle(a.n, d))))


def segre(a: BundleClass) -> TruncatedClass:
    return series_inverse(a.chern)


def form_bundle(n: int, p: int, t: int) -> BundleClass:
    """Omega^p(t) on P^n, built as a twist of an exterior power of the cotangent bundle."""
    if not 0 <= p <= n:
        raise ValueError(f"form degree p={p} outside 0..{n}")
    cotangent = dual(twist(tangent_twist(n), 1))
    return twist(exterior_power(p, cotangent), t)


def hom_bundle(n: int) -> BundleClass:
    """Hom(O^n, T(-1)), realized as the n-fold direct sum of T(-1)."""
    t = tangent_twist(n)
    out = trivial_bundle(n, 0)
    for _ in range(n):
        out = direct_sum(out, t)
    return out


def wedge2_bundle(n: int) -> BundleClass:
    """The second exterior power of T(-1)."""
    return exterior_power(2, tangent_twist(n))


def binomial_series(n: int, base: Sequence[int], exponent: int) -> TruncatedClass:
    """``(sum base[i] h^i) ** exponent`` truncated; negative exponents allowed."""
    return TruncatedClass(n, tuple(base)) ** exponent
