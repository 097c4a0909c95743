"""Chow ring of a projective bundle P(E) over P^n.

The ring is generated over Z[h]/(h^{n+1}) by the tautological class xi,
subject to the Grothendieck relation written with alternating signs

    xi^r = sum_{i=1}^{min(r,n)} (-1)^{i+1} c_i(E) xi^{r-i},   r = rank E,

i.e. P(E) is the bundle of rank-one quotients of E.  With the other common
convention (lines in E) replace xi by -xi and E by its dual.

The class of a point is h^n xi^{r-1}, so the pushforward of xi^{r-1+i} to the
base is (-1)^i s_i(E) with s(E) = c(E)^{-1}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from numbers import Integral

from .chow_core import BundleClass, segre
from .errors import DegreeMismatch, DimensionMismatch

__all__ = [
    "MixedClass",
    "reduce",
    "integral",
    "taut_degree",
    "divisor_top_intersection",
    "segre_pushforward",
]


@dataclass(frozen=True, eq=False)
class MixedClass:
    """``sum a[(i, j)] h^i xi^j`` on P(base).

    Arithmetic truncates h above degree n but does not apply the Grothendieck
    relation; call :func:`reduce` for the normal form.  Equality compares
    normal forms.
    """

    base: BundleClass
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.base.n
        clean = {}
        for (i, j), a in self.coeffs.items():
            if i < 0 or j < 0:
                raise ValueError("exponents must be non-negative")
            if a and i <= n:
                clean[(i, j)] = a
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def xi(cls, base: BundleClass) -> MixedClass:
        return cls(base, {(0, 1): 1})

    @classmethod
    def h(cls, base: BundleClass) -> MixedClass:
        return cls(base, {(1, 0): 1})

    @classmethod
    def constant(cls, base: BundleClass, a: int = 1) -> MixedClass:
        return cls(base, {(0, 0): a})

    @property
    def dim(self) -> int:
        """Dimension of P(base)."""
        return self.base.n + self.base.rank - 1

    def _coerce(self, other):
        if isinstance(other, Integral):
            return MixedClass.constant(self.base, int(other))
        if isinstance(other, MixedClass):
            if other.base != self.base:
                raise DimensionMismatch("classes live on different projective bundles")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            out[k] = out.get(k, 0) + a
        return MixedClass(self.base, out)

    __radd__ = __add__

    def __neg__(self):
        return MixedClass(self.base, {k: -a for k, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.base.n
        out = defaultdict(int)
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                if i1 + i2 <= n:
                    out[(i1 + i2, j1 + j2)] += a * b
        return MixedClass(self.base, dict(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = MixedClass.constant(self.base)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Integral):
            other = MixedClass.constant(self.base, int(other))
        if not isinstance(other, MixedClass):
            return NotImplemented
        return self.base == other.base and reduce(self).coeffs == reduce(other).coeffs

    def __hash__(self):
        return hash((self.base, frozenset(reduce(self).coeffs.items())))

    def degrees(self) -> set:
        return {i + j for (i, j) in self.coeffs}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), a in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("h" if i == 1 else f"h^{i}"),
                    "" if j == 0 else ("xi" if j == 1 else f"xi^{j}"),
                ) if s
            )
            parts.append(f"{a}*{mono}" if mono else str(a))
        return " + ".join(parts).replace("+ -", "- ")


def reduce(x: MixedClass) -> MixedClass:
    """Normal form: every xi-exponent below rank(base).

    Terms are rewritten from the highest xi-exponent downward, so each
    exponent level is visited once.
    """
    base = x.base
    n, r = base.n, base.rank
    if r == 0:
        if any(j > 0 for (_, j) in x.coeffs):
            raise ValueError("P(E) is empty for a rank-0 bundle")
        return x
    relation = [((-1) ** (l + 1)) * base.c(l) for l in range(min(r, n) + 1)]
    by_j = defaultdict(lambda: defaultdict(int))
    for (i, j), a in x.coeffs.items():
        by_j[j][i] += a
    top = max(by_j, default=0)
    for j in range(top, r - 1, -1):
        row = by_j.pop(j, None)
        if not row:
            continue
        for i, a in row.items():
            if not a:
                continue
            for l in range(1, len(relation)):
                c = relation[l]
                if c and i + l <= n:
                    by_j[j - l][i + l] += a * c
    out = {(i, j): a for j, row in by_j.items() for i, a in row.items() if a}
    return MixedClass(base, out)


def integral(x: MixedClass) -> int:
    """Degree of a top-dimensional class, normalized so h^n xi^{r-1} is a point."""
    top = x.dim
    bad = x.degrees() - {top}
    if bad:
        raise DegreeMismatch(
            f"class has components in degree(s) {sorted(bad)}; integral needs pure degree {top}"
        )
    return reduce(x).coeffs.get((x.base.n, x.base.rank - 1), 0)


def taut_degree(a: BundleClass) -> int:
    """Top self-intersection of xi, the degree of the map given by |O(1)|."""
    if a.rank < 1:
        raise ValueError("rank must be at least 1")
    return integral(MixedClass.xi(a) ** (a.n + a.rank - 1))


def divisor_top_intersection(a: int, b: int, bundle: BundleClass) -> int:
    """Integral of ``(a*xi + b*h) * xi^(dim - 1)``."""
    if bundle.rank < 1 or bundle.n + bundle.rank - 2 < 0:
        raise ValueError("need rank >= 1 and dim P(E) >= 1")
    xi = MixedClass.xi(bundle)
    d = a * xi + b * MixedClass.h(bundle)
    return integral(d * xi ** (bundle.n + bundle.rank - 2))


def segre_pushforward(a: BundleClass, i: int) -> int:
    """``(-1)^i`` times the integral of ``h^{n-i} xi^{r-1+i}``.

    Agrees with the coefficient of h^i in :func:`chowkit.chow_core.segre`.
    """
    if not 0 <= i <= a.n:
        raise ValueError(f"index {i} outside 0..{a.n}")
    x = MixedClass(a, {(a.n - i, a.rank - 1 + i): 1})
    return (-1) ** i * integral(x)


def segre_route_degree(a: BundleClass) -> int:
    """The same degree as :func:`taut_degree`, read off the Segre series."""
    return (-1) ** a.n * segre(a)[a.n]
