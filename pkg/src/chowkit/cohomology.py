"""Dimensions of sheaf cohomology on P^n.

Only direct sums of line bundles O(d) and twisted form bundles Omega^p(t)
are handled; their cohomology is given in closed form (Bott's formula).
Anything else is reached through an exact complex of such sums, whose
cokernel is worked out by :func:`chase` one short exact sequence at a time.
The chase only reports dimensions forced by vanishing and refuses to guess
the rank of a connecting map.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import AmbiguousChase, OddDimensionError

log = logging.getLogger(__name__)

LINE = "LINE"
FORM = "FORM"


@dataclass(frozen=True)
class CohTable:
    """``dims[q] = dim H^q`` for q = 0..n."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ValueError(f"negative cohomology dimension in {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def zero(cls, n: int) -> CohTable:
        return cls((0,) * (n + 1))

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, q: int) -> int:
        return self.dims[q] if 0 <= q < len(self.dims) else 0

    def __add__(self, other: CohTable) -> CohTable:
        if len(other.dims) != len(self.dims):
            raise ValueError("tables for different P^n")
        return CohTable(tuple(a + b for a, b in zip(self.dims, other.dims)))

    def scaled(self, m: int) -> CohTable:
        return CohTable(tuple(m * d for d in self.dims))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in enumerate(self.dims))

    def nonzero(self) -> dict:
        return {q: d for q, d in enumerate(self.dims) if d}

    def __str__(self):
        return " ".join(f"h{q}={d}" for q, d in enumerate(self.dims))


@dataclass(frozen=True)
class SheafTerm:
    """A direct sum of O(d)'s and Omega^p(t)'s with multiplicities.

    ``atoms`` is a sorted tuple of ``(kind, params, multiplicity)`` with
    ``params = (d,)`` for LINE and ``(p, t)`` for FORM.
    """

    atoms: tuple = ()

    def __post_init__(self):
        acc = Counter()
        for kind, params, mult in self.atoms:
            if kind not in (LINE, FORM):
                raise ValueError(f"unknown atom kind {kind!r}")
            params = tuple(int(x) for x in params)
            if len(params) != (1 if kind == LINE else 2):
                raise ValueError(f"bad parameters {params} for {kind}")
            if kind == FORM and params[0] < 0:
                raise ValueError("form degree must be non-negative")
            if mult < 0:
                raise ValueError("multiplicities must be positive")
            if mult:
                acc[(kind, params)] += int(mult)
        object.__setattr__(self, "atoms", tuple(sorted((k, p, m) for (k, p), m in acc.items())))

    @classmethod
    def line(cls, d: int, mult: int = 1) -> SheafTerm:
        return cls(((LINE, (d,), mult),))

    @classmethod
    def form(cls, p: int, t: int, mult: int = 1) -> SheafTerm:
        return cls(((FORM, (p, t), mult),))

    def __add__(self, other: SheafTerm) -> SheafTerm:
        return SheafTerm(self.atoms + other.atoms)

    def __mul__(self, m: int) -> SheafTerm:
        return SheafTerm(tuple((k, p, mult * m) for k, p, mult in self.atoms))

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        for kind, params, m in self.atoms:
            s = f"O({params[0]})" if kind == LINE else f"Omega^{params[0]}({params[1]})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class ExactComplex:
    """Terms ``C_m -> ... -> C_0`` listed left to right, exact, with an
    implicit cokernel ``F`` after the last term: ``0 -> C_m -> ... -> C_0 -> F -> 0``.
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("an exact complex needs at least one term")
        object.__setattr__(self, "terms", terms)


def dim_sym(m: int, k: int) -> int:
    if m < 0 or k < 0:
        raise ValueError("dimensions must be non-negative")
    if m == 0:
        return 1 if k == 0 else 0
    return comb(m + k - 1, k)


def dim_wedge(m: int, k: int) -> int:
    if m < 0 or k < 0:
        raise ValueError("dimensions must be non-negative")
    return comb(m, k)


def line_cohomology(n: int, d: int) -> CohTable:
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(n + d, n)
    elif d <= -n - 1:
        dims[n] += comb(-d - 1, n)
    return CohTable(tuple(dims))


def bott(n: int, p: int, t: int) -> CohTable:
    """Bott's formula for ``H^q(P^n, Omega^p(t))``."""
    if not 0 <= p <= n:
        raise ValueError(f"form degree p={p} outside 0..{n}")
    dims = [0] * (n + 1)
    if t == 0:
        dims[p] = 1
    elif t > p:
        dims[0] = comb(t + n - p, t) * comb(t - 1, p)
    elif t < p - n:
        dims[n] = comb(-t + p, -t) * comb(-t - 1, n - p)
    return CohTable(tuple(dims))


def term_cohomology(n: int, term: SheafTerm) -> CohTable:
    out = CohTable.zero(n)
    for kind, params, m in term.atoms:
        table = line_cohomology(n, params[0]) if kind == LINE else bott(n, *params)
        out = out + table.scaled(m)
    return out


def _quotient(n: int, sub: CohTable, mid: CohTable) -> CohTable:
    """Cohomology of C in ``0 -> A -> B -> C -> 0`` from those of A and B.

    The rank of ``H^q(A) -> H^q(B)`` is only known when one side vanishes or
    q = 0 (the map is injective there).
    """
    ranks = []
    for q in range(n + 2):
        a, b = sub[q], mid[q]
        if q == 0:
            if a > b:
                raise ValueError("H^0 of a subsheaf exceeds H^0 of the ambient sheaf")
            ranks.append(a)
        elif q > n or a == 0 or b == 0:
            ranks.append(0)
        else:
            ranks.append(None)
    dims = []
    for q in range(n + 1):
        if ranks[q] is None or ranks[q + 1] is None:
            raise AmbiguousChase(q)
        dims.append(mid[q] - ranks[q] + sub[q + 1] - ranks[q + 1])
    return CohTable(tuple(dims))


def chase(n: int, complex_: ExactComplex | Sequence[SheafTerm]) -> CohTable:
    """Cohomology table of the cokernel of an exact complex."""
    terms = complex_.terms if isinstance(complex_, ExactComplex) else tuple(complex_)
    if not terms:
        raise ValueError("an exact complex needs at least one term")
    kernel = term_cohomology(n, terms[0])
    for term in terms[1:]:
        kernel = _quotient(n, kernel, term_cohomology(n, term))
    return kernel


def expected_euler_characteristic(n: int, complex_: ExactComplex) -> int:
    """Alternating sum of the terms' Euler characteristics, sign + next to the cokernel."""
    terms = complex_.terms
    m = len(terms) - 1
    return sum((-1) ** (m - i) * term_cohomology(n, t).euler_characteristic() for i, t in enumerate(terms))


def euler_resolution(n: int, p: int, t: int) -> ExactComplex:
    """Koszul resolution of Omega^p(t) by sums of line bundles.

    ``0 -> O(t-n-1)^{C(n+1,n+1)} -> ... -> O(t-p-1)^{C(n+1,p+1)} -> Omega^p(t) -> 0``
    """
    if not 0 <= p <= n:
        raise ValueError(f"form degree p={p} outside 0..{n}")
    return ExactComplex(tuple(
        SheafTerm.line(t - j, comb(n + 1, j)) for j in range(n + 1, p, -1)
    ))


def hom_bundle_resolution(n: int) -> ExactComplex:
    """``0 -> O(-1)^n -> O^{n(n+1)} -> Hom(O^n, T(-1)) -> 0``."""
    return ExactComplex((SheafTerm.line(-1, n), SheafTerm.line(0, n * (n + 1))))


def wedge2_resolution(n: int) -> ExactComplex:
    """``0 -> T(-2) -> wedge^2 O^{n+1} -> wedge^2 T(-1) -> 0`` with T(-2) = Omega^{n-1}(n-1)."""
    return ExactComplex((SheafTerm.form(n - 1, n - 1), SheafTerm.line(0, comb(n + 1, 2))))


def lemma1_resolution(n: int) -> ExactComplex:
    """Resolution of S^n(E)(-1) for E = Hom(O^n, T(-1)).

    Term j (j = n at the left) is ``O(-j-1)`` with multiplicity
    ``dim S^{n-j}(C^{n(n+1)}) * dim wedge^j(C^n)``.
    """
    w = n * (n + 1)
    return ExactComplex(tuple(
        SheafTerm.line(-j - 1, dim_sym(w, n - j) * dim_wedge(n, j)) for j in range(n, -1, -1)
    ))


def lemma2_resolution(n: int) -> ExactComplex:
    """Resolution of S^k(V)(-1), V = wedge^2 T(-1), n = 2k.

    The kernel of ``wedge^2 O^{n+1} -> V`` is T(-2), so term j is
    ``wedge^j(T(-2))(-1) = Omega^{n-j}(n-2j)`` with multiplicity
    ``dim S^{k-j}(C^{n(n+1)/2})``.
    """
    if n % 2:
        raise OddDimensionError(f"ODD_N: n={n} is odd")
    k = n // 2
    w = n * (n + 1) // 2
    return ExactComplex(tuple(
        SheafTerm.form(n - j, n - 2 * j, dim_sym(w, k - j)) for j in range(k, -1, -1)
    ))


def lemma1_section_space(n: int) -> int:
    """``dim H^0(P(E), xi^n (x) pi^*O(-1))`` via ``H^0(S^n(E)(-1))``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return chase(n, lemma1_resolution(n))[0]


def lemma2_section_space(n: int) -> int:
    """``dim H^0(P(V), zeta^k (x) pi^*O(-1))`` via ``H^0(S^k(V)(-1))``, n = 2k."""
    if n % 2:
        raise OddDimensionError(f"ODD_N: n={n} is odd")
    if n < 2:
        raise ValueError("n must be at least 2")
    return chase(n, lemma2_resolution(n))[0]


def forced_bott_instances(rng, count: int, max_n: int = 6, max_t: int = 8) -> list:
    """Draw (n, p, t) whose Euler-resolution chase is forced.

    Ambiguous draws are skipped and logged.
    """
    found = []
    seen = set()
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 10_000:
            raise RuntimeError("could not find enough forced instances")
        n = rng.randint(1, max_n)
        p = rng.randint(0, n)
        t = rng.randint(-max_t, max_t)
        if (n, p, t) in seen:
            continue
        seen.add((n, p, t))
        try:
            chase(n, euler_resolution(n, p, t))
        except AmbiguousChase as exc:
            log.info("skipping ambiguous chase for Omega^%d(%d) on P^%d (q=%d)", p, t, n, exc.q)
            continue
        found.append((n, p, t))
    return found
