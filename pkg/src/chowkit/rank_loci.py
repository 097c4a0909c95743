"""Exact linear algebra on the incidence correspondences.

Points of P^n are vectors v in Q^{n+1}.  Over v, the bundle fibres are

* HOM: maps phi: C^n -> C^{n+1} with phi^t v = 0, i.e. maps into v^perp;
* ALT: alternating phi on C^{n+1} with phi v = 0, i.e. forms on C^{n+1}/<v>.

The second projection is injective over matrices of maximal rank.  Over the
rank-deficient locus the fibre jumps, and the exceptional divisor is cut out
fibrewise by a determinant (HOM) or a Pfaffian (ALT).  No floating point is
used anywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .errors import IncidenceViolated, NotAlternatingError, OddDimensionError, OddSizeError

HOM = "hom"
ALT = "alt"
VARIANTS = (HOM, ALT)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> ExactMatrix:
        return cls(size, size, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def T(self) -> ExactMatrix:
        e = self.entries
        return ExactMatrix(self.cols, self.rows, tuple(
            tuple(e[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.entries
        return ExactMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries
        ))

    def __mul__(self, scalar):
        return ExactMatrix(self.rows, self.cols, tuple(tuple(scalar * x for x in r) for r in self.entries))

    __rmul__ = __mul__

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(sum(a * Fraction(x) for a, x in zip(row, v)) for row in self.entries)

    def delete(self, rows=(), cols=()) -> ExactMatrix:
        keep_r = [i for i in range(self.rows) if i not in set(rows)]
        keep_c = [j for j in range(self.cols) if j not in set(cols)]
        return ExactMatrix(len(keep_r), len(keep_c), tuple(
            tuple(self.entries[i][j] for j in keep_c) for i in keep_r
        ))

    def is_alternating(self) -> bool:
        if self.rows != self.cols:
            return False
        e = self.entries
        return all(e[i][i] == 0 for i in range(self.rows)) and all(
            e[i][j] == -e[j][i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def to_json(self) -> list:
        return [[_fmt(x) for x in row] for row in self.entries]


def _fmt(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"matrix entry {x!r} must be an integer or a 'p/q' string")


def matrix_from_json(data) -> ExactMatrix:
    """Array-of-arrays of integers or ``"p/q"`` strings."""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a non-empty JSON array of arrays")
    return ExactMatrix.from_rows([[parse_rational(x) for x in row] for row in data])


def load_matrix(path) -> ExactMatrix:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def alternating(M: ExactMatrix) -> ExactMatrix:
    if not M.is_alternating():
        raise NotAlternatingError("matrix is not alternating (M^t = -M, zero diagonal)")
    return M


# --- elimination -----------------------------------------------------------

def _integer_rows(M: ExactMatrix) -> tuple[list, Fraction]:
    """Scale each row to integers; returns the rows and the product of the scales."""
    rows, scale = [], Fraction(1)
    for r in M.entries:
        m = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * m) for x in r])
        scale *= m
    return rows, scale


def _bareiss(a: list) -> tuple[int, int]:
    """Fraction-free elimination in place. Returns (rank, signed last pivot).

    For a square full-rank input the second value is the determinant.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * p - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(M: ExactMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    rows, _ = _integer_rows(M)
    return _bareiss(rows)[0]


def det(M: ExactMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(M)
    r, d = _bareiss(rows)
    return Fraction(d) / scale if r == M.rows else Fraction(0)


def kernel_basis(M: ExactMatrix) -> list:
    """Basis of ``{x : M x = 0}`` as primitive integer vectors."""
    a = [list(r) for r in M.entries]
    pivots = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for row, c in enumerate(pivots):
            v[c] = -a[row][f]
        basis.append(_primitive(v))
    return basis


def _primitive(v: Sequence[Fraction]) -> tuple:
    m = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    first = next(x for x in ints if x)
    g = g if first > 0 else -g
    return tuple(x // g for x in ints)


# --- Pfaffians -------------------------------------------------------------

def pfaffian_expansion(M: ExactMatrix) -> Fraction:
    """Expansion along the first row; exponential, used for small sizes and as an oracle."""
    size = M.rows
    e = M.entries

    def pf(idx: tuple) -> Fraction:
        if not idx:
            return Fraction(1)
        i0 = idx[0]
        total = Fraction(0)
        for pos in range(1, len(idx)):
            a = e[i0][idx[pos]]
            if a == 0:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            sign = 1 if pos % 2 == 1 else -1
            total += sign * a * pf(rest)
        return total

    return pf(tuple(range(size)))


def pfaffian_elimination(M: ExactMatrix) -> Fraction:
    """Skew-symmetric elimination: peel off a 2x2 block and recurse on its Schur complement."""
    a = [list(r) for r in M.entries]
    size = len(a)
    result = Fraction(1)
    while size:
        j = next((j for j in range(1, size) if a[0][j] != 0), None)
        if j is None:
            return Fraction(0)
        if j != 1:
            for row in a:
                row[1], row[j] = row[j], row[1]
            a[1], a[j] = a[j], a[1]
            result = -result
        p = a[0][1]
        result *= p
        # S_il = a_il + (a_1i a_0l - a_0i a_1l) / p, for i, l >= 2
        r0, r1 = a[0], a[1]
        a = [
            [a[i][l] + (r1[i] * r0[l] - r0[i] * r1[l]) / p for l in range(2, size)]
            for i in range(2, size)
        ]
        size -= 2
    return result


def pfaffian(M: ExactMatrix) -> Fraction:
    alternating(M)
    if M.rows % 2:
        raise OddSizeError(f"Pfaffian of odd size {M.rows}")
    if M.rows <= 6:
        return pfaffian_expansion(M)
    return pfaffian_elimination(M)


# --- fibres and sections ---------------------------------------------------

@dataclass(frozen=True)
class FiberReport:
    dim: int
    representative: tuple | None


def _check_variant(variant: str, phi: ExactMatrix) -> int:
    """Return n for a well-shaped phi."""
    if variant == HOM:
        if phi.rows != phi.cols + 1:
            raise ValueError(f"HOM expects an (n+1)x n matrix, got {phi.shape}")
        return phi.cols
    if variant == ALT:
        if phi.rows != phi.cols:
            raise ValueError(f"ALT expects a square matrix, got {phi.shape}")
        alternating(phi)
        n = phi.rows - 1
        if n % 2:
            raise OddDimensionError(f"ODD_N: n={n} is odd")
        return n
    raise ValueError(f"unknown variant {variant!r}")


def fiber_over(variant: str, phi: ExactMatrix) -> FiberReport:
    """Fibre of the second projection of the incidence correspondence over phi."""
    _check_variant(variant, phi)
    basis = kernel_basis(phi.T if variant == HOM else phi)
    dim = len(basis) - 1
    return FiberReport(dim, basis[0] if dim == 0 else None)


def _pivot(v: Sequence, rule: str) -> int:
    vals = [Fraction(x) for x in v]
    if not any(vals):
        raise ValueError("v must be non-zero")
    if rule == "max":
        best = max(abs(x) for x in vals)
        return next(i for i, x in enumerate(vals) if abs(x) == best)
    if rule == "last":
        return max(i for i, x in enumerate(vals) if x != 0)
    raise ValueError(f"unknown pivot rule {rule!r}")


def det_section(v: Sequence, phi: ExactMatrix, pivot: str = "max") -> Fraction:
    """Determinant of phi: C^n -> v^perp in the basis given by dropping the pivot coordinate."""
    n = _check_variant(HOM, phi)
    if len(v) != n + 1:
        raise ValueError(f"v must have length {n + 1}")
    if any(phi.T.apply(v)):
        raise IncidenceViolated("phi^t v != 0")
    p = _pivot(v, pivot)
    return det(phi.delete(rows=(p,)))


def pf_section(v: Sequence, phi: ExactMatrix, pivot: str = "max") -> Fraction:
    """Pfaffian of the form phi induces on C^{n+1}/<v>."""
    n = _check_variant(ALT, phi)
    if len(v) != n + 1:
        raise ValueError(f"v must have length {n + 1}")
    if any(phi.apply(v)):
        raise IncidenceViolated("phi v != 0")
    p = _pivot(v, pivot)
    return pfaffian(phi.delete(rows=(p,), cols=(p,)))


# --- sampling probes -------------------------------------------------------

@dataclass(frozen=True)
class SampleConfig:
    seed: int = 42
    bound: int = 10
    samples: int = 100

    def __post_init__(self):
        if self.bound < 1 or self.samples < 1:
            raise ValueError("bound and samples must be positive")

    def rng(self, index: int, stream: str = "") -> random.Random:
        # string seeds hash through sha512, so streams are stable across runs
        return random.Random(f"{self.seed}:{stream}:{index}")


@dataclass
class ProbeReport:
    variant: str
    n: int
    kind: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.kind == "birational":
            return not self.failures and self.counts["singleton_fibers"] == self.counts["full_rank"]
        return not self.failures

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "kind": self.kind,
            "counts": dict(self.counts),
            "failures": list(self.failures),
            "pass": self.passed,
        }


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> ExactMatrix:
    return ExactMatrix(rows, cols, tuple(
        tuple(rng.randint(-bound, bound) for _ in range(cols)) for _ in range(rows)
    ))


def random_alternating(rng: random.Random, size: int, bound: int) -> ExactMatrix:
    a = [[0] * size for _ in range(size)]
    for i, j in combinations(range(size), 2):
        x = rng.randint(-bound, bound)
        a[i][j], a[j][i] = x, -x
    return ExactMatrix(size, size, tuple(map(tuple, a)))


def standard_symplectic(size: int) -> ExactMatrix:
    a = [[0] * size for _ in range(size)]
    for i in range(0, size - 1, 2):
        a[i][i + 1], a[i + 1][i] = 1, -1
    return ExactMatrix(size, size, tuple(map(tuple, a)))


def low_rank_sample(variant: str, n: int, rng: random.Random, bound: int) -> ExactMatrix:
    """A matrix in the rank-deficient locus, built through a factorization."""
    if variant == HOM:
        return random_matrix(rng, n + 1, n - 1, bound) @ random_matrix(rng, n - 1, n, bound)
    B = random_matrix(rng, n + 1, n - 2, bound)
    return B @ standard_symplectic(n - 2) @ B.T


def _require(variant: str, n: int):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if variant == ALT and n % 2:
        raise OddDimensionError(f"ODD_N: n={n} is odd")


def _draw(variant: str, n: int, rng: random.Random, bound: int) -> ExactMatrix:
    if variant == HOM:
        return random_matrix(rng, n + 1, n, bound)
    return random_alternating(rng, n + 1, bound)


def probe_birational(variant: str, n: int, cfg: SampleConfig = SampleConfig()) -> ProbeReport:
    """Every random full-rank draw must have a single point as fibre."""
    _require(variant, n)
    report = ProbeReport(variant, n, "birational", {"full_rank": 0, "singleton_fibers": 0, "degenerate_draws": 0})
    for idx in range(cfg.samples):
        phi = _draw(variant, n, cfg.rng(idx, "birational"), cfg.bound)
        if rank(phi) < n:
            report.counts["degenerate_draws"] += 1
            continue
        report.counts["full_rank"] += 1
        fib = fiber_over(variant, phi)
        if fib.dim == 0:
            report.counts["singleton_fibers"] += 1
        else:
            report.failures.append({"sample": idx, "fiber_dim": fib.dim})
    return report


def probe_exceptional(variant: str, n: int, cfg: SampleConfig = SampleConfig()) -> ProbeReport:
    """Rank-deficient samples: positive-dimensional fibre and vanishing section.
    Full-rank samples: nonvanishing section at their unique fibre point.
    """
    _require(variant, n)
    section = det_section if variant == HOM else pf_section
    counts = {"low_rank": 0, "kernel_vectors": 0, "full_rank": 0, "nonvanishing": 0}
    report = ProbeReport(variant, n, "exceptional", counts)
    for idx in range(cfg.samples):
        rng = cfg.rng(idx, "exceptional")
        phi = low_rank_sample(variant, n, rng, cfg.bound)
        counts["low_rank"] += 1
        r = rank(phi)
        if r > n - 1 or (variant == ALT and r % 2):
            report.failures.append({"sample": idx, "reason": "construction rank", "rank": r})
            continue
        fib = fiber_over(variant, phi)
        if fib.dim < 1:
            report.failures.append({"sample": idx, "reason": "fiber dim", "fiber_dim": fib.dim})
        basis = kernel_basis(phi.T if variant == HOM else phi)
        weights = [rng.randint(-cfg.bound, cfg.bound) for _ in basis]
        combo = tuple(sum(w * b[i] for w, b in zip(weights, basis)) for i in range(n + 1))
        vectors = basis + ([combo] if any(combo) else [])
        for v in vectors:
            counts["kernel_vectors"] += 1
            if section(v, phi) != 0:
                report.failures.append({"sample": idx, "reason": "section nonzero", "v": [int(x) for x in v]})

        phi = _draw(variant, n, rng, cfg.bound)
        if rank(phi) == n:
            counts["full_rank"] += 1
            fib = fiber_over(variant, phi)
            if fib.dim == 0 and section(fib.representative, phi) != 0:
                counts["nonvanishing"] += 1
            else:
                report.failures.append({"sample": idx, "reason": "full rank section vanishes"})
    return report
