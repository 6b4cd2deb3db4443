"""Block designs on the point set {1, ..., v} and their rank certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping, Sequence

from .bounds import make_params


class MalformedDesignError(ValueError):
    pass


class NotCoveringOrPackingError(ValueError):
    pass


class BookkeepingError(AssertionError):
    pass


class GramMismatchError(AssertionError):
    pass


class SoundnessViolation(AssertionError):
    """A certificate claimed more blocks than the design actually has."""


class DesignFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


Block = tuple[int, ...]
RationalMatrix = list[list[Fraction]]


@dataclass(frozen=True)
class Design:
    v: int
    k: int
    lam: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        canon = []
        for block in self.blocks:
            block = tuple(sorted(int(x) for x in block))
            if len(block) != self.k or len(set(block)) != self.k:
                raise MalformedDesignError(f"block {block} does not have {self.k} distinct points")
            if block[0] < 1 or block[-1] > self.v:
                raise MalformedDesignError(f"block {block} has a point outside 1..{self.v}")
            canon.append(block)
        object.__setattr__(self, "blocks", tuple(sorted(canon)))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def replication(self) -> dict[int, int]:
        counts = dict.fromkeys(range(1, self.v + 1), 0)
        for block in self.blocks:
            for x in block:
                counts[x] += 1
        return counts

    def pair_counts(self) -> dict[tuple[int, int], int]:
        counts = dict.fromkeys(combinations(range(1, self.v + 1), 2), 0)
        for block in self.blocks:
            for pair in combinations(block, 2):
                counts[pair] += 1
        return counts

    def incidence(self) -> list[list[int]]:
        """The v x b 0/1 incidence matrix."""
        rows = [[0] * self.b for _ in range(self.v)]
        for j, block in enumerate(self.blocks):
            for x in block:
                rows[x - 1][j] = 1
        return rows


@dataclass(frozen=True)
class Classification:
    kind: str  # "exact-design", "covering", "packing" or "neither"
    min_mult: int
    max_mult: int

    @property
    def is_covering(self) -> bool:
        return self.kind in ("covering", "exact-design")

    @property
    def is_packing(self) -> bool:
        return self.kind in ("packing", "exact-design")


def classify(d: Design) -> Classification:
    counts = d.pair_counts().values()
    lo, hi = min(counts), max(counts)
    covering, packing = lo >= d.lam, hi <= d.lam
    if covering and packing:
        kind = "exact-design"
    elif covering:
        kind = "covering"
    elif packing:
        kind = "packing"
    else:
        kind = "neither"
    return Classification(kind, lo, hi)


@dataclass(frozen=True)
class Multigraph:
    v: int
    mult: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def mu(self, u: int, w: int) -> int:
        if u == w:
            return 0
        return self.mult.get((u, w) if u < w else (w, u), 0)

    def degree(self, u: int) -> int:
        return sum(self.mu(u, w) for w in range(1, self.v + 1))

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(range(1, self.v + 1), 0)
        for (u, w), m in self.mult.items():
            deg[u] += m
            deg[w] += m
        return deg

    def adjacency(self) -> list[list[int]]:
        return [[self.mu(u, w) for w in range(1, self.v + 1)] for u in range(1, self.v + 1)]

    @property
    def is_empty(self) -> bool:
        return not self.mult


def _require_side(d: Design) -> Classification:
    cls = classify(d)
    if cls.kind == "neither":
        raise NotCoveringOrPackingError("design is neither a covering nor a packing")
    return cls


def excess_or_leave(d: Design) -> Multigraph:
    """Excess of a covering or leave of a packing: mu(uw) = |r(uw) - lambda|."""
    _require_side(d)
    mult = {pair: abs(c - d.lam) for pair, c in d.pair_counts().items() if c != d.lam}
    return Multigraph(d.v, mult)


@dataclass(frozen=True)
class Bookkeeping:
    side: str  # "cover" or "pack"
    b: int
    r: int
    d: int
    a: int
    parts: dict[int, frozenset[int]]


def bookkeeping(des: Design) -> Bookkeeping:
    cls = _require_side(des)
    p = make_params(des.v, des.k, des.lam)
    g = excess_or_leave(des)
    if cls.is_covering:
        side, r, d, sign = "cover", p.r_cov, p.d_cov, 1
        a = des.b * des.k - r * des.v
    else:
        side, r, d, sign = "pack", p.r_pack, p.d_pack, -1
        a = r * des.v - des.b * des.k
    deg = g.degrees()
    rep = des.replication()
    parts: dict[int, set[int]] = {}
    for u in range(1, des.v + 1):
        i, rem = divmod(deg[u] - d, des.k - 1)
        if rem or i < 0:
            raise BookkeepingError(f"degree {deg[u]} of point {u} is not d + i(k-1)")
        if rep[u] != r + sign * i:
            raise BookkeepingError(f"point {u} in V_{i} has replication {rep[u]}")
        parts.setdefault(i, set()).add(u)
    if sum(deg.values()) != d * des.v + a * (des.k - 1):
        raise BookkeepingError("degree sum differs from dv + a(k-1)")
    if des.v - len(parts.get(0, ())) > a:
        raise BookkeepingError("more than a points outside V_0")
    return Bookkeeping(side, des.b, r, d, a, {i: frozenset(s) for i, s in sorted(parts.items())})


def gram(d: Design) -> RationalMatrix:
    """M*(D) built as X X^T and as R +/- A(G) + lambda J; the two must agree."""
    cls = _require_side(d)
    x = d.incidence()
    direct = [[Fraction(sum(a * b for a, b in zip(ru, rw))) for rw in x] for ru in x]
    rep = d.replication()
    adj = excess_or_leave(d).adjacency()
    sign = 1 if cls.is_covering else -1
    built = [
        [
            Fraction((rep[u + 1] - d.lam if u == w else sign * adj[u][w]) + d.lam)
            for w in range(d.v)
        ]
        for u in range(d.v)
    ]
    if direct != built:
        raise GramMismatchError("X X^T differs from R +/- A(G) + lambda J")
    return direct


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in m:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    return rows


def rank_exact(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination; pivot is the first nonzero in the column."""
    a = _integer_rows(m)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        piv = a[rank][col]
        for i in range(rank + 1, nrows):
            f = a[i][col]
            a[i] = [(piv * a[i][j] - f * a[rank][j]) // prev for j in range(ncols)]
        prev = piv
        rank += 1
        if rank == nrows:
            break
    return rank


def leading_minors(m: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors, computed with exact Bareiss steps."""
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    scales = []
    a = []
    for row in rows:
        s = lcm(*(x.denominator for x in row)) if row else 1
        scales.append(s)
        a.append([int(x * s) for x in row])
    minors = []
    prev = 1
    scale = Fraction(1)
    for t in range(n):
        scale /= scales[t]
        piv = a[t][t]
        minors.append(piv * scale)
        if piv == 0:
            # remaining minors need a fresh computation each
            for u in range(t + 1, n):
                minors.append(_det([r[: u + 1] for r in rows[: u + 1]]))
            return minors
        for i in range(t + 1, n):
            f = a[i][t]
            a[i] = [(piv * a[i][j] - f * a[t][j]) // prev for j in range(n)]
        prev = piv
    return minors


def _det(m: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def sylvester_pd(m: Sequence[Sequence]) -> bool:
    """Positive definiteness of a symmetric matrix via Sylvester's criterion."""
    return all(x > 0 for x in leading_minors(m))


def dominance_pd(m: Sequence[Sequence], c: Sequence) -> bool:
    """Weighted diagonal dominance: sum_{w != u} c_w |m_uw| < c_u m_uu for every row."""
    n = len(m)
    if len(c) != n or any(len(row) != n for row in m):
        raise ValueError("dimension mismatch")
    c = [Fraction(x) for x in c]
    if any(x <= 0 for x in c):
        raise ValueError("weights must be positive")
    for u in range(n):
        off = sum(c[w] * abs(Fraction(m[u][w])) for w in range(n) if w != u)
        if not off < c[u] * Fraction(m[u][u]):
            return False
    return True


def bose_lower(d: Design) -> int:
    return rank_exact(gram(d))


def certificate_premise(d: Design, s: Iterable[int], c: Mapping[int, Fraction] | None = None) -> bool:
    """Whether (S, c) satisfies the row-dominance premise on the excess or leave."""
    _require_side(d)
    s = sorted(set(s))
    if c is None:
        c = {u: Fraction(1) for u in s}
    if any(c[u] <= 0 for u in s):
        raise ValueError("weights must be positive")
    g = excess_or_leave(d)
    rep = d.replication()
    for u in s:
        lhs = sum(Fraction(c[w]) * g.mu(u, w) for w in s if w != u)
        if not lhs < Fraction(c[u]) * (rep[u] - d.lam):
            return False
    return True


def certificate_check(d: Design, s: Iterable[int], c: Mapping[int, Fraction] | None = None) -> bool:
    """Check the premise for (S, c); when it holds, D must have at least |S| blocks."""
    s = set(s)
    if not s:
        return True
    ok = certificate_premise(d, s, c)
    if ok and d.b < len(s):
        raise SoundnessViolation(f"certificate gives |S|={len(s)} but design has {d.b} blocks")
    return ok


# text format

def format_design(d: Design) -> str:
    lines = [f"{d.v} {d.k} {d.lam}"]
    lines.extend(" ".join(map(str, block)) for block in d.blocks)
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> Design:
    header = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise DesignFormatError(lineno, f"non-integer token in {line!r}") from None
        if header is None:
            if len(nums) != 3:
                raise DesignFormatError(lineno, "header must be 'v k lambda'")
            header = nums
            v, k, lam = header
            if v < 1 or k < 1 or lam < 1:
                raise DesignFormatError(lineno, "v, k and lambda must be positive")
            continue
        if len(nums) != header[1] or len(set(nums)) != len(nums):
            raise DesignFormatError(lineno, f"block must have {header[1]} distinct points")
        if min(nums) < 1 or max(nums) > header[0]:
            raise DesignFormatError(lineno, f"point outside 1..{header[0]}")
        blocks.append(tuple(nums))
    if header is None:
        raise DesignFormatError(0, "missing 'v k lambda' header")
    v, k, lam = header
    return Design(v, k, lam, tuple(blocks))


def read_design(path) -> Design:
    with open(path) as fh:
        return parse_design(fh.read())


def write_design(d: Design, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_design(d))
