"""Affine planes, their blow-up coverings and the resulting exact covering numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .bounds import covering_lower_bound, make_params, schonheim
from .designs import Design, classify
from .gf import gf, prime_power


def affine_plane(q: int) -> Design:
    """AG(2, q): lines y = ax + b and x = c; point (x, y) is 1 + x*q + y."""
    field = gf(q)
    add, mul = field.add, field.mul

    def point(x: int, y: int) -> int:
        return 1 + x * q + y

    blocks = []
    for a in range(q):
        for b in range(q):
            blocks.append(tuple(point(x, add[mul[a][x]][b]) for x in range(q)))
    for c in range(q):
        blocks.append(tuple(point(c, y) for y in range(q)))
    return Design(q * q, q, 1, tuple(blocks))


def blowup(q: int, s: int) -> Design:
    """Replace each point u of AG(2, q) by s copies (u-1)*s + i, i = 1..s."""
    if s < 1:
        raise ValueError(f"s must be positive, got {s}")
    plane = affine_plane(q)
    blocks = [
        tuple((u - 1) * s + i for u in line for i in range(1, s + 1)) for line in plane.blocks
    ]
    return Design(s * q * q, s * q, 1, tuple(blocks))


def restrict_covering(d: Design, v_target: int) -> Design:
    """Drop points above v_target, patching each block with the smallest unused retained point."""
    if v_target == d.v:
        return d
    if not d.k < v_target < d.v:
        raise ValueError(f"need k < v_target < v, got k={d.k}, v_target={v_target}, v={d.v}")
    blocks = []
    for block in d.blocks:
        kept = [x for x in block if x <= v_target]
        missing = d.k - len(kept)
        present = set(kept)
        for x in range(1, v_target + 1):
            if missing == 0:
                break
            if x not in present:
                kept.append(x)
                present.add(x)
                missing -= 1
        blocks.append(tuple(kept))
    return Design(v_target, d.k, d.lam, tuple(blocks))


@dataclass(frozen=True)
class ExactRange:
    q: int
    s: int
    z: Fraction
    v_lo: int
    v_hi: int

    @property
    def k(self) -> int:
        return self.s * self.q

    @property
    def blocks(self) -> int:
        return self.q * self.q + self.q

    def values(self) -> range:
        return range(self.v_lo, self.v_hi + 1)

    def beyond_schonheim(self) -> list[int]:
        """Values in the range whose covering number is not already forced by Schonheim."""
        return [v for v in self.values() if schonheim(make_params(v, self.k, 1))[0] < self.blocks]


def exact_range(q: int, s: int) -> ExactRange:
    if prime_power(q) is None:
        raise ValueError(f"no affine plane construction for order {q}")
    if q < 2:
        raise ValueError("q must be at least 2")
    if s < 2 * q + 1:
        raise ValueError(f"need s >= 2q+1 = {2 * q + 1}, got {s}")
    if s <= 4 * q + 1:
        z = min(Fraction(q - 1), Fraction(q * (s - 2 * q - 1) + 2, q + 1))
    else:
        z = Fraction(q * q * (s - q - 2) - q + 2, 3 * q * q + 3 * q - 2)
    threshold = s * q * q - q + 1 - z
    return ExactRange(q, s, z, floor(threshold) + 1, s * q * q)


@dataclass(frozen=True)
class RangeCertificate:
    range: ExactRange
    lower: dict[int, int]
    witness_blocks: dict[int, int]

    @property
    def certified(self) -> bool:
        target = self.range.blocks
        return all(
            self.lower[v] >= target and self.witness_blocks[v] == target
            for v in self.range.values()
        )


def certify_range(q: int, s: int, with_witnesses: bool = True) -> RangeCertificate:
    """Pair the lower-bound engine with restricted blow-ups over the whole range.

    Lower bounds are made monotone in v: C(v, k) >= C(v', k) for v' <= v.
    """
    rng = exact_range(q, s)
    lower = {}
    running = 0
    for v in rng.values():
        running = max(running, covering_lower_bound(v, rng.k, 1))
        lower[v] = running
    witnesses = {}
    if with_witnesses:
        big = blowup(q, s)
        for v in rng.values():
            d = restrict_covering(big, v)
            if not classify(d).is_covering:
                raise AssertionError(f"restriction to v={v} is not a covering")
            witnesses[v] = d.b
    else:
        witnesses = {v: rng.blocks for v in rng.values()}
    return RangeCertificate(rng, lower, witnesses)
