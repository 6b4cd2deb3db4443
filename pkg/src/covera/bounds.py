"""Closed-form lower bounds on covering numbers and upper bounds on packing numbers.

Everything here is exact. Parameter-dependent quantities are integers or
:class:`~covera.surd.BoundValue` instances, and rounding happens once at the
end of each bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .surd import BoundValue


class TrivialParametersError(ValueError):
    """Raised for parameter sets outside 3 <= k < v, lambda >= 1."""


COVER_CATALOG = (
    "schonheim",
    "schonheim_plus1",
    "thm_1_1",
    "thm_5_3",
    "thm_6_2a",
    "thm_6_2b",
    "thm_6_2c",
)
PACK_CATALOG = (
    "johnson1",
    "johnson1_minus1",
    "johnson2_weak",
    "johnson2_strong",
    "thm_1_2",
    "thm_5_4a",
    "thm_5_4b",
    "thm_6_3a",
    "thm_6_3b",
    "thm_6_3c",
)
CATALOG = COVER_CATALOG + PACK_CATALOG


@dataclass(frozen=True)
class ParamSet:
    v: int
    k: int
    lam: int
    r_cov: int
    d_cov: int
    r_pack: int
    d_pack: int

    @property
    def n_cov(self) -> int:
        return self.r_cov - self.lam

    @property
    def n_pack(self) -> int:
        return self.r_pack - self.lam

    def __str__(self):
        return f"({self.v},{self.k},{self.lam})"


def make_params(v: int, k: int, lam: int = 1) -> ParamSet:
    if k < 3 or k >= v:
        raise TrivialParametersError(f"trivial parameters: need 3 <= k < v, got v={v}, k={k}")
    if lam < 1:
        raise TrivialParametersError(f"lambda must be positive, got {lam}")
    total = lam * (v - 1)
    r_pack, d_pack = divmod(total, k - 1)
    r_cov = -(-total // (k - 1))
    d_cov = r_cov * (k - 1) - total
    return ParamSet(v, k, lam, r_cov, d_cov, r_pack, d_pack)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _refinement_applies(p: ParamSet, side: str) -> bool:
    # Both refinements need (k-1) | lam(v-1) and lam*v*(v-1) = 1 (mod k), i.e.
    # v*r = -1 (mod k). For coverings the excess would then have a single
    # point of positive degree, which is impossible for any lambda. For
    # packings the leave would live on at most k-1 points with every degree
    # at least k-1: impossible in a simple graph, but a multigraph manages it
    # once lambda >= 2 (an (8,3,2)-packing with 18 blocks has a double edge
    # as its leave), so the packing refinement is kept to lambda = 1.
    if p.lam * (p.v - 1) % (p.k - 1):
        return False
    if p.lam * p.v * (p.v - 1) % p.k != 1:
        return False
    return side == "cover" or p.lam == 1


# classical bounds

def schonheim(p: ParamSet) -> tuple[int, bool]:
    """Schonheim bound and whether the +1 refinement applies."""
    return _ceil_div(p.v * p.r_cov, p.k), _refinement_applies(p, "cover")


def johnson1(p: ParamSet) -> tuple[int, bool]:
    """First Johnson bound and whether the -1 refinement applies."""
    return p.v * p.r_pack // p.k, _refinement_applies(p, "pack")


def johnson2_weak(v: int, k: int) -> Optional[int]:
    if k * k <= v:
        return None
    return v * (k - 1) // (k * k - v)


def _johnson2_feasible(b: int, v: int, k: int, form: str) -> bool:
    total = b * k if form == "bk" else b
    x, y = divmod(total, v)
    return x * (x - 1) * v + 2 * x * y <= b * (b - 1)


def johnson2_strong(v: int, k: int, form: str = "bk") -> int:
    """Largest block count allowed by the second Johnson inequality.

    ``form="bk"`` decomposes ``b*k = x*v + y`` (the pair-counting form);
    ``form="literal"`` decomposes ``b = x*v + y``. The inequality alone can
    admit more blocks than the first Johnson bound (it does at (8, 3)), and a
    packing satisfies both, so the scan starts from the smaller of that bound
    and the pair-count bound C(v,2)/C(k,2).
    """
    if form not in ("bk", "literal"):
        raise ValueError(f"unknown form {form!r}")
    cap = min(comb(v, 2) // comb(k, 2), v * ((v - 1) // (k - 1)) // k)
    for b in range(cap, -1, -1):
        if _johnson2_feasible(b, v, k, form):
            return b
    return 0


# parametric functionals

def _check_pair(alpha, beta) -> tuple[BoundValue, BoundValue]:
    alpha = BoundValue.coerce(alpha)
    beta = BoundValue.coerce(beta)
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if alpha < beta:
        raise ValueError(f"need alpha >= beta, got alpha={alpha}, beta={beta}")
    return alpha, beta


def cb_value(p: ParamSet, alpha, beta) -> BoundValue:
    alpha, beta = _check_pair(alpha, beta)
    diff = alpha - beta
    return (p.r_cov * p.v * diff + alpha * p.v) / (p.k * diff + 1)


def db_value(p: ParamSet, alpha, beta) -> BoundValue:
    alpha, beta = _check_pair(alpha, beta)
    diff = alpha - beta
    if diff <= Fraction(1, p.k):
        raise ValueError(f"need alpha > beta + 1/k, got alpha={alpha}, beta={beta}, k={p.k}")
    return (p.r_pack * p.v * diff - alpha * p.v) / (p.k * diff - 1)


# theorems for d < r - lambda: neat forms

def thm_1_1_exact(p: ParamSet) -> Optional[BoundValue]:
    if p.d_cov < p.n_cov:
        return cb_value(p, 1, 0)
    return None


def thm_1_2_exact(p: ParamSet) -> Optional[BoundValue]:
    if p.d_pack < p.n_pack:
        return db_value(p, 1, 0)
    return None


def thm_1_1(p: ParamSet) -> Optional[int]:
    if p.d_cov < p.n_cov:
        return _ceil_div(p.v * (p.r_cov + 1), p.k + 1)
    return None


def thm_1_2(p: ParamSet) -> Optional[int]:
    if p.d_pack < p.n_pack:
        return p.v * (p.r_pack - 1) // (p.k - 1)
    return None


# theorems for d >= r - lambda

def thm_5_3_exact(p: ParamSet) -> Optional[BoundValue]:
    n, d, k = p.n_cov, p.d_cov, p.k
    if p.r_cov >= k or d < n:
        return None
    return cb_value(p, Fraction(n + 1, 2 * d + 2), Fraction(n + 1, 2 * (d + k)))


def thm_5_3(p: ParamSet) -> Optional[int]:
    value = thm_5_3_exact(p)
    return None if value is None else value.ceil()


def thm_5_4_exact(p: ParamSet) -> Optional[dict[str, BoundValue]]:
    n, d, k = p.n_pack, p.d_pack, p.k
    if p.r_pack >= k or d < n:
        return None
    parts = {}
    # part (a) runs m-MAX with m = n, which needs n >= 1
    if n >= 1 and k * (n + 1) > 2 * d + 2:
        parts["a"] = db_value(p, Fraction(n + 1, 2 * d + 2), 0)
    if n * k * (k - 1) > 2 * (d + 1) * (d + k):
        parts["b"] = db_value(p, Fraction(n, 2 * d + 2), Fraction(n, 2 * (d + k)))
    return parts


def thm_5_4(p: ParamSet) -> Optional[dict[str, int]]:
    parts = thm_5_4_exact(p)
    if parts is None:
        return None
    return {name: value.floor() for name, value in parts.items()}


# theorems for d < r - lambda with r < k

def _tricky_parts(p: ParamSet, n: int, d: int, m: int, functional) -> dict[str, BoundValue]:
    k = p.k
    parts = {}
    alpha_a = Fraction(1) if d == 0 else 1 - Fraction(d * d, 2 * m * n)
    parts["a"] = functional(p, alpha_a, Fraction(m + 1, 2 * (d + k)))
    if 2 * d >= n and d * (d + k - 1) < m * n:
        parts["b"] = functional(p, 1, 1 - Fraction(d * (d + k - 1), m * n))
    if d > 0 and 2 * d < n and 4 * m * (m + 1) * (n - d) > d * (d + k) ** 2:
        beta = BoundValue.sqrt(Fraction(d * (m + 1), m * (n - d))) - Fraction(
            d * (d + k), 2 * m * (n - d)
        )
        parts["c"] = functional(p, 1, beta)
    return parts


def thm_6_2_exact(p: ParamSet) -> Optional[dict[str, BoundValue]]:
    n, d = p.n_cov, p.d_cov
    if p.r_cov >= p.k or d >= n:
        return None
    return _tricky_parts(p, n, d, n + 1, cb_value)


def thm_6_3_exact(p: ParamSet) -> Optional[dict[str, BoundValue]]:
    n, d = p.n_pack, p.d_pack
    if p.r_pack >= p.k or d >= n:
        return None
    return _tricky_parts(p, n, d, n - 1, db_value)


def thm_6_2(p: ParamSet) -> Optional[dict[str, int]]:
    parts = thm_6_2_exact(p)
    if parts is None:
        return None
    return {name: value.ceil() for name, value in parts.items()}


def thm_6_3(p: ParamSet) -> Optional[dict[str, int]]:
    parts = thm_6_3_exact(p)
    if parts is None:
        return None
    return {name: value.floor() for name, value in parts.items()}


# aggregation

@dataclass(frozen=True)
class BoundEntry:
    name: str
    applicable: bool
    value: Optional[BoundValue] = None
    rounded: Optional[int] = None


@dataclass(frozen=True)
class BoundReport:
    params: ParamSet
    side: str
    entries: tuple[BoundEntry, ...]
    best: int
    best_source: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def _cover_entries(p: ParamSet) -> list[BoundEntry]:
    plain, plus1 = schonheim(p)
    entries = [
        BoundEntry("schonheim", True, BoundValue(Fraction(p.v * p.r_cov, p.k)), plain),
        BoundEntry("schonheim_plus1", plus1, None, plain + 1 if plus1 else None),
    ]
    value = thm_1_1_exact(p)
    entries.append(_entry("thm_1_1", value, "cover"))
    entries.append(_entry("thm_5_3", thm_5_3_exact(p), "cover"))
    parts = thm_6_2_exact(p) or {}
    for part in "abc":
        entries.append(_entry(f"thm_6_2{part}", parts.get(part), "cover"))
    return entries


def _pack_entries(p: ParamSet) -> list[BoundEntry]:
    plain, minus1 = johnson1(p)
    entries = [
        BoundEntry("johnson1", True, BoundValue(Fraction(p.v * p.r_pack, p.k)), plain),
        BoundEntry("johnson1_minus1", minus1, None, plain - 1 if minus1 else None),
    ]
    if p.lam == 1:
        weak = johnson2_weak(p.v, p.k)
        entries.append(
            BoundEntry(
                "johnson2_weak",
                weak is not None,
                None if weak is None else BoundValue(Fraction(p.v * (p.k - 1), p.k * p.k - p.v)),
                weak,
            )
        )
        strong = johnson2_strong(p.v, p.k)
        entries.append(BoundEntry("johnson2_strong", True, BoundValue(strong), strong))
    else:
        entries.append(BoundEntry("johnson2_weak", False))
        entries.append(BoundEntry("johnson2_strong", False))
    entries.append(_entry("thm_1_2", thm_1_2_exact(p), "pack"))
    parts = thm_5_4_exact(p) or {}
    for part in "ab":
        entries.append(_entry(f"thm_5_4{part}", parts.get(part), "pack"))
    parts = thm_6_3_exact(p) or {}
    for part in "abc":
        entries.append(_entry(f"thm_6_3{part}", parts.get(part), "pack"))
    return entries


def _entry(name: str, value: Optional[BoundValue], side: str) -> BoundEntry:
    if value is None:
        return BoundEntry(name, False)
    rounded = value.ceil() if side == "cover" else value.floor()
    return BoundEntry(name, True, value, rounded)


def best_bounds(p: ParamSet, side: str = "cover") -> BoundReport:
    """Evaluate every catalog bound for one side and pick the strongest.

    Ties go to the entry listed first in the catalog.
    """
    if side == "cover":
        entries = _cover_entries(p)
        pick = max
    elif side == "pack":
        entries = _pack_entries(p)
        pick = min
    else:
        raise ValueError(f"side must be 'cover' or 'pack', got {side!r}")
    applicable = [e for e in entries if e.applicable]
    best = pick(e.rounded for e in applicable)
    source = next(e.name for e in applicable if e.rounded == best)
    notes = []
    if side == "pack" and p.lam == 1:
        literal = johnson2_strong(p.v, p.k, form="literal")
        strong = johnson2_strong(p.v, p.k)
        if literal != strong:
            notes.append(
                f"johnson2_strong: literal decomposition D=xv+y gives {literal}, b*k form gives {strong}"
            )
    return BoundReport(p, side, tuple(entries), best, source, tuple(notes))


def covering_lower_bound(v: int, k: int, lam: int = 1) -> int:
    return best_bounds(make_params(v, k, lam), "cover").best


def packing_upper_bound(v: int, k: int, lam: int = 1) -> int:
    return best_bounds(make_params(v, k, lam), "pack").best
