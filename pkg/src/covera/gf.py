"""Small finite fields GF(p^e) with table arithmetic.

Elements are the integers 0..q-1; an element is the base-p encoding of its
polynomial representative (constant term is the least significant digit).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_ORDER = 512


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q == p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    # coefficient lists, low degree first; modulus is monic of degree e
    e = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for top in range(len(out) - 1, e - 1, -1):
        c = out[top]
        if c:
            for j in range(e + 1):
                out[top - e + j] = (out[top - e + j] - c * modulus[j]) % p
    return (out + [0] * e)[:e]


def _has_root_free_factorisation(poly: list[int], p: int) -> bool:
    """True if the monic poly has no monic factor of degree 1..deg/2."""
    e = len(poly) - 1
    for deg in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if _poly_rem_is_zero(poly, divisor, p):
                return False
    return True


def _poly_rem_is_zero(num: list[int], den: list[int], p: int) -> bool:
    num = list(num)
    dd = len(den) - 1
    for top in range(len(num) - 1, dd - 1, -1):
        c = num[top]
        if c:
            for j in range(dd + 1):
                num[top - dd + j] = (num[top - dd + j] - c * den[j]) % p
    return not any(num[:dd])


def irreducible_poly(p: int, e: int) -> list[int]:
    """Least monic irreducible polynomial of degree e over GF(p).

    Polynomials are ordered by their base-p integer encoding, so the
    highest-degree coefficients decide first. Returned low degree first.
    """
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        poly = tail + [1]
        if e == 1 or (tail[0] != 0 and _has_root_free_factorisation(poly, p)):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FiniteField:
    p: int
    e: int
    modulus: tuple[int, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def elements(self) -> range:
        return range(self.q)

    def neg(self, x: int) -> int:
        return self.add[x].index(0)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul[x].index(1)

    def check_axioms(self) -> None:
        """Exhaustively check the field axioms; raises AssertionError on failure."""
        q, add, mul = self.q, self.add, self.mul
        rng = range(q)
        for x in rng:
            assert add[x][0] == x and mul[x][1] == x and mul[x][0] == 0
            assert 0 in add[x]
            if x:
                assert 1 in mul[x]
            for y in rng:
                assert add[x][y] == add[y][x] and mul[x][y] == mul[y][x]
                for z in rng:
                    assert add[add[x][y]][z] == add[x][add[y][z]]
                    assert mul[mul[x][y]][z] == mul[x][mul[y][z]]
                    assert mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]]


@lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds cap {MAX_ORDER}")
    p, e = pe
    modulus = irreducible_poly(p, e)

    def digits(x: int) -> list[int]:
        return [(x // p**i) % p for i in range(e)]

    def encode(coeffs: list[int]) -> int:
        return sum(c * p**i for i, c in enumerate(coeffs))

    polys = [digits(x) for x in range(q)]
    add = tuple(
        tuple(encode([(a + b) % p for a, b in zip(polys[x], polys[y])]) for y in range(q))
        for x in range(q)
    )
    mul = tuple(
        tuple(encode(_poly_mulmod(polys[x], polys[y], modulus, p)) for y in range(q))
        for x in range(q)
    )
    return FiniteField(p, e, tuple(modulus), add, mul)
