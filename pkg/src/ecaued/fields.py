"""Finite fields GF(q) for prime powers q <= 256, as full lookup tables.

Elements are the integers ``0..q-1``.  For ``q = p**d`` with ``d > 1`` the
integer ``e`` stands for the polynomial whose coefficient of ``x**i`` is the
``i``-th base-``p`` digit of ``e``; so in GF(4), ``2`` is ``x`` and ``3`` is
``x + 1``.  Field elements therefore double as code symbols.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .core import MAX_Q, ParameterError, VerificationError


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, d)`` with ``q == p**d`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    return (p, d) if r == 1 else None


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of ``num`` by monic ``den`` over GF(p); lists are low-to-high."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [c % p for c in num[:dd]]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division of a monic polynomial (low-to-high) by every monic of degree <= d/2."""
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for low in product(range(p), repeat=k):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, d: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``d`` (high coefficients first)."""
    for high in product(range(p), repeat=d):
        poly = list(reversed(high)) + [1]
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {d} over GF({p})")


def _require(ok, message: str) -> None:
    if not ok:
        raise VerificationError(message)


class FieldTable:
    """Addition and multiplication tables of GF(q), verified on construction."""

    def __init__(self, q: int, p: int, d: int, modulus: list[int] | None):
        self.q, self.p, self.d = q, p, d
        self.modulus = modulus
        if d > 1:
            _require(len(modulus) == d + 1 and modulus[-1] == 1, "modulus must be monic of degree d")
            _require(is_irreducible(modulus, p), f"modulus {modulus} is reducible over GF({p})")
        digits = np.array([[(e // p**i) % p for i in range(d)] for e in range(q)], dtype=np.int64)
        weights = p ** np.arange(d, dtype=np.int64)

        add = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (add @ weights).astype(np.int64)

        if d == 1:
            e = np.arange(q, dtype=np.int64)
            self.mul_table = (e[:, None] * e[None, :]) % p
        else:
            # x**k mod modulus for k < 2d-1, as digit rows
            powers = np.zeros((2 * d - 1, d), dtype=np.int64)
            for k in range(2 * d - 1):
                mono = [0] * k + [1]
                powers[k] = _poly_mod(mono, modulus, p) if k >= d else mono + [0] * (d - 1 - k)
            conv = np.zeros((q, q, 2 * d - 1), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
            reduced = (conv % p) @ powers % p
            self.mul_table = reduced @ weights

        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        zero_col = self.add_table == 0
        self.neg_table = np.argmax(zero_col, axis=1)
        one_col = self.mul_table == 1
        self.inv_table = np.where(one_col.any(axis=1), np.argmax(one_col, axis=1), -1)
        self.verify()

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def elements(self) -> range:
        return range(self.q)

    def verify(self) -> None:
        """Exhaustive check of the field axioms; raises ``VerificationError`` on failure."""
        q = self.q
        # uint8 keeps the q**3 index arrays small
        A = self.add_table.astype(np.uint8)
        M = self.mul_table.astype(np.uint8)
        e = np.arange(q, dtype=np.uint8)
        for name, T in (("addition", A), ("multiplication", M)):
            _require(T.min() >= 0 and T.max() < q, f"{name} not closed")
            _require(np.array_equal(T, T.T), f"{name} not commutative")
            lhs = T[T[:, :, None], e[None, None, :]]
            rhs = T[e[:, None, None], T[None, :, :]]
            _require(np.array_equal(lhs, rhs), f"{name} not associative")
        _require(np.array_equal(A[0], e), "0 is not the additive identity")
        _require(np.array_equal(M[1], e), "1 is not the multiplicative identity")
        _require(np.all(A[e, self.neg_table] == 0), "missing additive inverse")
        _require(np.all(self.inv_table[1:] >= 0), "nonzero element without inverse")
        dist_l = M[e[:, None, None], A[None, :, :]]
        dist_r = A[M[:, :, None], M[:, None, :]]
        _require(np.array_equal(dist_l, dist_r), "multiplication does not distribute")

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q})"


@lru_cache(maxsize=None)
def field_make(q: int) -> FieldTable:
    if not 2 <= q <= MAX_Q:
        raise ParameterError(f"field order must be in [2, {MAX_Q}], got {q}")
    pd = prime_power(q)
    if pd is None:
        raise ParameterError(f"{q} is not a prime power")
    p, d = pd
    modulus = smallest_irreducible(p, d) if d > 1 else None
    return FieldTable(q, p, d, modulus)
