"""Deterministic code constructions.

Every constructor returns a :class:`~ecaued.core.Code` with 0-based symbols.
Lengths and distances are checked by the callers (``certify`` or the tests),
not here, so a wrong construction always surfaces as a failed verification.
"""

from __future__ import annotations

import logging
from itertools import product
from math import comb
from typing import Sequence

import numpy as np

from .core import Code, ParameterError
from .fields import field_make

log = logging.getLogger(__name__)


def trivial_code(q: int, a: int, T: int) -> Code:
    """``a`` words of length ``2T``: ``T`` ascending columns then ``T`` descending ones."""
    if a > q:
        raise ParameterError(f"trivial code needs a <= q, got a={a}, q={q}")
    if a < 1 or T < 1:
        raise ParameterError("a and T must be positive")
    up = np.arange(a)[:, None]
    return Code(np.hstack([np.repeat(up, T, axis=1), np.repeat(a - 1 - up, T, axis=1)]), q)


def near_factor_array(k: int) -> np.ndarray:
    """The ``(2k-1) x (2k-1)`` array with entry ``x`` when row ``i`` is ``j +- x`` mod ``2k-1``."""
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    m = 2 * k - 1
    i = np.arange(m)[:, None]
    j = np.arange(m)[None, :]
    diff = (i - j) % m
    return np.minimum(diff, m - diff)


def near_factorization_code(k: int) -> Code:
    """Code of size ``2k-1``, length ``2k-1`` over ``k`` symbols, asymmetric distance ``k-1``.

    Row ``i`` holds symbol ``x`` in column ``j`` when ``i = j +- x`` mod
    ``2k-1``, i.e. when ``i`` lies in the pair of the near one-factor missing
    ``j`` labelled ``x``.  The diagonal is 0.
    """
    return Code(near_factor_array(k), k)


def shifted_near_factorization_code(k: int) -> Code:
    """Shift :func:`near_factorization_code` by ``(k-1)/2`` mod ``k`` and add the constant word.

    The constant word comes first, as in the bundled ``k = 3`` code.
    """
    if k < 3 or k % 2 == 0:
        raise ParameterError(f"shifted_near_factorization_code needs odd k >= 3, got {k}")
    half = (k - 1) // 2
    shifted = (near_factor_array(k) + half) % k
    u = np.full((1, 2 * k - 1), half)
    return Code(np.vstack([u, shifted]), k)


def complement(c: Code) -> Code:
    return Code(c.q - 1 - c.array.astype(np.int64), c.q)


def mirror_concatenate(c: Code) -> Code:
    """``{w | (q-1-w)}``: the asymmetric distance of the result is the Hamming distance of ``c``."""
    w = c.array.astype(np.int64)
    return Code(np.hstack([w, c.q - 1 - w]), c.q)


def extended_rs_code(q: int) -> Code:
    """The ``[q+1, 2, q]`` extended Reed-Solomon code over GF(q).

    The word for ``(a, b)`` evaluates ``f(x) = a x + b`` at every field
    element in encoding order and appends ``a``.  Words are listed with ``a``
    as the outer loop.
    """
    F = field_make(q)
    xs = np.arange(q)
    rows = []
    for a in range(q):
        ax = F.mul_table[a, xs]
        for b in range(q):
            rows.append(np.append(F.add_table[ax, b], a))
    return Code(rows, q)


def mds_mirror_code(q: int) -> Code:
    """Size ``q**2``, length ``2q + 2``, asymmetric distance ``q`` for a prime power ``q``."""
    return mirror_concatenate(extended_rs_code(q))


def juxtapose(c1: Code, c2: Code, pairing: Sequence[int] | None = None) -> Code:
    """Row-wise concatenation; row ``i`` of ``c1`` is joined to row ``pairing[i]`` of ``c2``.

    Asymmetric distances of the two parts add, so the result has minimum
    asymmetric distance at least the sum of the parts' minima.
    """
    if c1.size != c2.size:
        raise ParameterError(f"codes have different sizes {c1.size} and {c2.size}")
    if c1.q != c2.q:
        raise ParameterError(f"codes have different alphabets {c1.q} and {c2.q}")
    if pairing is None:
        right = c2.array
    else:
        perm = list(pairing)
        if sorted(perm) != list(range(c2.size)):
            raise ParameterError("pairing must be a permutation of the rows of c2")
        right = c2.array[perm]
    return Code(np.hstack([c1.array, right]), c1.q)


def repeat(c: Code, times: int) -> Code:
    out = c
    for _ in range(times - 1):
        out = juxtapose(out, c)
    return out


def debruijn_code(n: int, q: int) -> Code:
    """All length-``n`` words over ``q`` symbols whose symbol sum is ``ceil(n(q-1)/2)``.

    This middle layer is a largest possible set of pairwise unordered words.
    """
    if n < 1 or q < 2:
        raise ParameterError("need n >= 1 and q >= 2")
    target = -(-n * (q - 1) // 2)
    words = [w for w in product(range(q), repeat=n) if sum(w) == target]
    return Code(words, q)


def debruijn_size(n: int, q: int) -> int:
    """Coefficient of ``x**ceil(n(q-1)/2)`` in ``(1 + x + ... + x**(q-1))**n``."""
    target = -(-n * (q - 1) // 2)
    # inclusion-exclusion over symbols forced to exceed q-1
    total = 0
    for j in range(n + 1):
        rest = target - j * q
        if rest < 0:
            break
        total += (-1) ** j * comb(n, j) * comb(rest + n - 1, n - 1)
    return total


def constant_weight_from_bibd(design) -> Code:
    """Binary code whose words are the point rows of a set system's incidence matrix.

    ``design`` needs ``v`` and ``blocks`` attributes (a
    :class:`~ecaued.designs.SetSystem` works).  Word ``p`` has a 1 in column
    ``j`` when point ``p`` lies in block ``j``.
    """
    v, blocks = design.v, list(design.blocks)
    inc = np.zeros((v, len(blocks)), dtype=np.int64)
    for j, b in enumerate(blocks):
        for p in b:
            inc[p, j] = 1
    weights = set(inc.sum(axis=1).tolist())
    if len(weights) != 1:
        log.warning("replication numbers are not uniform: %s", sorted(weights))
    return Code(inc, 2)
