"""Channel simulator for codes that correct ``t`` symmetric errors and detect unidirectional ones.

The decoder is bounded-distance Hamming decoding with radius ``t``.  Every
pair of code words is at Hamming distance at least ``2t + 2``, so at most
one word lies within radius ``t`` of any received vector.  A unidirectional
error pattern never lands within radius ``t`` of a different word, so it is
either corrected (when it has at most ``t`` errors) or detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, islice, product
from typing import Iterable, Mapping

import numpy as np

from .core import Code, ParameterError, VerificationError, Word, WordLike, is_t_ec_aued

SYMMETRIC = "symmetric"
INCREASING = "increasing"
DECREASING = "decreasing"
UNIDIRECTIONAL = "unidirectional"

CORRECTED = "corrected"
DETECTED = "detected"
MISCORRECTED = "miscorrected"


@dataclass(frozen=True)
class ErrorPattern:
    """Per-position additive deltas applied to a word."""

    kind: str
    deltas: Mapping[int, int]

    def __post_init__(self):
        if self.kind not in (SYMMETRIC, INCREASING, DECREASING):
            raise ParameterError(f"unknown error kind {self.kind!r}")
        for pos, d in self.deltas.items():
            if d == 0:
                raise ParameterError(f"zero delta at position {pos}")
            if self.kind == INCREASING and d < 0:
                raise ParameterError("increasing patterns need positive deltas")
            if self.kind == DECREASING and d > 0:
                raise ParameterError("decreasing patterns need negative deltas")

    @property
    def weight(self) -> int:
        return len(self.deltas)


@dataclass(frozen=True)
class DecodeOutcome:
    status: str
    word: tuple[int, ...] | None = None
    index: int | None = None


def inject(word: WordLike, pattern: ErrorPattern, q: int | None = None) -> Word:
    """Apply ``pattern`` to ``word``; rejects patterns that leave the alphabet."""
    if isinstance(word, Word):
        q = word.q if q is None else q
    if q is None:
        raise ParameterError("alphabet size unknown; pass a Word or q")
    out = list(int(s) for s in word)
    for pos, d in pattern.deltas.items():
        if not 0 <= pos < len(out):
            raise ParameterError(f"position {pos} outside word of length {len(out)}")
        new = out[pos] + d
        if not 0 <= new < q:
            raise ParameterError(f"delta {d:+d} at position {pos} leaves the alphabet 0..{q - 1}")
        out[pos] = new
    return Word(tuple(out), q)


def decode(codebook: Code, t: int, received: WordLike) -> DecodeOutcome:
    """Return the unique code word within Hamming distance ``t``, else report detection."""
    r = np.asarray(tuple(received), dtype=np.int64)
    if r.shape != (codebook.n,):
        raise ParameterError(f"received word has length {r.size}, code length is {codebook.n}")
    dist = np.count_nonzero(codebook.array != r[None, :], axis=1)
    hits = np.flatnonzero(dist <= t)
    if len(hits) == 0:
        return DecodeOutcome(DETECTED)
    i = int(hits[0])
    return DecodeOutcome(CORRECTED, tuple(int(s) for s in codebook.array[i]), i)


def decode_batch(codebook: Code, t: int, received: np.ndarray) -> np.ndarray:
    """Vectorised :func:`decode`: index of the decoded word per row, ``-1`` for detection."""
    received = np.asarray(received)
    out = np.full(len(received), -1, dtype=np.int64)
    for i, w in enumerate(codebook.array):
        close = np.count_nonzero(received != w[None, :], axis=1) <= t
        out[close & (out < 0)] = i
    return out


class Decoder:
    """Bounded-distance decoder bound to one verified codebook."""

    def __init__(self, codebook: Code, t: int):
        if t < 0:
            raise ParameterError("t must be nonnegative")
        if not is_t_ec_aued(codebook, t):
            raise VerificationError(f"codebook does not correct {t} symmetric errors")
        self.codebook = codebook
        self.t = t

    def decode(self, received: WordLike) -> DecodeOutcome:
        return decode(self.codebook, self.t, received)

    def decode_batch(self, received: np.ndarray) -> np.ndarray:
        return decode_batch(self.codebook, self.t, received)


@dataclass
class TrialStats:
    trials: int = 0
    corrected: int = 0
    detected: int = 0
    miscorrected: int = 0
    skipped: int = 0
    by_kind: dict = field(default_factory=dict)

    def add(self, kind: str, status: str, count: int = 1) -> None:
        self.trials += count
        setattr(self, status, getattr(self, status) + count)
        row = self.by_kind.setdefault(kind, {CORRECTED: 0, DETECTED: 0, MISCORRECTED: 0})
        row[status] += count

    def as_dict(self) -> dict:
        return {"trials": self.trials, "corrected": self.corrected, "detected": self.detected,
                "miscorrected": self.miscorrected, "skipped": self.skipped, "by_kind": self.by_kind}

    def table(self) -> str:
        lines = [f"{'kind':<12}{'corrected':>12}{'detected':>12}{'miscorrected':>14}"]
        for kind in sorted(self.by_kind):
            row = self.by_kind[kind]
            lines.append(f"{kind:<12}{row[CORRECTED]:>12}{row[DETECTED]:>12}{row[MISCORRECTED]:>14}")
        lines.append(f"{'total':<12}{self.corrected:>12}{self.detected:>12}{self.miscorrected:>14}")
        return "\n".join(lines)


def _symmetric_batch(rng, words: np.ndarray, q: int, t: int) -> np.ndarray:
    """Each row gets between 1 and ``t`` errors, each to a uniformly chosen different symbol."""
    m, n = words.shape
    out = words.copy()
    weights = rng.integers(1, t + 1, size=m)
    keys = rng.random((m, n))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    hit = ranks < weights[:, None]
    shift = rng.integers(1, q, size=(m, n))
    out[hit] = (out[hit] + shift[hit]) % q
    return out


def _unidirectional_batch(rng, words: np.ndarray, q: int, min_errors: int, max_errors: int) -> tuple[np.ndarray, np.ndarray]:
    """Direction per row, then a random set of movable positions, then random magnitudes.

    A row with no room in the drawn direction (all zeros going down, all
    ``q-1`` going up) uses the other direction.  Rows that cannot take
    ``min_errors`` errors either way are returned unchanged and flagged.
    """
    m, n = words.shape
    up = rng.random(m) < 0.5
    up_room = (words < q - 1).sum(axis=1)
    down_room = (words > 0).sum(axis=1)
    up = np.where(up, up_room > 0, down_room == 0)
    room = np.where(up[:, None], q - 1 - words, words)
    movable = room > 0
    avail = movable.sum(axis=1)
    lo = np.maximum(np.minimum(min_errors, avail), 1)
    hi = np.minimum(max_errors, avail)
    ok = (hi >= lo) & (avail >= min_errors)
    weights = np.where(ok, rng.integers(lo, np.maximum(hi, lo) + 1), 0)
    keys = np.where(movable, rng.random((m, n)), 2.0)
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    hit = ranks < weights[:, None]
    mag = rng.integers(1, np.maximum(room, 1) + 1)
    delta = np.where(hit, np.where(up[:, None], mag, -mag), 0)
    return words + delta, ok


def run_trials(
    codebook: Code,
    t: int,
    trials: int,
    seed: int,
    mix: tuple[float, float] = (1.0, 1.0),
    uni_errors: tuple[int, int] | None = None,
    batch: int = 20_000,
) -> TrialStats:
    """Random channel campaign; identical arguments give identical statistics.

    ``mix`` weights symmetric (at most ``t`` errors) against unidirectional
    patterns.  ``uni_errors`` bounds the unidirectional error count
    (default ``1..n``); words that cannot take ``uni_errors[0]`` errors in
    either direction are counted in ``skipped`` rather than as trials.
    """
    dec = Decoder(codebook, t)
    q, n = codebook.q, codebook.n
    rng = np.random.default_rng(seed)
    lo, hi = uni_errors if uni_errors is not None else (1, n)
    sym_w, uni_w = mix
    if sym_w < 0 or uni_w < 0 or sym_w + uni_w == 0:
        raise ParameterError("mix weights must be nonnegative and not both zero")
    if t == 0:
        sym_w = 0.0
    stats = TrialStats()
    words = codebook.array.astype(np.int64)
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        sent = rng.integers(0, codebook.size, size=m)
        is_sym = rng.random(m) < sym_w / (sym_w + uni_w)
        received = np.empty((m, n), dtype=np.int64)
        ns = int(is_sym.sum())
        if ns:
            received[is_sym] = _symmetric_batch(rng, words[sent[is_sym]], q, t)
        if m - ns:
            uni, ok = _unidirectional_batch(rng, words[sent[~is_sym]], q, lo, hi)
            received[~is_sym] = uni
        valid = np.ones(m, dtype=bool)
        if m - ns:
            valid[~is_sym] = ok
        stats.skipped += int(m - valid.sum())
        got = dec.decode_batch(received)
        for kind, mask in ((SYMMETRIC, is_sym & valid), (UNIDIRECTIONAL, ~is_sym & valid)):
            g, s = got[mask], sent[mask]
            if len(g):
                stats.add(kind, CORRECTED, int(np.count_nonzero(g == s)))
                stats.add(kind, DETECTED, int(np.count_nonzero(g < 0)))
                stats.add(kind, MISCORRECTED, int(np.count_nonzero((g >= 0) & (g != s))))
        done += m
    return stats


def symmetric_patterns(n: int, q: int, word: np.ndarray, max_weight: int) -> Iterable[np.ndarray]:
    """Every received vector at Hamming distance ``1..max_weight`` from ``word``, in chunks."""
    word = np.asarray(word, dtype=np.int64)
    for w in range(1, max_weight + 1):
        shifts = np.array(list(product(range(1, q), repeat=w)), dtype=np.int64)
        chunk = []
        for pos in combinations(range(n), w):
            block = np.repeat(word[None, :], len(shifts), axis=0)
            block[:, pos] = (block[:, pos] + shifts) % q
            chunk.append(block)
            if len(chunk) * len(shifts) >= 200_000:
                yield np.vstack(chunk)
                chunk = []
        if chunk:
            yield np.vstack(chunk)


def _onehot(words: np.ndarray, q: int) -> np.ndarray:
    """Pack each word as a ``uint64`` with bit ``p*q + symbol`` set for every position ``p``."""
    n = words.shape[1]
    bits = np.left_shift(np.uint64(1), (np.arange(n) * q + words).astype(np.uint64))
    return np.bitwise_or.reduce(bits, axis=1)


def _packed_symmetric(codebook: Code, t: int, index: int) -> tuple[int, int, int]:
    """Counts (corrected, detected, miscorrected) over every pattern of weight ``1..t``.

    Received vectors are built as one-hot bitmasks; the Hamming distance to
    a code word is ``n - popcount(r & c)``.
    """
    q, n = codebook.q, codebook.n
    words = codebook.array.astype(np.int64)
    masks = _onehot(words, q)
    w = words[index]
    # flip[p, s-1]: bits toggled when position p moves from w[p] to w[p] + s
    pos = np.arange(n)[:, None]
    new = (w[:, None] + np.arange(1, q)[None, :]) % q
    flip = (np.left_shift(np.uint64(1), (pos * q + w[:, None]).astype(np.uint64))
            | np.left_shift(np.uint64(1), (pos * q + new).astype(np.uint64)))
    need = n - t
    counts = [0, 0, 0]
    for weight in range(1, t + 1):
        shifts = np.array(list(product(range(q - 1), repeat=weight)), dtype=np.int64)
        step = max(1, 2_000_000 // len(shifts))
        combos = combinations(range(n), weight)
        while True:
            block = np.array(list(islice(combos, step)), dtype=np.int64).reshape(-1, weight)
            if not len(block):
                break
            r = np.full((len(block), len(shifts)), masks[index], dtype=np.uint64)
            for j in range(weight):
                r ^= flip[block[:, j][:, None], shifts[None, :, j]]
            r = r.reshape(-1)
            got = np.full(len(r), -1, dtype=np.int64)
            for k in range(len(masks) - 1, -1, -1):
                got[np.bitwise_count(r & masks[k]) >= need] = k
            counts[0] += int(np.count_nonzero(got == index))
            counts[1] += int(np.count_nonzero(got < 0))
            counts[2] += int(np.count_nonzero((got >= 0) & (got != index)))
    return counts[0], counts[1], counts[2]


def exhaustive_symmetric_check(codebook: Code, t: int, indices: Iterable[int], packed: bool | None = None) -> TrialStats:
    """Decode every pattern of at most ``t`` symmetric errors on the chosen words.

    Uses the bitmask path when ``q * n <= 64`` (and ``packed`` is not False).
    """
    dec = Decoder(codebook, t)
    if packed is None:
        packed = codebook.q * codebook.n <= 64 and hasattr(np, "bitwise_count")
    stats = TrialStats()
    for i in indices:
        w = codebook.array[i].astype(np.int64)
        stats.add(SYMMETRIC, CORRECTED if dec.decode(w).index == i else MISCORRECTED)
        if packed:
            for status, count in zip((CORRECTED, DETECTED, MISCORRECTED), _packed_symmetric(codebook, t, i)):
                stats.add(SYMMETRIC, status, count)
            continue
        for block in symmetric_patterns(codebook.n, codebook.q, w, t):
            got = dec.decode_batch(block)
            stats.add(SYMMETRIC, CORRECTED, int(np.count_nonzero(got == i)))
            stats.add(SYMMETRIC, DETECTED, int(np.count_nonzero(got < 0)))
            stats.add(SYMMETRIC, MISCORRECTED, int(np.count_nonzero((got >= 0) & (got != i))))
    return stats


def exhaustive_increasing_check(codebook: Code, t: int, index: int, max_magnitude: int,
                                max_weight: int | None = None) -> TrialStats:
    """All increasing patterns on one word with per-position magnitude ``<= max_magnitude``."""
    dec = Decoder(codebook, t)
    q, n = codebook.q, codebook.n
    w = codebook.array[index].astype(np.int64)
    room = np.minimum(q - 1 - w, max_magnitude)
    stats = TrialStats()
    choices = [range(r + 1) for r in room.tolist()]
    block = []
    for delta in product(*choices):
        d = np.array(delta)
        k = int(np.count_nonzero(d))
        if k == 0 or (max_weight is not None and k > max_weight):
            continue
        block.append(w + d)
        if len(block) == 50_000:
            _tally_one(stats, dec.decode_batch(np.array(block)), index)
            block = []
    if block:
        _tally_one(stats, dec.decode_batch(np.array(block)), index)
    return stats


def _tally_one(stats: TrialStats, got: np.ndarray, index: int) -> None:
    stats.add(INCREASING, CORRECTED, int(np.count_nonzero(got == index)))
    stats.add(INCREASING, DETECTED, int(np.count_nonzero(got < 0)))
    stats.add(INCREASING, MISCORRECTED, int(np.count_nonzero((got >= 0) & (got != index))))
