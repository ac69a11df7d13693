"""Words, codes and the distance functions used throughout the package.

A word is a fixed-length vector over the alphabet ``{0, ..., q-1}``.  For two
words ``x`` and ``y``, ``count_above(x, y)`` is the number of coordinates where
``x`` is strictly larger than ``y``.  The asymmetric distance is the smaller of
the two directed counts, and a code whose minimum asymmetric distance is ``T``
corrects ``T - 1`` symmetric errors while detecting every unidirectional
error pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

MAX_Q = 256


class ParameterError(ValueError):
    """Raised when an operation receives arguments outside its domain."""


class VerificationError(Exception):
    """Raised when an object fails a structural or distance check."""


@dataclass(frozen=True)
class Word:
    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        if not 2 <= self.q <= MAX_Q:
            raise ParameterError(f"alphabet size must be in [2, {MAX_Q}], got {self.q}")
        if len(self.symbols) < 1:
            raise ParameterError("a word has length at least 1")
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise ParameterError(f"symbol {s} outside alphabet 0..{self.q - 1}")

    @classmethod
    def of(cls, symbols: Iterable[int], q: int) -> "Word":
        return cls(tuple(int(s) for s in symbols), q)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def complement(self) -> "Word":
        return Word(tuple(self.q - 1 - s for s in self.symbols), self.q)

    def __str__(self) -> str:
        return format_word(self.symbols, self.q)


WordLike = Union[Word, Sequence[int], np.ndarray]


def _pair(x: WordLike, y: WordLike) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, Word) and isinstance(y, Word) and x.q != y.q:
        raise ParameterError(f"alphabet mismatch: q={x.q} vs q={y.q}")
    a = np.asarray(tuple(x) if isinstance(x, Word) else x, dtype=np.int64)
    b = np.asarray(tuple(y) if isinstance(y, Word) else y, dtype=np.int64)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ParameterError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def count_above(x: WordLike, y: WordLike) -> int:
    """Number of positions ``i`` with ``x[i] > y[i]``."""
    a, b = _pair(x, y)
    return int(np.count_nonzero(a > b))


def asymmetric_distance(x: WordLike, y: WordLike) -> int:
    a, b = _pair(x, y)
    return int(min(np.count_nonzero(a > b), np.count_nonzero(b > a)))


def hamming_distance(x: WordLike, y: WordLike) -> int:
    a, b = _pair(x, y)
    return int(np.count_nonzero(a != b))


@dataclass(frozen=True)
class DistanceSummary:
    min_asymmetric: int
    min_hamming: int
    arg_pair: tuple[int, int]


class Code:
    """An immutable set of distinct, equal-length words over ``{0..q-1}``.

    Rows keep the order they were given in; the order matters for
    concatenation and for deletion, but never for distances.
    """

    def __init__(self, words, q: int):
        if not 2 <= q <= MAX_Q:
            raise ParameterError(f"alphabet size must be in [2, {MAX_Q}], got {q}")
        try:
            arr = np.array(words, dtype=np.int64)
        except ValueError:
            raise ParameterError("words must share one length") from None
        if arr.ndim == 1 and arr.size == 0:
            raise ParameterError("a code needs at least one word")
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise ParameterError("words must be nonempty and share one length")
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ParameterError(f"symbols must lie in 0..{q - 1}")
        if len(np.unique(arr, axis=0)) != len(arr):
            raise ParameterError("code words must be pairwise distinct")
        self._words = arr.astype(np.uint8)
        self._words.setflags(write=False)
        self.q = q

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(size, length)`` array of symbols."""
        return self._words

    @property
    def n(self) -> int:
        return self._words.shape[1]

    @property
    def size(self) -> int:
        return self._words.shape[0]

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Word]:
        for row in self._words:
            yield Word(tuple(int(s) for s in row), self.q)

    def __getitem__(self, i: int) -> Word:
        return Word(tuple(int(s) for s in self._words[i]), self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code)
            and self.q == other.q
            and self._words.shape == other._words.shape
            and bool(np.all(self._words == other._words))
        )

    def __hash__(self):
        return hash((self.q, self._words.shape, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"Code(q={self.q}, n={self.n}, size={self.size})"

    def same_words(self, other: "Code") -> bool:
        """Set equality, ignoring row order."""
        if self.q != other.q or self._words.shape != other._words.shape:
            return False
        return {tuple(r) for r in self._words.tolist()} == {tuple(r) for r in other._words.tolist()}

    def directed_counts(self) -> np.ndarray:
        """Matrix ``M`` with ``M[i, j] = count_above(word i, word j)``."""
        w = self._words.astype(np.int16)
        out = np.empty((self.size, self.size), dtype=np.int64)
        # row blocks keep the broadcast temporary small for long codes
        step = max(1, 2_000_000 // max(1, self.size * self.n))
        for start in range(0, self.size, step):
            block = w[start:start + step]
            out[start:start + step] = np.count_nonzero(block[:, None, :] > w[None, :, :], axis=2)
        return out

    @cached_property
    def distance_summary(self) -> DistanceSummary:
        if self.size < 2:
            raise ParameterError("distance summary needs at least two words")
        above = self.directed_counts()
        das = np.minimum(above, above.T)
        dh = above + above.T
        iu = np.triu_indices(self.size, k=1)
        flat = das[iu]
        # argmin returns the first minimum, which is the lexicographically smallest pair
        k = int(np.argmin(flat))
        return DistanceSummary(
            min_asymmetric=int(flat[k]),
            min_hamming=int(dh[iu].min()),
            arg_pair=(int(iu[0][k]), int(iu[1][k])),
        )


def min_asymmetric_distance(c: Code) -> DistanceSummary:
    """Exact minimum asymmetric and Hamming distances over all word pairs."""
    if c.size < 2:
        raise ParameterError("need at least two words to measure a distance")
    return c.distance_summary


def min_hamming_distance(c: Code) -> int:
    return min_asymmetric_distance(c).min_hamming


def is_t_ec_aued(c: Code, t: int) -> bool:
    """True iff ``c`` corrects ``t`` symmetric errors and detects all unidirectional ones."""
    if t < 0:
        raise ParameterError(f"t must be nonnegative, got {t}")
    if c.size < 2:
        return True
    return min_asymmetric_distance(c).min_asymmetric >= t + 1


# --- text format -----------------------------------------------------------


def format_word(symbols: Iterable[int], q: int) -> str:
    if q <= 10:
        return "".join(str(int(s)) for s in symbols)
    return " ".join(str(int(s)) for s in symbols)


def format_code(c: Code, comments: Sequence[str] = ()) -> str:
    lines = [f"# {line}" for line in comments]
    lines.append(f"{c.q} {c.n} {c.size}")
    lines.extend(format_word(row, c.q) for row in c.array.tolist())
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    """Parse the ``q n a`` header format; see :func:`format_code`."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParameterError("empty code file")
    try:
        q, n, a = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ParameterError(f"bad header line: {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != a:
        raise ParameterError(f"header declares {a} words, found {len(body)}")
    words = []
    for ln in body:
        if q <= 10 and " " not in ln:
            row = [int(ch) for ch in ln]
        else:
            row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise ParameterError(f"word {ln!r} has length {len(row)}, expected {n}")
        words.append(row)
    return Code(words, q)


def read_code(path) -> Code:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read())


def write_code(c: Code, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(c, comments))
