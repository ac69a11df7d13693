"""Exact search for shortest codes and optimality certificates.

``max_code_size(q, n, T)`` is a maximum clique problem: vertices are all
``q**n`` words and two words are adjacent when their asymmetric distance is
at least ``T``.  The solver is a colour-bounded branch and bound over Python
integer bitsets.

Symmetry: permuting coordinates and complementing every symbol preserve
asymmetric distance.  Each word has a canonical representative in its orbit
(the smaller of its sorted form and its complement's sorted form).  The
search enumerates the canonical words ``r`` in increasing order and looks for
the largest clique containing ``r`` whose members all have representatives
no smaller than ``r``.  Any clique can be mapped onto one of those, so the
maximum is unchanged.
"""

from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .bounds import gbt
from .core import Code, ParameterError, VerificationError, format_code, min_asymmetric_distance

log = logging.getLogger(__name__)

DEFAULT_CAP = 3**9
CAP_ENV = "ECAUED_SEARCH_CAP"

OPTIMAL_MEETS_GBT = "optimal_meets_gbt"
OPTIMAL_BY_EXHAUSTION = "optimal_by_exhaustion"
UPPER_BOUND_ONLY = "upper_bound_only"


class SearchCapExceeded(ParameterError):
    pass


def search_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


@dataclass
class SearchStats:
    vertices: int = 0
    roots: int = 0
    nodes: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"vertices": self.vertices, "roots": self.roots, "nodes": self.nodes,
                "seconds": round(self.seconds, 3)}


def all_words(q: int, n: int) -> np.ndarray:
    """Every word of length ``n`` over ``q`` symbols, in lexicographic order."""
    return np.array(list(product(range(q), repeat=n)), dtype=np.int16).reshape(-1, n)


def compatibility_graph(words: np.ndarray, T: int) -> list[int]:
    """Adjacency bitsets: bit ``j`` of entry ``i`` is set when ``d_as(w_i, w_j) >= T``."""
    V, n = words.shape
    adj = []
    step = max(1, 4_000_000 // max(1, V * n))
    for start in range(0, V, step):
        block = words[start:start + step]
        above = np.count_nonzero(block[:, None, :] > words[None, :, :], axis=2)
        below = np.count_nonzero(block[:, None, :] < words[None, :, :], axis=2)
        mask = np.minimum(above, below) >= T
        packed = np.packbits(mask, axis=1, bitorder="little")
        adj.extend(int.from_bytes(row.tobytes(), "little") for row in packed)
    return adj


def _canonical_ranks(words: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank of each word's orbit representative, and a mask of the representatives themselves.

    Ranks follow the lexicographic order of the representatives.
    """
    srt = np.sort(words, axis=1)
    comp = np.sort(q - 1 - words, axis=1)
    diff = srt != comp
    first = np.argmax(diff, axis=1)
    rows = np.arange(len(words))
    use_comp = diff.any(axis=1) & (comp[rows, first] < srt[rows, first])
    rep = np.where(use_comp[:, None], comp, srt)
    weights = q ** np.arange(words.shape[1] - 1, -1, -1, dtype=np.int64)
    _, ranks = np.unique(rep.astype(np.int64) @ weights, return_inverse=True)
    return ranks.reshape(-1), np.all(rep == words, axis=1)


def _colour_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    colours: list[int] = []
    U = P
    k = 0
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~(adj[v] | low)
            U ^= low
            order.append(v)
            colours.append(k)
    return order, colours


class _CliqueSearch:
    def __init__(self, adj: list[int], target: int | None, stats: SearchStats):
        self.adj = adj
        self.best: list[int] = []
        self.target = target
        self.stats = stats

    def done(self) -> bool:
        return self.target is not None and len(self.best) >= self.target

    def expand(self, R: list[int], P: int) -> None:
        self.stats.nodes += 1
        order, colours = _colour_sort(P, self.adj)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colours[idx] <= len(self.best) or self.done():
                return
            v = order[idx]
            R.append(v)
            newP = P & self.adj[v]
            if newP:
                self.expand(R, newP)
            elif len(R) > len(self.best):
                self.best = list(R)
            R.pop()
            P &= ~(1 << v)


def max_clique(adj: list[int], roots=None, allowed=None, target: int | None = None,
               stats: SearchStats | None = None) -> list[int]:
    """Maximum clique of the bitset graph ``adj``.

    With ``roots`` (vertex list) and ``allowed`` (one bitset per root), the
    search is restricted to cliques containing ``roots[i]`` inside
    ``allowed[i]``, for each ``i`` in turn.  ``target`` stops the search as
    soon as a clique of that size is found.
    """
    stats = stats if stats is not None else SearchStats()
    S = _CliqueSearch(adj, target, stats)
    if roots is None:
        S.expand([], (1 << len(adj)) - 1)
    else:
        for r, ok in zip(roots, allowed):
            P = adj[r] & ok
            if 1 + P.bit_count() <= len(S.best) or S.done():
                continue
            stats.roots += 1
            if P:
                S.expand([r], P)
            elif not S.best:
                S.best = [r]
    return sorted(S.best)


def max_code_size(q: int, n: int, T: int, cap: int | None = None, symmetry: bool = True,
                  target: int | None = None, stats: SearchStats | None = None) -> tuple[int, Code]:
    """Largest ``a`` such that a length-``n`` code with asymmetric distance ``>= T`` exists.

    Returns the size and a witness.  With ``target``, stops once a code of
    that size is found (the returned size is then only a lower bound if it
    equals ``target``).
    """
    if q < 2 or n < 1 or T < 1:
        raise ParameterError("need q >= 2, n >= 1, T >= 1")
    cap = search_cap() if cap is None else cap
    if q**n > cap:
        raise SearchCapExceeded(f"search space {q}^{n} = {q**n} exceeds the cap {cap} (set {CAP_ENV})")
    stats = stats if stats is not None else SearchStats()
    t0 = time.perf_counter()
    words = all_words(q, n)
    stats.vertices = len(words)
    adj = compatibility_graph(words, T)
    if symmetry:
        ranks, canonical = _canonical_ranks(words, q)
        top = int(ranks.max())
        roots = [0] * (top + 1)
        for i in np.flatnonzero(canonical).tolist():
            roots[ranks[i]] = i
        # allowed[r]: vertices whose representative rank is at least r
        allowed = [0] * (top + 1)
        by_rank = [0] * (top + 1)
        for i, r in enumerate(ranks.tolist()):
            by_rank[r] |= 1 << i
        acc = 0
        for r in range(top, -1, -1):
            acc |= by_rank[r]
            allowed[r] = acc
        clique = max_clique(adj, roots, allowed, target=target, stats=stats)
    else:
        clique = max_clique(adj, target=target, stats=stats)
    stats.seconds = time.perf_counter() - t0
    log.debug("max_code_size(%d, %d, %d) = %d  %s", q, n, T, len(clique), stats.as_dict())
    return len(clique), Code(words[clique], q)


@dataclass
class OptimalityCertificate:
    q: int
    a: int
    T: int
    n: int | None
    verdict: str
    witness: Code | None
    lower_bound: int
    search_stats: dict = field(default_factory=dict)
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "q": self.q, "a": self.a, "T": self.T, "n": self.n, "verdict": self.verdict,
            "gbt": self.lower_bound, "stats": self.search_stats, "note": self.note,
            "witness": None if self.witness is None else self.witness.array.tolist(),
        }

    def text(self) -> str:
        lines = [
            f"q: {self.q}",
            f"a: {self.a}",
            f"T: {self.T}",
            f"n: {self.n if self.n is not None else 'unknown'}",
            f"gbt: {self.lower_bound}",
            f"verdict: {self.verdict}",
        ]
        if self.note:
            lines.append(f"note: {self.note}")
        for k, v in self.search_stats.items():
            lines.append(f"stats.{k}: {v}")
        if self.witness is not None:
            lines.append("witness:")
            lines.append(format_code(self.witness).rstrip("\n"))
        return "\n".join(lines) + "\n"


def certify(c: Code, T: int) -> OptimalityCertificate:
    """Verify ``c`` has asymmetric distance ``>= T`` and compare its length with the bound."""
    if c.size < 2:
        raise ParameterError("certification needs at least two words")
    summary = min_asymmetric_distance(c)
    if summary.min_asymmetric < T:
        i, j = summary.arg_pair
        raise VerificationError(
            f"words {i} and {j} are at asymmetric distance {summary.min_asymmetric} < {T}")
    lb = gbt(c.q, c.size, T).gbt_value
    verdict = OPTIMAL_MEETS_GBT if c.n == lb else UPPER_BOUND_ONLY
    return OptimalityCertificate(c.q, c.size, T, c.n, verdict, c, lb,
                                 {"min_asymmetric": summary.min_asymmetric})


def min_length(q: int, a: int, T: int, n_max: int | None = None, cap: int | None = None) -> OptimalityCertificate:
    """Shortest length of a ``q``-ary code of size ``a`` with asymmetric distance ``T``.

    Lengths from the bound upward are settled by exact search until the
    search cap (or ``n_max``) is hit; then the certificate falls back to the
    best known construction with verdict ``upper_bound_only``.
    """
    lb = gbt(q, a, T).gbt_value
    cap = search_cap() if cap is None else cap
    total = SearchStats()
    n = lb
    while n_max is None or n <= n_max:
        if q**n > cap:
            break
        stats = SearchStats()
        size, witness = max_code_size(q, n, T, cap=cap, target=a, stats=stats)
        total.nodes += stats.nodes
        total.roots += stats.roots
        total.seconds += stats.seconds
        total.vertices = stats.vertices
        if size >= a:
            witness = Code(witness.array[:a], q)
            certify(witness, T)
            verdict = OPTIMAL_MEETS_GBT if n == lb else OPTIMAL_BY_EXHAUSTION
            return OptimalityCertificate(q, a, T, n, verdict, witness, lb, total.as_dict())
        n += 1
    note = f"no code of length < {n} exists" if n > lb else "search budget exhausted before the bound"
    from .catalog import best_known_code  # catalog depends on this module

    fallback = best_known_code(q, a, T)
    if fallback is None:
        return OptimalityCertificate(q, a, T, None, UPPER_BOUND_ONLY, None, lb, total.as_dict(), note)
    certify(fallback, T)
    return OptimalityCertificate(q, a, T, fallback.n, UPPER_BOUND_ONLY, fallback, lb, total.as_dict(), note)


def shrink(c: Code, a_target: int, rows=None) -> Code:
    """Keep ``a_target`` words (the first ones unless ``rows`` is given)."""
    if not 1 <= a_target <= c.size:
        raise ParameterError(f"cannot shrink a code of size {c.size} to {a_target}")
    idx = list(range(a_target)) if rows is None else list(rows)
    if len(idx) != a_target or len(set(idx)) != a_target:
        raise ParameterError("rows must name a_target distinct words")
    return Code(c.array[idx], c.q)
