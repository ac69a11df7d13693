"""Set systems, resolvable packings, and the packing-to-code pipeline.

A resolvable packing with ``c`` parallel classes of ``s`` blocks each gives an
``s``-ary code of length ``c``: one column per class, and a point gets symbol
``i`` in that column when it lies in the class's ``i``-th block.  Two points
share a block in at most ``lambda`` classes, so the rows are at Hamming
distance at least ``c - lambda``; mirror concatenation turns that into
asymmetric distance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .construct import mirror_concatenate
from .core import Code, ParameterError, VerificationError, min_asymmetric_distance
from .fields import field_make

Block = tuple[int, ...]


@dataclass(frozen=True)
class SetSystem:
    v: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        if self.v < 1:
            raise ParameterError("a set system needs at least one point")
        for b in self.blocks:
            if not b:
                raise ParameterError("blocks must be nonempty")
            if len(set(b)) != len(b):
                raise ParameterError(f"block {b} repeats a point")
            if min(b) < 0 or max(b) >= self.v:
                raise ParameterError(f"block {b} has points outside 0..{self.v - 1}")

    @classmethod
    def of(cls, v: int, blocks: Iterable[Iterable[int]]) -> "SetSystem":
        return cls(v, tuple(tuple(int(p) for p in b) for b in blocks))

    def pair_counts(self) -> Counter:
        counts: Counter = Counter()
        for b in self.blocks:
            counts.update(combinations(sorted(b), 2))
        return counts

    def replication(self) -> list[int]:
        r = [0] * self.v
        for b in self.blocks:
            for p in b:
                r[p] += 1
        return r

    def complement(self) -> "SetSystem":
        pts = set(range(self.v))
        return SetSystem(self.v, tuple(tuple(sorted(pts - set(b))) for b in self.blocks))


@dataclass(frozen=True)
class ResolvablePacking:
    """Blocks grouped into parallel classes; block order inside a class is kept.

    ``classes[c]`` lists indices into ``base.blocks``.  ``lam`` is the realized
    maximum number of blocks through a pair, always recomputed.
    """

    base: SetSystem
    classes: tuple[tuple[int, ...], ...]
    lam: int = field(init=False)

    def __post_init__(self):
        counts = self.base.pair_counts()
        object.__setattr__(self, "lam", max(counts.values(), default=0))

    @classmethod
    def from_classes(cls, v: int, classes: Sequence[Sequence[Iterable[int]]]) -> "ResolvablePacking":
        blocks, index = [], []
        for cl in classes:
            row = []
            for b in cl:
                row.append(len(blocks))
                blocks.append(tuple(int(p) for p in b))
            index.append(tuple(row))
        return cls(SetSystem(v, tuple(blocks)), tuple(index))

    @property
    def v(self) -> int:
        return self.base.v

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_blocks(self, c: int) -> list[Block]:
        return [self.base.blocks[i] for i in self.classes[c]]

    def iter_classes(self):
        for c in range(len(self.classes)):
            yield self.class_blocks(c)

    @property
    def k(self) -> int | None:
        """Common block size, or ``None`` when block sizes differ."""
        sizes = {len(b) for b in self.base.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def blocks_per_class(self) -> int | None:
        sizes = {len(c) for c in self.classes}
        return sizes.pop() if len(sizes) == 1 else None


@dataclass(frozen=True)
class PackingReport:
    v: int
    num_blocks: int
    num_classes: int
    k: int | None
    lam: int
    min_pair_count: int

    @property
    def balanced(self) -> bool:
        """Every pair occurs equally often (a resolvable BIBD when ``k`` is set)."""
        return self.lam == self.min_pair_count

    def line(self) -> str:
        kind = "resolvable BIBD" if self.balanced and self.k else "resolvable packing"
        return (f"valid {kind}: v={self.v} blocks={self.num_blocks} classes={self.num_classes} "
                f"k={self.k if self.k is not None else 'mixed'} lambda={self.lam}")


def verify_packing(p: ResolvablePacking, lam: int | None = None, k: int | None = None) -> PackingReport:
    """Check resolvability, uniformity and the pair bound.

    Raises :class:`VerificationError` naming the offending class or pair.
    """
    used = sorted(i for cl in p.classes for i in cl)
    if used != list(range(len(p.base.blocks))):
        raise VerificationError("classes must partition the block list")
    points = set(range(p.v))
    for c, cl in enumerate(p.iter_classes()):
        seen: Counter = Counter(x for b in cl for x in b)
        twice = sorted(x for x, m in seen.items() if m > 1)
        if twice:
            raise VerificationError(f"class {c} covers point {twice[0]} more than once")
        missing = sorted(points - set(seen))
        if missing:
            raise VerificationError(f"class {c} misses point {missing[0]}")
    if k is not None:
        for i, b in enumerate(p.base.blocks):
            if len(b) != k:
                raise VerificationError(f"block {i} {b} has size {len(b)}, expected {k}")
    counts = p.base.pair_counts()
    if lam is not None:
        for pair, m in sorted(counts.items()):
            if m > lam:
                raise VerificationError(f"pair {pair} occurs in {m} blocks, bound is {lam}")
    all_pairs = p.v * (p.v - 1) // 2
    min_count = min(counts.values(), default=0) if len(counts) == all_pairs else 0
    return PackingReport(p.v, len(p.base.blocks), p.num_classes, p.k, p.lam, min_count)


def packing_to_code(p: ResolvablePacking, ordering: Sequence[Sequence[int]] | None = None) -> Code:
    """Column per parallel class; a point's symbol is the index of its block in that class.

    ``ordering[c]`` optionally relabels class ``c``: the block at position
    ``ordering[c][i]`` gets symbol ``i``.
    """
    s = p.blocks_per_class()
    if s is None:
        raise ParameterError("every parallel class must have the same number of blocks")
    if s < 2:
        raise ParameterError("classes need at least two blocks to give a code")
    verify_packing(p)
    out = np.zeros((p.v, p.num_classes), dtype=np.int64)
    for c, cl in enumerate(p.iter_classes()):
        order = list(range(s)) if ordering is None else list(ordering[c])
        if sorted(order) != list(range(s)):
            raise ParameterError(f"ordering for class {c} is not a permutation")
        for sym, pos in enumerate(order):
            out[list(cl[pos]), c] = sym
    return Code(out, s)


@dataclass(frozen=True)
class PackingCode:
    code: Code
    T: int
    q: int

    @property
    def a(self) -> int:
        return self.code.size

    @property
    def n(self) -> int:
        return self.code.n


def packing_code(
    p: ResolvablePacking,
    lam: int | None = None,
    alpha: int | None = None,
    s: int | None = None,
    n: int | None = None,
) -> PackingCode:
    """Mirror-concatenated packing code, with claimed distance ``classes - lambda``.

    The optional ``lam``, ``alpha`` (block size), ``s`` (group size) and ``n``
    (number of groups) are checked against the packing before building.  The
    group type is not inspected, only ``v == s * n``.
    """
    report = verify_packing(p, lam=lam)
    k = p.k
    if k is None:
        raise ParameterError("packing must be uniform")
    if alpha is not None and alpha != k:
        raise ParameterError(f"block size is {k}, not alpha={alpha}")
    if s is not None and n is not None and s * n != p.v:
        raise ParameterError(f"{p.v} points cannot be {n} groups of size {s}")
    if p.v % k:
        raise ParameterError(f"{p.v} points are not a multiple of block size {k}")
    q = p.v // k
    bound = lam if lam is not None else report.lam
    T = p.num_classes - bound
    code = mirror_concatenate(packing_to_code(p))
    got = min_asymmetric_distance(code).min_asymmetric
    if got < T:
        raise VerificationError(f"packing code has asymmetric distance {got} < claimed {T}")
    return PackingCode(code, T, q)


def delete_parallel_class(p: ResolvablePacking, index: int = -1) -> ResolvablePacking:
    if p.num_classes < 2:
        raise ParameterError("need at least two parallel classes to delete one")
    classes = [p.class_blocks(c) for c in range(p.num_classes)]
    del classes[index]
    return ResolvablePacking.from_classes(p.v, classes)


def _sorted_class(blocks: Iterable[Iterable[int]]) -> list[Block]:
    return sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])


def affine_plane(q: int) -> ResolvablePacking:
    """Lines of AG(2, q); point ``(x, y)`` is ``x * q + y``.

    Classes are the slopes ``m`` in field order, then the vertical lines.
    """
    F = field_make(q)
    classes = []
    for m in range(q):
        lines = []
        for b in range(q):
            lines.append([x * q + F.add(F.mul(m, x), b) for x in range(q)])
        classes.append(_sorted_class(lines))
    classes.append(_sorted_class([[c * q + y for y in range(q)] for c in range(q)]))
    return ResolvablePacking.from_classes(q * q, classes)


def round_robin(m: int) -> ResolvablePacking:
    """One-factorization of ``K_m`` by the circle method (``m - 1`` rounds)."""
    if m < 4 or m % 2:
        raise ParameterError(f"round robin needs an even m >= 4, got {m}")
    r = m - 1
    fixed = m - 1
    classes = []
    for j in range(r):
        pairs = [(fixed, j)] + [((j + t) % r, (j - t) % r) for t in range(1, m // 2)]
        classes.append(_sorted_class(pairs))
    return ResolvablePacking.from_classes(m, classes)


def near_one_factorization(k: int) -> list[list[tuple[int, int]]]:
    """``T_j = {{j + t, j - t} : 1 <= t <= k - 1}`` over ``Z_{2k-1}`` for each ``j``."""
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    m = 2 * k - 1
    return [[((t + j) % m, (-t + j) % m) for t in range(1, k)] for j in range(m)]


def quadratic_residue_design(p: int) -> SetSystem:
    """Translates of the nonzero squares mod a prime ``p = 3 (mod 4)``.

    This is a BIBD ``(p, (p-1)/2, (p-3)/4)``.
    """
    if p % 4 != 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ParameterError(f"need a prime p = 3 mod 4, got {p}")
    squares = sorted({x * x % p for x in range(1, p)})
    return SetSystem.of(p, [sorted((s + i) % p for s in squares) for i in range(p)])


def hadamard_design(p: int) -> SetSystem:
    """Extend the residue design by a point at infinity and add complements.

    The result is a BIBD ``(p + 1, (p + 1)/2, (p - 1)/2)``.
    """
    qr = quadratic_residue_design(p)
    inf = p
    blocks = [tuple(b) + (inf,) for b in qr.blocks]
    blocks += [tuple(sorted(set(range(p)) - set(b))) for b in qr.blocks]
    return SetSystem.of(p + 1, blocks)


@dataclass(frozen=True)
class CirculantSeed:
    m: int
    base_classes: tuple[tuple[Block, ...], ...]

    @classmethod
    def of(cls, m: int, base_classes: Sequence[Sequence[Iterable[int]]]) -> "CirculantSeed":
        return cls(m, tuple(tuple(tuple(int(x) for x in b) for b in cl) for cl in base_classes))


def develop_packing(seed: CirculantSeed) -> ResolvablePacking:
    """All shifts ``B + i`` of every base class, class by class, block order kept."""
    m = seed.m
    for c, cl in enumerate(seed.base_classes):
        pts = sorted(x for b in cl for x in b)
        if pts != list(range(m)):
            raise VerificationError(f"base class {c} does not partition Z_{m}")
    classes = []
    for cl in seed.base_classes:
        for i in range(m):
            classes.append([tuple((x + i) % m for x in b) for b in cl])
    return ResolvablePacking.from_classes(m, classes)


def develop_circulant(seed: CirculantSeed) -> Code:
    """Code whose rows are the points of the developed system.

    The columns form one circulant block per base class, in seed order.
    """
    return packing_to_code(develop_packing(seed))


# --- design text format ----------------------------------------------------


def format_design(p: ResolvablePacking, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{p.v} {len(p.base.blocks)} {p.num_classes} {p.k or 0} {p.lam}")
    for c, cl in enumerate(p.iter_classes()):
        if c:
            lines.append("%")
        lines.extend(" ".join(str(x) for x in b) for b in cl)
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> ResolvablePacking:
    """Parse and fully verify a design file.

    Header ``v b c k lambda`` (``k = 0`` for mixed block sizes), then one
    block per line, classes separated by ``%`` lines.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParameterError("empty design file")
    try:
        v, b, c, k, lam = (int(t) for t in lines[0].split())
    except ValueError:
        raise ParameterError(f"bad design header: {lines[0]!r}") from None
    classes: list[list[Block]] = [[]]
    for ln in lines[1:]:
        if ln == "%":
            classes.append([])
            continue
        try:
            classes[-1].append(tuple(int(t) for t in ln.split()))
        except ValueError:
            raise ParameterError(f"bad block line: {ln!r}") from None
    if len(classes) != c:
        raise ParameterError(f"header declares {c} classes, found {len(classes)}")
    if sum(len(cl) for cl in classes) != b:
        raise ParameterError(f"header declares {b} blocks, found {sum(len(cl) for cl in classes)}")
    p = ResolvablePacking.from_classes(v, classes)
    verify_packing(p, lam=lam, k=k or None)
    return p


def read_design(path) -> ResolvablePacking:
    with open(path, encoding="utf-8") as fh:
        return parse_design(fh.read())


def write_design(p: ResolvablePacking, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_design(p, comments))

parse_design_file = read_design
