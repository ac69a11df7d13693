"""Lower bounds on the length of codes with a given size and asymmetric distance.

All arithmetic is exact integer arithmetic; ceilings are taken with
``-(-num // den)`` so no rounding ever goes through floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import ParameterError

TRIVIAL = "trivial_q_ge_a"
GBT = "gbt"


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


@dataclass(frozen=True)
class BoundReport:
    q: int
    a: int
    T: int
    alpha: int
    gbt_value: int
    raw_numerator: int
    raw_denominator: int
    regime: str

    @property
    def value(self) -> int:
        return self.gbt_value

    def line(self) -> str:
        return f"GBT_{self.q}({self.a},{self.T}) = {self.gbt_value} [{self.raw_numerator}/{self.raw_denominator}]"

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "a": self.a,
            "T": self.T,
            "alpha": self.alpha,
            "value": self.gbt_value,
            "numerator": self.raw_numerator,
            "denominator": self.raw_denominator,
            "regime": self.regime,
        }


def _check(q: int, a: int, T: int) -> None:
    if q < 2:
        raise ParameterError(f"q must be >= 2, got {q}")
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")


def gbt(q: int, a: int, T: int) -> BoundReport:
    """Generalized Böinck-van Tilborg lower bound on the length ``n_q(a, T)``.

    With ``alpha = a // q`` the bound is the ceiling of
    ``2 a (a-1) T / (a (a - alpha) - (a - alpha q)(alpha + 1))``.  When the
    alphabet is at least as large as the code, the exact answer ``2T`` is
    reported instead (the trivial regime).
    """
    _check(q, a, T)
    alpha = a // q
    if a <= q:
        return BoundReport(q, a, T, alpha, 2 * T, 2 * T, 1, TRIVIAL)
    num = 2 * a * (a - 1) * T
    den = a * (a - alpha) - (a - alpha * q) * (alpha + 1)
    assert den > 0, f"GBT denominator {den} <= 0 for q={q}, a={a}"
    return BoundReport(q, a, T, alpha, _ceil_div(num, den), num, den, GBT)


def gbt_value(q: int, a: int, T: int) -> int:
    return gbt(q, a, T).gbt_value


def bvt_binary(a: int, T: int) -> int:
    """Böinck-van Tilborg bound ``ceil((4 - 2 / ceil(a/2)) T)`` for binary codes."""
    if a < 2:
        raise ParameterError(f"a must be >= 2, got {a}")
    if T < 1:
        raise ParameterError(f"T must be >= 1, got {T}")
    half = _ceil_div(a, 2)
    x = (4 - Fraction(2, half)) * T
    return _ceil_div(x.numerator, x.denominator)


def gbt_plateau(q: int, a: int, T: int) -> int:
    """Smallest ``a' <= a`` with ``gbt(q, a', T) == gbt(q, a, T)``.

    Deleting words from an optimal code of size ``a`` meeting the bound gives
    optimal codes for every size in ``[gbt_plateau(q, a, T), a]``.
    """
    target = gbt_value(q, a, T)
    lo = a
    while lo > 2 and gbt_value(q, lo - 1, T) == target:
        lo -= 1
    return lo


def lengths_add_up(q: int, a: int, T1: int, T2: int) -> bool:
    """Whether juxtaposing bound-meeting codes for ``T1`` and ``T2`` meets the bound for ``T1 + T2``."""
    return gbt_value(q, a, T1) + gbt_value(q, a, T2) == gbt_value(q, a, T1 + T2)
