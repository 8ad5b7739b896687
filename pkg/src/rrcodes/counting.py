"""Exact counts of bounded integer compositions.

Everything here returns Python ints. The inclusion-exclusion formulas and the
dynamic-programming oracle share no code so that one can check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from rrcodes.divisors import FamilySpec


@dataclass(frozen=True)
class BoundedEq:
    """x_1 + ... + x_n = s with lo <= x_i <= hi."""

    n: int
    s: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        if self.n < 0:
            raise ValueError("n must be non-negative")


@dataclass(frozen=True)
class CountResult:
    value: int
    formula: str

    def to_dict(self) -> dict:
        return {"value": str(self.value), "formula": self.formula}


def binom(n: int, k: int) -> int:
    """C(n, k), taken to be 0 outside 0 <= k <= n (also for n < 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def multiset_coeff(n: int, s: int) -> int:
    """Number of s-multisets drawn from n items."""
    if n < 1 or s < 0:
        raise ValueError("need n >= 1 and s >= 0")
    return binom(n + s - 1, s)


def count_U(n: int, s: int, w: int) -> int:
    """Solutions of x_1 + ... + x_n = s with 0 <= x_i <= w (Wu's formula)."""
    if n < 1 or w < 0:
        raise ValueError("need n >= 1 and w >= 0")
    if s < 0 or s > n * w:
        return 0
    t = min(n, s // (w + 1))
    total = 0
    for i in range(t + 1):
        term = binom(n, i) * binom(s - i * (w + 1) + n - 1, n - 1)
        total += -term if i % 2 else term
    assert total >= 0
    return total


def count_U_shifted(eq: BoundedEq) -> int:
    """Solutions with lo <= x_i <= hi, via the shift y_i = x_i - lo."""
    return count_U(eq.n, eq.s - eq.n * eq.lo, eq.hi - eq.lo)


def count_C_simplified(n: int, s: int, w: int) -> int:
    """The alternating sum sum_i (-1)^i C(n,i) C((nw-s+1)(n-i-1), n-1)."""
    width = n * w - s + 1
    t = ((n * w - s) * (n - 1)) // width
    total = 0
    for i in range(t + 1):
        term = binom(n, i) * binom(width * (n - i - 1), n - 1)
        total += -term if i % 2 else term
    return total


FAMILY_FORMULA = {"H": "binomial", "A": "multiset", "B": "U", "C": "U'"}


def family_range(spec: "FamilySpec") -> tuple[int, int]:
    """Per-place multiplicity bounds of a divisor family."""
    n, s, w = spec.curve.n, spec.s, spec.w
    if spec.family == "H":
        return 0, 1
    if spec.family == "A":
        return 0, s
    if spec.family == "B":
        return 0, w
    return s - w * (n - 1), w


def family_eq(spec: "FamilySpec") -> BoundedEq:
    lo, hi = family_range(spec)
    return BoundedEq(spec.curve.n, spec.s, lo, hi)


def count_family(spec: "FamilySpec") -> int:
    from rrcodes.divisors import InfeasibleFamily

    spec.check_feasible()
    n, s, w = spec.curve.n, spec.s, spec.w
    if spec.family == "H":
        value = binom(n, s)
    elif spec.family == "A":
        value = multiset_coeff(n, s)
    elif spec.family == "B":
        value = count_U(n, s, w)
    else:
        value = count_U_shifted(BoundedEq(n, s, s - w * (n - 1), w))
    if value == 0:
        raise InfeasibleFamily(f"{spec.family} family is empty for n={n}, s={s}")
    return value


def oracle_table(n: int, lo: int, hi: int, smax: int) -> list[list[int]]:
    """table[j][t] = #ways for j variables in [lo, hi] to sum to lo*j + t."""
    width = hi - lo
    table = [[1] + [0] * smax]
    for _ in range(n):
        prev = table[-1]
        row = [0] * (smax + 1)
        run = 0
        # sliding window sum over prev[t - width .. t]
        for t in range(smax + 1):
            run += prev[t]
            if t - width - 1 >= 0:
                run -= prev[t - width - 1]
            row[t] = run
        table.append(row)
    return table


def oracle_count(eq: BoundedEq) -> int:
    """Convolution of n uniform ranges; independent of inclusion-exclusion."""
    if eq.n < 1:
        raise ValueError("need n >= 1")
    shifted = eq.s - eq.n * eq.lo
    if shifted < 0 or shifted > eq.n * (eq.hi - eq.lo):
        return 0
    return oracle_table(eq.n, eq.lo, eq.hi, shifted)[eq.n][shifted]


def count_bounded(eq: BoundedEq, oracle: bool = False) -> CountResult:
    if oracle:
        return CountResult(oracle_count(eq), "dp")
    if eq.lo == 0:
        return CountResult(count_U(eq.n, eq.s, eq.hi), "U")
    return CountResult(count_U_shifted(eq), "U'")
