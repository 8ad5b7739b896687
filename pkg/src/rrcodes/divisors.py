"""Divisors on the rational places of a curve and the four divisor families.

At this layer places are just the indices ``0..n-1``; only the realization
code binds them to points of the projective line.
"""

from __future__ import annotations

import json
from collections.abc import Iterator
from dataclasses import dataclass

from rrcodes import counting

FAMILIES = ("H", "A", "B", "C")
DEFAULT_CAP = 10**6


class InfeasibleFamily(ValueError):
    pass


class CapExceeded(RuntimeError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"family has {size} divisors, more than the cap of {cap}")
        self.size = size
        self.cap = cap


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CurveDescriptor:
    q: int
    n: int
    g: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a curve needs at least one rational place")
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.q < 2:
            raise ValueError("field size must be at least 2")


@dataclass(frozen=True)
class Divisor:
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    def __len__(self):
        return len(self.mults)

    def __iter__(self):
        return iter(self.mults)

    def __getitem__(self, i):
        return self.mults[i]

    @property
    def degree(self) -> int:
        return sum(self.mults)

    def scaled(self, k: int) -> "Divisor":
        return Divisor(tuple(k * m for m in self.mults))

    def to_json(self) -> str:
        return json.dumps(list(self.mults))

    @classmethod
    def from_json(cls, text: str) -> "Divisor":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
            raise ValueError("a divisor is a JSON array of integers")
        return cls(tuple(data))


def degree(d: Divisor) -> int:
    return d.degree


def _pair(d1: Divisor, d2: Divisor):
    if len(d1) != len(d2):
        raise LengthMismatch(f"divisors on {len(d1)} and {len(d2)} places")
    return zip(d1.mults, d2.mults)


def pointwise_min(d1: Divisor, d2: Divisor) -> Divisor:
    return Divisor(tuple(min(a, b) for a, b in _pair(d1, d2)))


def pointwise_max(d1: Divisor, d2: Divisor) -> Divisor:
    return Divisor(tuple(max(a, b) for a, b in _pair(d1, d2)))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    curve: CurveDescriptor
    k: int
    s: int
    w: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.k < 1 or self.s < 1:
            raise ValueError("k and s must be positive")
        if self.family in ("B", "C"):
            if self.w is None or self.w < 1:
                raise ValueError(f"family {self.family} needs a weight bound w >= 1")
        elif self.w is not None:
            raise ValueError(f"family {self.family} takes no weight bound")

    @property
    def n(self) -> int:
        return self.curve.n

    @property
    def g(self) -> int:
        return self.curve.g

    @property
    def multiplier(self) -> int:
        """c such that every codeword sits in L(c * sum of all places)."""
        return {"H": self.k, "A": self.k * self.s}.get(self.family, self.k * (self.w or 0))

    def check_feasible(self) -> None:
        n, s, w = self.n, self.s, self.w
        if self.family == "H" and s > n:
            raise InfeasibleFamily(f"H needs s <= n, got s={s}, n={n}")
        if self.family in ("B", "C") and s > n * w:
            raise InfeasibleFamily(f"{self.family} needs s <= n*w, got s={s}, n*w={n * w}")

    def warnings(self) -> list[str]:
        out = []
        if self.k <= 2 * self.g - 2:
            out.append(f"k={self.k} <= 2g-2={2 * self.g - 2}: dimension formulas are only lower bounds")
        if self.family in ("B", "C") and self.w > self.s:
            out.append(f"w={self.w} > s={self.s}: outside the hypothesis 0 < w <= s <= n*w")
        return out

    def to_dict(self) -> dict:
        d = {"family": self.family, "q": self.curve.q, "n": self.n, "g": self.g, "k": self.k, "s": self.s}
        if self.w is not None:
            d["w"] = self.w
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        curve = CurveDescriptor(q=d["q"], n=d["n"], g=d.get("g", 0))
        return cls(d["family"], curve, d["k"], d["s"], d.get("w"))

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls.from_dict(json.loads(text))


def family_contains(spec: FamilySpec, d: Divisor) -> bool:
    if len(d) != spec.n:
        raise LengthMismatch(f"divisor has {len(d)} places, curve has {spec.n}")
    lo, hi = counting.family_range(spec)
    return d.degree == spec.s and all(lo <= m <= hi for m in d.mults)


def _compositions(n: int, s: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    prefix: list[int] = []

    def rec(i: int, remaining: int):
        left = n - i - 1
        if left < 0:
            yield tuple(prefix)
            return
        for v in range(max(lo, remaining - hi * left), min(hi, remaining - lo * left) + 1):
            prefix.append(v)
            yield from rec(i + 1, remaining - v)
            prefix.pop()

    if lo * n <= s <= hi * n:
        yield from rec(0, s)


def enumerate_family(spec: FamilySpec, cap: int = DEFAULT_CAP) -> Iterator[Divisor]:
    """Every divisor of the family once, in lexicographic order.

    Raises CapExceeded up front (with the exact size) if the family is larger
    than ``cap``.
    """
    size = counting.count_family(spec)
    if size > cap:
        raise CapExceeded(size, cap)
    lo, hi = counting.family_range(spec)
    return (Divisor(m) for m in _compositions(spec.n, spec.s, lo, hi))


def divisor_at(spec: FamilySpec, index: int, _table=None) -> Divisor:
    """The ``index``-th divisor of the family in lexicographic order."""
    eq = counting.family_eq(spec)
    n, lo, hi = eq.n, eq.lo, eq.hi
    total = eq.s - n * lo
    table = _table or counting.oracle_table(n, lo, hi, total)
    if not 0 <= index < table[n][total]:
        raise IndexError(index)
    out = []
    remaining = eq.s
    for i in range(n):
        left = n - i - 1
        for v in range(lo, hi + 1):
            rest = remaining - v - lo * left
            ways = table[left][rest] if 0 <= rest <= total else 0
            if index < ways:
                out.append(v)
                remaining -= v
                break
            index -= ways
    return Divisor(tuple(out))


def proof_pair(spec: FamilySpec) -> tuple[Divisor, Divisor] | None:
    """Two family members k(s-1)P + kQ and k(s-1)P + kR (as divisors V).

    For s = 1 this is simply two distinct places. None if the pair is not in
    the family (e.g. H with s > 2) or there are fewer than three places.
    """
    n, s = spec.n, spec.s
    if n < 3:
        return None
    if s == 1:
        d1, d2 = [0] * n, [0] * n
        d1[1], d2[2] = 1, 1
    else:
        d1, d2 = [0] * n, [0] * n
        d1[0] = d2[0] = s - 1
        d1[1] += 1
        d2[2] += 1
    pair = Divisor(tuple(d1)), Divisor(tuple(d2))
    if all(family_contains(spec, d) for d in pair):
        return pair
    return None
