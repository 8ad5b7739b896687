"""Closed-form parameters of the four code families, and the rate tables."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import NamedTuple

from rrcodes import counting
from rrcodes.divisors import CurveDescriptor, FamilySpec

TABLE3_PRESET = {"q": 16, "k": 5, "w": 3, "g": 1, "n": range(8, 15)}


class RRDim(NamedTuple):
    """dim L(D) for a divisor of given degree; ``exact`` False means lower bound."""

    value: int
    exact: bool


def riemann_roch_dim(deg: int, g: int) -> RRDim:
    if deg < 0:
        return RRDim(0, True)
    if deg == 0:
        return RRDim(1, True)
    if deg > 2 * g - 2:
        return RRDim(deg + 1 - g, True)
    return RRDim(max(deg + 1 - g, 0), False)


def log_q(x: int, q: int) -> float:
    """log_q of a positive integer from its top 64 bits and bit length."""
    if x <= 0:
        raise ValueError("log of a non-positive count")
    shift = max(x.bit_length() - 64, 0)
    return (math.log(x >> shift) + shift * math.log(2)) / math.log(q)


def ambient_dim(spec: FamilySpec) -> int:
    return spec.n * spec.multiplier + 1 - spec.g


@dataclass
class CodeParameters:
    spec: FamilySpec
    ambient_dim: int
    codeword_dim: int
    count: int
    log_size: float
    min_distance_stated: int
    min_distance_proof: int
    normalized_weight: float
    rate: float
    normalized_min_distance: float
    delta_lower_bound: float | None
    validity_warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spec"] = self.spec.to_dict()
        d["count"] = str(self.count)
        d["count_formula"] = counting.FAMILY_FORMULA[self.spec.family]
        return d


def stated_min_distance(spec: FamilySpec) -> int:
    """Minimum distance as literally stated for the family (s = 1 vs s > 1 branch)."""
    k, s, g = spec.k, spec.s, spec.g
    if spec.family in ("H", "A"):
        return 2 * k if s == 1 else 2 * (k + 1 - g)
    return 2 * k


def proof_min_distance(spec: FamilySpec) -> tuple[int, bool]:
    """Distance of the unit-move pair k(s-1)P + kQ, k(s-1)P + kR.

    Both codewords have dimension ks+1-g and meet in L(k(s-1)P); returns the
    distance and whether the intersection dimension is exact.
    """
    ell = spec.k * spec.s + 1 - spec.g
    inter = riemann_roch_dim(spec.k * (spec.s - 1), spec.g)
    return 2 * (ell - inter.value), inter.exact


def code_parameters(spec: FamilySpec) -> CodeParameters:
    spec.check_feasible()
    k, s, g, n, q = spec.k, spec.s, spec.g, spec.n, spec.curve.q
    N = ambient_dim(spec)
    ell = k * s + 1 - g
    count = counting.count_family(spec)
    size = log_q(count, q)
    d_stated = stated_min_distance(spec)
    d_proof, proof_exact = proof_min_distance(spec)

    warnings = spec.warnings()
    if n * spec.multiplier <= 2 * g - 2:
        warnings.append("ambient divisor degree <= 2g-2: ambient dimension is only a lower bound")
    if k * s <= 2 * g - 2:
        warnings.append("ks <= 2g-2: codeword dimension is only a lower bound")
    if not proof_exact:
        warnings.append("k(s-1) in (0, 2g-2]: proof distance is only an upper bound")
    if count == 1:
        warnings.append("the code has a single codeword; its minimum distance is vacuous")
    delta = 1 / (s + (1 - g) / k)
    bound = (2 * g - 1) / ((s + 1) * g - 1) if g >= 1 else None
    if bound is not None and k * (g - 1) * (s - 1) > (2 * g - 1) * (g - 1):
        warnings.append(f"normalized distance {delta:.6f} is below the stated lower bound {bound:.6f}")
    if d_stated != d_proof:
        warnings.append(
            f"stated minimum distance {d_stated} differs from the distance {d_proof} "
            "realized by the pair k(s-1)P+kQ, k(s-1)P+kR"
        )

    return CodeParameters(
        spec=spec,
        ambient_dim=N,
        codeword_dim=ell,
        count=count,
        log_size=size,
        min_distance_stated=d_stated,
        min_distance_proof=d_proof,
        normalized_weight=ell / N,
        rate=size / (N * ell),
        normalized_min_distance=delta,
        delta_lower_bound=bound,
        validity_warnings=warnings,
    )


def rate(spec: FamilySpec) -> float:
    spec.check_feasible()
    ell = spec.k * spec.s + 1 - spec.g
    return log_q(counting.count_family(spec), spec.curve.q) / (ambient_dim(spec) * ell)


def genus_one_formulas(spec: FamilySpec) -> dict:
    """Normalized weight, rate and normalized distance in their g = 1 forms."""
    if spec.g != 1:
        raise ValueError("the simplified formulas hold for genus 1 only")
    n, k, s, w = spec.n, spec.k, spec.s, spec.w
    if spec.family == "H":
        lam, denom = s / n, n * k * k * s
    elif spec.family == "A":
        lam, denom = 1 / n, n * k * k * s * s
    else:
        lam, denom = s / (n * w), n * k * k * w * s
    size = log_q(counting.count_family(spec), spec.curve.q)
    return {
        "normalized_weight": lam,
        "rate": size / denom,
        "rate_denominator": denom,
        "normalized_min_distance": 1 / s,
    }


def round6(x: float) -> str:
    """Round half-up to six decimals, formatted as 0.dddddd."""
    return str(Decimal(repr(x)).quantize(Decimal("0.000001"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class RateTableRow:
    n: int
    s: int
    rate_H: float
    rate_A: float
    rate_B: float
    rate_C: float

    def rates(self) -> tuple[float, float, float, float]:
        return self.rate_H, self.rate_A, self.rate_B, self.rate_C

    def csv(self) -> str:
        return ",".join([str(self.n), str(self.s)] + [round6(r) for r in self.rates()])


def rate_row(q: int, n: int, s: int, k: int, w: int, g: int) -> RateTableRow:
    curve = CurveDescriptor(q=q, n=n, g=g)
    return RateTableRow(
        n,
        s,
        rate(FamilySpec("H", curve, k, s)),
        rate(FamilySpec("A", curve, k, s)),
        rate(FamilySpec("B", curve, k, s, w)),
        rate(FamilySpec("C", curve, k, s, w)),
    )


def table3(preset: str = "table3") -> list[RateTableRow]:
    if preset != "table3":
        raise ValueError(f"unknown preset {preset!r}")
    p = TABLE3_PRESET
    return [rate_row(p["q"], n, s, p["k"], p["w"], p["g"]) for n in p["n"] for s in range(1, n)]


def table_csv(rows: list[RateTableRow]) -> str:
    return "\n".join(["n,s,H,A,B,C"] + [r.csv() for r in rows]) + "\n"
