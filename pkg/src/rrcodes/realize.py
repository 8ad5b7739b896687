"""Explicit codewords over the rational function field F_q(x).

The projective line over F_q has the n = q + 1 rational places a in F_q
(index = the element's int code) and infinity (index q). A function f in the
ambient space L(c * sum P) is stored as the polynomial h = f * prod_a (x-a)^c,
of degree <= c*n, in monomial coordinates. Then f lies in L(kV) exactly when
prod_a (x-a)^(c - k*m_a) divides h and deg h <= c*(n-1) + k*m_inf, so the
codeword has basis x^j * prod_a (x-a)^(c - k*m_a) for 0 <= j <= k*deg V.
"""

from __future__ import annotations

import json
import logging
import os
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from rrcodes import _kernels as K
from rrcodes import counting
from rrcodes.divisors import (
    DEFAULT_CAP,
    CapExceeded,
    Divisor,
    FamilySpec,
    divisor_at,
    enumerate_family,
    family_contains,
    proof_pair,
)
from rrcodes.gf import GF, DimensionMismatch, FieldMismatch, MatrixGF, field_of_order
from rrcodes.params import proof_min_distance, riemann_roch_dim, stated_min_distance

log = logging.getLogger(__name__)

VERIFY_CAP = 2000
MAX_RECORDED = 20


class GenusUnsupported(ValueError):
    pass


class AmbientOverflow(ValueError):
    pass


def _apply_thread_cap():
    cap = os.environ.get("RRCODES_THREADS")
    if cap:
        import numba

        numba.set_num_threads(max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS)))


@dataclass(frozen=True)
class RationalPlace:
    point: int | None  # None is the place at infinity

    @property
    def is_infinity(self) -> bool:
        return self.point is None

    def __str__(self):
        return "inf" if self.point is None else f"x={self.point}"


def rational_places(fld: GF) -> list[RationalPlace]:
    return [RationalPlace(a) for a in fld.elements()] + [RationalPlace(None)]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_q^N held as its canonical RREF basis."""

    field: GF
    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        self.basis.setflags(write=False)

    @classmethod
    def from_rows(cls, fld: GF, rows, ambient_dim: int | None = None) -> "Subspace":
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(0, ambient_dim or 0) if arr.size == 0 else arr.reshape(1, -1)
        if ambient_dim is not None and arr.shape[1] != ambient_dim:
            raise DimensionMismatch(f"rows of length {arr.shape[1]}, ambient {ambient_dim}")
        r = K.rref_inplace(arr, arr.shape[0], *fld.kernel_args) if arr.size else 0
        return cls(fld, arr.shape[1], arr[:r].copy())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def matrix(self) -> MatrixGF:
        return MatrixGF(self.field, self.basis)

    def pivots(self) -> np.ndarray:
        return K.pivot_columns(self.basis, self.dim)[: self.dim]

    def key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.key()))


def _check_pair(u: Subspace, v: Subspace):
    if u.field != v.field:
        raise FieldMismatch(f"{u.field} vs {v.field}")
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(f"ambient dims {u.ambient_dim} and {v.ambient_dim}")


def sum_dim(u: Subspace, v: Subspace) -> int:
    _check_pair(u, v)
    return int(K.stack_rank_rref(u.basis, u.dim, u.pivots(), v.basis, v.dim, *u.field.kernel_args))


def intersection_dim(u: Subspace, v: Subspace) -> int:
    return u.dim + v.dim - sum_dim(u, v)


def subspace_distance(u: Subspace, v: Subspace) -> int:
    return 2 * sum_dim(u, v) - u.dim - v.dim


def _basis_rows(fld: GF, mults: Sequence[int], k: int, c: int) -> np.ndarray:
    q = fld.q
    n = q + 1
    N = c * n + 1
    exps = np.array([c - k * m for m in mults[:q]], dtype=np.int64)
    if (exps < 0).any() or k * mults[q] > c:
        raise AmbientOverflow(f"k*V = {[k * m for m in mults]} exceeds the ambient multiplier {c}")
    nrows = k * sum(mults) + 1
    if nrows <= 0:
        return np.zeros((0, N), dtype=np.int64)
    f = K.linear_power_product(np.arange(q, dtype=np.int64), exps, *fld.kernel_args)
    rows = np.zeros((nrows, N), dtype=np.int64)
    for j in range(nrows):
        rows[j, j : j + len(f)] = f
    return rows


def _check_curve(fld: GF, d: Divisor):
    if len(d) != fld.q + 1:
        raise GenusUnsupported(f"a divisor on P^1 over GF({fld.q}) needs {fld.q + 1} places, got {len(d)}")


def riemann_roch_space(d: Divisor, c: int, fld: GF) -> Subspace:
    """L(d) on P^1 inside L(c * sum P), for any divisor d <= c * sum P."""
    _check_curve(fld, d)
    rows = _basis_rows(fld, d.mults, 1, c)
    return Subspace.from_rows(fld, rows, ambient_dim=c * (fld.q + 1) + 1)


def embed_basis(d: Divisor, k: int, c: int, fld: GF) -> Subspace:
    """The codeword L(kd) inside L(c * sum P) on P^1."""
    _check_curve(fld, d)
    rows = _basis_rows(fld, d.mults, k, c)
    return Subspace.from_rows(fld, rows, ambient_dim=c * (fld.q + 1) + 1)


def _field_for(spec: FamilySpec) -> GF:
    if spec.g != 0:
        raise GenusUnsupported(f"explicit codewords exist only for genus 0, got g={spec.g}")
    if spec.n != spec.curve.q + 1:
        raise GenusUnsupported(f"P^1 over GF({spec.curve.q}) has {spec.curve.q + 1} rational places, not {spec.n}")
    return field_of_order(spec.curve.q)


@dataclass
class _Batch:
    divisors: list[Divisor]
    mults: np.ndarray
    bases: np.ndarray
    ranks: np.ndarray
    pivots: np.ndarray


def _realize_batch(spec: FamilySpec, divisors: list[Divisor], fld: GF) -> _Batch:
    c = spec.multiplier
    N = c * spec.n + 1
    L = spec.k * spec.s + 1
    M = len(divisors)
    bases = np.zeros((M, L, N), dtype=np.int64)
    nrows = np.zeros(M, dtype=np.int64)
    for i, d in enumerate(divisors):
        rows = _basis_rows(fld, d.mults, spec.k, c)
        bases[i, : len(rows)] = rows
        nrows[i] = len(rows)
    ranks, pivots = K.rref_batch(bases, nrows, *fld.kernel_args)
    mults = np.array([d.mults for d in divisors], dtype=np.int64).reshape(M, spec.n)
    return _Batch(divisors, mults, bases, ranks, pivots[:, :L])


def realize_family(spec: FamilySpec, cap: int = DEFAULT_CAP) -> Iterator[tuple[Divisor, Subspace]]:
    fld = _field_for(spec)
    divisors = list(enumerate_family(spec, cap))
    batch = _realize_batch(spec, divisors, fld)
    N = batch.bases.shape[2]
    return (
        (d, Subspace(fld, N, batch.bases[i, : batch.ranks[i]].copy())) for i, d in enumerate(divisors)
    )


@dataclass
class VerificationReport:
    spec: FamilySpec
    family_size: int
    codewords_checked: int
    sampled: bool
    pairs_checked: int
    dims_ok: bool
    all_distinct: bool
    empirical_min_distance: int | None
    stated_min_distance: int
    proof_min_distance: int
    intersection_formula_ok: bool
    zero_min_pairs: int
    sum_law_ok: bool
    sum_law_strict_pairs: int
    discrepancies: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [d for d in self.discrepancies if d["severity"] == "failure"]

    @property
    def findings(self) -> list[dict]:
        return [d for d in self.discrepancies if d["severity"] == "finding"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "family_size": str(self.family_size),
            "codewords_checked": self.codewords_checked,
            "sampled": self.sampled,
            "pairs_checked": self.pairs_checked,
            "dims_ok": self.dims_ok,
            "all_distinct": self.all_distinct,
            "empirical_min_distance": self.empirical_min_distance,
            "stated_min_distance": self.stated_min_distance,
            "proof_min_distance": self.proof_min_distance,
            "intersection_formula_ok": self.intersection_formula_ok,
            "zero_min_pairs": self.zero_min_pairs,
            "sum_law_ok": self.sum_law_ok,
            "sum_law_strict_pairs": self.sum_law_strict_pairs,
            "ok": self.ok,
            "discrepancies": self.discrepancies,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _record(out: list, counts: dict, severity: str, law: str, d1=None, d2=None, expected=None, observed=None):
    counts[law] = counts.get(law, 0) + 1
    if counts[law] > MAX_RECORDED:
        return
    out.append(
        {
            "severity": severity,
            "law": law,
            "divisor1": list(d1.mults) if d1 is not None else None,
            "divisor2": list(d2.mults) if d2 is not None else None,
            "expected": expected,
            "observed": observed,
        }
    )


def _unit_move(spec: FamilySpec, d: Divisor) -> Divisor | None:
    lo, hi = counting.family_range(spec)
    for i, a in enumerate(d.mults):
        if a > lo:
            for j, b in enumerate(d.mults):
                if j != i and b < hi:
                    m = list(d.mults)
                    m[i] -= 1
                    m[j] += 1
                    return Divisor(tuple(m))
    return None


def _choose_divisors(spec: FamilySpec, size: int, cap: int, seed: int | None) -> tuple[list[Divisor], bool]:
    if size <= cap:
        return list(enumerate_family(spec, cap)), False
    if seed is None:
        raise CapExceeded(size, cap)
    eq = counting.family_eq(spec)
    table = counting.oracle_table(eq.n, eq.lo, eq.hi, eq.s - eq.n * eq.lo)
    picks = sorted(random.Random(seed).sample(range(size), cap))
    chosen = [divisor_at(spec, i, table) for i in picks]
    extra = proof_pair(spec)
    if extra is None:
        nb = _unit_move(spec, chosen[0])
        extra = (chosen[0], nb) if nb is not None else ()
    have = set(chosen)
    for d in extra:
        if d not in have:
            chosen.append(d)
            have.add(d)
    chosen.sort(key=lambda d: d.mults)
    return chosen, True


def _unique_rows(rows: np.ndarray, lo: int, hi: int):
    base = hi - lo + 1
    if rows.shape[1] * np.log2(base) < 62:
        keys = (rows - lo) @ (base ** np.arange(rows.shape[1], dtype=np.int64))
        uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    else:
        uniq, first, inverse = np.unique(rows, axis=0, return_index=True, return_inverse=True)
    return uniq, first, inverse.reshape(-1)


def verify(spec: FamilySpec, cap: int = VERIFY_CAP, seed: int | None = None) -> VerificationReport:
    """Realize the family over P^1 and check the dimension, size, intersection
    and distance claims on every pair of (possibly sampled) codewords."""
    _apply_thread_cap()
    fld = _field_for(spec)
    size = counting.count_family(spec)
    divisors, sampled = _choose_divisors(spec, size, cap, seed)
    k, s = spec.k, spec.s
    ell = k * s + 1
    d_stated = stated_min_distance(spec)
    d_proof, _ = proof_min_distance(spec)
    out: list[dict] = []
    counts: dict[str, int] = {}

    batch = _realize_batch(spec, divisors, fld)
    M = len(divisors)
    ranks = batch.ranks

    bad_dims = np.flatnonzero(ranks != ell)
    for i in bad_dims:
        _record(out, counts, "failure", "codeword_dimension", divisors[i], None, ell, int(ranks[i]))
    dims_ok = bad_dims.size == 0

    keys = {batch.bases[i, : ranks[i]].tobytes() for i in range(M)}
    all_distinct = len(keys) == M
    if not all_distinct:
        _record(out, counts, "failure", "injectivity", None, None, M, len(keys))
    if not all(family_contains(spec, d) for d in divisors):
        _record(out, counts, "failure", "family_membership")
    if not sampled and M != size:
        _record(out, counts, "failure", "family_size", None, None, size, M)

    sr = K.pairwise_stack_ranks(batch.bases, ranks, batch.pivots, *fld.kernel_args)

    ii, jj = np.triu_indices(M, 1)
    mults = batch.mults
    stack = sr[ii, jj].astype(np.int64)
    inter = ranks[ii] + ranks[jj] - stack
    dist = 2 * stack - ranks[ii] - ranks[jj]
    mins_all = np.minimum(mults[ii], mults[jj])
    min_deg = mins_all.sum(axis=1)
    max_deg = np.maximum(mults[ii], mults[jj]).sum(axis=1)

    # intersection law, route 1: Riemann-Roch at g = 0
    kd = k * min_deg
    rr = np.where(kd < 0, 0, kd + 1)
    inter_ok = True
    for idx in np.flatnonzero(inter != rr):
        inter_ok = False
        _record(out, counts, "failure", "intersection_rr", divisors[ii[idx]], divisors[jj[idx]], int(rr[idx]), int(inter[idx]))

    # route 2: rank of the realized L(k * min) for each distinct min divisor
    uniq, first, inverse = _unique_rows(mins_all, *counting.family_range(spec))
    embed = np.zeros(len(uniq), dtype=np.int64)
    c = spec.multiplier
    for u, idx in enumerate(first):
        dmin = Divisor(tuple(mins_all[idx]))
        if dmin.degree < 0:
            continue
        embed[u] = embed_basis(dmin, k, c, fld).dim
        expected = riemann_roch_dim(k * dmin.degree, 0).value
        if embed[u] != expected:
            inter_ok = False
            _record(out, counts, "failure", "min_divisor_dimension", dmin, None, expected, int(embed[u]))
    pair_embed = embed[inverse] if len(uniq) else embed
    for idx in np.flatnonzero(inter != pair_embed):
        inter_ok = False
        _record(
            out, counts, "failure", "intersection_embed", divisors[ii[idx]], divisors[jj[idx]], int(pair_embed[idx]), int(inter[idx])
        )

    zero_min = np.all(mins_all == 0, axis=1) if M >= 2 else np.zeros(0, dtype=bool)
    for idx in np.flatnonzero(zero_min & (inter != 1)):
        inter_ok = False
        _record(out, counts, "failure", "zero_min_constants", divisors[ii[idx]], divisors[jj[idx]], 1, int(inter[idx]))

    # sum law: U + V sits inside L(k * max), with equality whenever L(k * min)
    # has its Riemann-Roch dimension; observed, not claimed
    max_dim = k * max_deg + 1
    sum_bad = (stack > max_dim) | ((kd >= -1) & (stack != max_dim))
    for idx in np.flatnonzero(sum_bad):
        _record(out, counts, "failure", "sum_law", divisors[ii[idx]], divisors[jj[idx]], int(max_dim[idx]), int(stack[idx]))
    sum_law_ok = not sum_bad.any()
    strict = int((stack < max_dim).sum())

    if M >= 2 and (dist <= 0).any():
        idx = int(np.flatnonzero(dist <= 0)[0])
        _record(out, counts, "failure", "distinct_codewords", divisors[ii[idx]], divisors[jj[idx]], ">0", int(dist[idx]))

    emp = None
    if M >= 2:
        amin = int(np.argmin(dist))
        emp = int(dist[amin])
        pair = divisors[ii[amin]], divisors[jj[amin]]
        if emp != d_stated:
            _record(out, counts, "finding", "stated_min_distance", *pair, d_stated, emp)
        if emp != d_proof:
            _record(out, counts, "failure", "proof_min_distance", *pair, d_proof, emp)
        pp = proof_pair(spec)
        if pp is not None:
            a, b = (embed_basis(d, k, c, fld) for d in pp)
            got = subspace_distance(a, b)
            if got != 2 * k:
                _record(out, counts, "failure", "proof_pair", pp[0], pp[1], 2 * k, got)

    for law, n in counts.items():
        if n > MAX_RECORDED:
            log.warning("%s: %d discrepancies, %d recorded", law, n, MAX_RECORDED)

    return VerificationReport(
        spec=spec,
        family_size=size,
        codewords_checked=M,
        sampled=sampled,
        pairs_checked=len(ii),
        dims_ok=dims_ok,
        all_distinct=all_distinct,
        empirical_min_distance=emp,
        stated_min_distance=d_stated,
        proof_min_distance=d_proof,
        intersection_formula_ok=inter_ok,
        zero_min_pairs=int(zero_min.sum()),
        sum_law_ok=sum_law_ok,
        sum_law_strict_pairs=strict,
        discrepancies=out,
    )
