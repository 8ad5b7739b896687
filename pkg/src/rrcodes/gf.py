"""Small finite fields GF(p^m), polynomials over them, and exact row reduction.

Elements are plain ints in ``[0, q)``: the base-``p`` digits of an element are
its coefficients (low degree first) as a polynomial in the generator modulo
the defining polynomial. Multiplication goes through log/antilog tables.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from rrcodes import _kernels as K

NEG_INF = float("-inf")
MAX_ORDER = 2**16
MAX_TABLE_ORDER = 256


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class TooLarge(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DimensionMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raise NotPrime when q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise NotPrime(f"{q} is not a prime power")
            return p, m
    raise NotPrime(f"{q} is not a prime power")


# -- polynomials over the prime field as coefficient lists, low degree first --

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _prime_poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bc) % p
        _trim(a)
    return a


def _digits(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        v, d = divmod(v, p)
        out.append(d)
    return out


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(coeffs) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _prime_poly_mod(list(coeffs), list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m whose coefficients, read from the top
    down, are lexicographically smallest (x^4+x+1 over GF(2))."""
    for r in range(p**m):
        coeffs = tuple(_digits(r, p, m)) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class GF:
    """The field GF(p^m) built from a fixed defining polynomial."""

    p: int
    m: int
    modulus: tuple[int, ...]
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    @functools.cached_property
    def kernel_args(self) -> tuple[np.ndarray, ...]:
        """Addition, multiplication, negation and inversion tables."""
        q = self.q
        if q > MAX_TABLE_ORDER:
            raise TooLarge(f"matrix arithmetic is limited to q <= {MAX_TABLE_ORDER}, got {q}")
        elems = np.arange(q, dtype=np.int64)
        if self.p == 2:
            at = elems[:, None] ^ elems[None, :]
        elif self.m == 1:
            at = (elems[:, None] + elems[None, :]) % self.p
        else:
            at = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        mt = np.zeros((q, q), dtype=np.int64)
        nz = elems[1:]
        mt[1:, 1:] = self.exp[(self.log[nz][:, None] + self.log[nz][None, :]) % (q - 1)]
        nt = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
        it = np.zeros(q, dtype=np.int64)
        it[1:] = self.exp[(q - 1 - self.log[nz]) % (q - 1)]
        for t in (at, mt, nt, it):
            t.setflags(write=False)
        return at, mt, nt, it

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return K.gadd(a, b, self.p, self.m)

    def neg(self, a: int) -> int:
        return K.gneg(a, self.p, self.m)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def from_int(self, v: int) -> int:
        """Image of an integer under Z -> GF(p)."""
        return v % self.p


def _mul_mod(a: int, b: int, p: int, m: int, modulus: tuple[int, ...]) -> int:
    if p == 2:
        poly = sum(c << i for i, c in enumerate(modulus))
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> m:
                a ^= poly
        return out
    da, db = _digits(a, p, m), _digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    red = _prime_poly_mod(prod, list(modulus), p)
    return sum(c * p**i for i, c in enumerate(red))


def _log_tables(p: int, m: int, modulus: tuple[int, ...]):
    q = p**m
    exp = np.zeros(max(q - 1, 1), dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    for g in range(1, q):
        seen = 0
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = _mul_mod(x, g, p, m, modulus)
            seen += 1
            if x == 1:
                break
        if seen == q - 1:
            return exp, log
    raise AssertionError("no primitive element")


@functools.lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> GF:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise TooLarge(f"{p}^{m} exceeds {MAX_ORDER}")
    modulus = smallest_irreducible(p, m)
    exp, log = _log_tables(p, m, modulus)
    exp.setflags(write=False)
    log.setflags(write=False)
    return GF(p, m, modulus, exp, log)


def field_of_order(q: int) -> GF:
    return field_new(*prime_power(q))


# -- polynomials over GF(q) --

@dataclass(frozen=True)
class Poly:
    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        _trim(c)
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: GF, a: int) -> "Poly":
        return cls(field, (a,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return Poly(f, tuple(f.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __call__(self, a: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def poly_mul(a: Poly, b: Poly) -> Poly:
    a._check(b)
    f = a.field
    if a.is_zero() or b.is_zero():
        return Poly(f, ())
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return Poly(f, tuple(out))


def poly_linear_power(field: GF, a: int, e: int) -> Poly:
    """(x - a)**e."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    out = Poly.const(field, 1)
    lin = Poly(field, (field.neg(a), 1))
    for _ in range(e):
        out = out * lin
    return out


# -- matrices --

@dataclass(frozen=True, eq=False)
class MatrixGF:
    field: GF
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError(f"entries must lie in [0, {self.field.q})")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def vstack(self, other: "MatrixGF") -> "MatrixGF":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.cols != other.cols:
            raise DimensionMismatch(f"{self.cols} vs {other.cols} columns")
        return MatrixGF(self.field, np.vstack([self.data, other.data]))


def rref(mat: MatrixGF) -> tuple[MatrixGF, int]:
    """Reduced row-echelon form (first nonzero pivot) and rank."""
    work = np.array(mat.data, dtype=np.int64)
    rank = K.rref_inplace(work, work.shape[0], *mat.field.kernel_args) if work.size else 0
    return MatrixGF(mat.field, work), int(rank)


def rank(mat: MatrixGF) -> int:
    return rref(mat)[1]


def stack_rank(a: MatrixGF, b: MatrixGF) -> int:
    return rank(a.vstack(b))
