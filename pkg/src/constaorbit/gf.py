"""Finite fields GF(p^d) backed by exp/log tables.

Elements are plain ints in *polynomial encoding*: the element
``c_0 + c_1 y + ... + c_{d-1} y^{d-1}`` (``c_i`` in ``0..p-1``) is stored
as ``c_0 + c_1 p + ... + c_{d-1} p^{d-1}``.  Zero is ``0`` and one is ``1``
in every field.  The canonical primitive element is the residue of ``y``
modulo the lexicographically smallest primitive polynomial.

Multiplication, inversion and powers go through the log tables; addition is
digitwise mod ``p``.  :class:`FieldElement` wraps an int together with its
table for operator-style use and cross-field checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceError, ValidationError

DEFAULT_FIELD_CAP = 1 << 24


# ----------------------------------------------------------------------
# Integer helpers
# ----------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValidationError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    primes = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


# ----------------------------------------------------------------------
# Dense polynomial arithmetic over F_p, used only during the modulus search
# ----------------------------------------------------------------------

def _mulmod_p(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    d = len(f) - 1
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    # f is monic: y^d = -(f_0 + ... + f_{d-1} y^{d-1})
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(d):
                prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
    return prod[:d]


def _powmod_y(e: int, f: Sequence[int], p: int) -> list[int]:
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = [0] * d
    if d == 1:
        base[0] = (-f[0]) % p
    else:
        base[1] = 1
    while e:
        if e & 1:
            result = _mulmod_p(result, base, f, p)
        base = _mulmod_p(base, base, f, p)
        e >>= 1
    return result


def _is_one(poly: list[int]) -> bool:
    return poly[0] == 1 and not any(poly[1:])


def find_primitive_poly(p: int, d: int, cap: int = DEFAULT_FIELD_CAP) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic polynomial of degree ``d``.

    Returns coefficients lowest degree first, including the leading 1.
    Candidates are scanned by increasing integer encoding of the lower
    coefficients, so higher-degree coefficients are the most significant.
    For ``d == 1`` the result is ``y - g`` with ``g`` the smallest primitive
    root mod ``p``.

    A root of multiplicative order ``p^d - 1`` forces irreducibility (the
    unit group of a reducible quotient is strictly smaller), so only the
    order test is run.
    """
    if not is_prime(p):
        raise ValidationError(f"p={p} is not prime")
    if d < 1:
        raise ValidationError(f"extension degree must be >= 1, got {d}")
    order = p**d
    if order > cap:
        raise ResourceError(f"field of order {p}^{d} = {order} exceeds table cap {cap}")
    if d == 1:
        return ((-_smallest_primitive_root(p)) % p, 1)
    group = order - 1
    maximal = [group // r for r in factorize(group)]
    for code in range(1, p**d):
        if code % p == 0:
            continue  # constant term zero => y divides f
        f = [(code // p**i) % p for i in range(d)] + [1]
        if not _is_one(_powmod_y(group, f, p)):
            continue
        if any(_is_one(_powmod_y(e, f, p)) for e in maximal):
            continue
        return tuple(f)
    raise AssertionError(f"no primitive polynomial of degree {d} over F_{p}")


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------

def _build_exp_table(p: int, modulus: Sequence[int]) -> np.ndarray:
    """exp[i] = encoding of y^i, for i in [0, p^d - 2].

    The power sequence is cut into lanes advanced in lockstep, so each step
    is one vectorized multiply-by-y.  Lane starting points y^(j*steps) come
    from repeated doubling with the F_p-linear map "multiply by y^steps".
    """
    d = len(modulus) - 1
    group = p**d - 1
    if d == 1:
        g = (-modulus[0]) % p
        out = np.empty(group, dtype=np.int64)
        x = 1
        for i in range(group):
            out[i] = x
            x = x * g % p
        return out
    tail = np.array([(-c) % p for c in modulus[:d]], dtype=np.int64)
    weights = p ** np.arange(d, dtype=np.int64)
    lanes = max(1, int(np.sqrt(group)))
    steps = -(-group // lanes)

    def times_y(digits: np.ndarray) -> np.ndarray:
        top = digits[:, -1].copy()
        shifted = np.zeros_like(digits)
        shifted[:, 1:] = digits[:, :-1]
        return (shifted + top[:, None] * tail[None, :]) % p

    # rows of M: digits of y^i * y^steps, so (digits of x) @ M = digits of x*y^steps
    mat = np.eye(d, dtype=np.int64)
    for _ in range(steps):
        mat = times_y(mat)
    starts = np.zeros((1, d), dtype=np.int64)
    starts[0, 0] = 1
    while len(starts) < lanes:
        starts = np.vstack([starts, starts @ mat % p])
        mat = mat @ mat % p
    starts = starts[:lanes]

    out = np.empty((lanes, steps), dtype=np.int64)
    if p == 2:
        f_int = int(np.dot(tail, weights))
        high = 1 << (d - 1)
        mask = (1 << d) - 1
        cur = starts @ weights
        for s in range(steps):
            out[:, s] = cur
            top = (cur & high) != 0
            cur = ((cur << 1) & mask) ^ np.where(top, f_int, 0)
    else:
        cur = starts
        for s in range(steps):
            out[:, s] = cur @ weights
            cur = times_y(cur)
    return out.reshape(-1)[:group]


@dataclass(frozen=True, eq=False)
class FieldTable:
    """GF(p^d) with exp/log tables over a canonical primitive modulus."""

    p: int
    d: int
    modulus: tuple[int, ...]
    exp_table: np.ndarray
    log_table: np.ndarray

    @property
    def order(self) -> int:
        return self.p**self.d

    @property
    def group_order(self) -> int:
        return self.p**self.d - 1

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.p, self.modulus)

    @property
    def primitive(self) -> int:
        """Encoding of the canonical primitive element (residue of y)."""
        return int(self.exp_table[1]) if self.group_order > 1 else 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldTable) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FieldTable(GF({self.p}^{self.d}), modulus={poly_str(self.modulus, 'y')})"

    # -- raw int arithmetic ------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValidationError(f"{a} is not an element of GF({self.p}^{self.d})")
        return a

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % p
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2 or a == 0:
            return a
        if self.d == 1:
            return (-a) % p
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        lt = self.log_table
        return int(self.exp_table[(int(lt[a]) + int(lt[b])) % self.group_order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return int(self.exp_table[(-int(self.log_table[a])) % self.group_order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DomainError("zero has no multiplicative inverse")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.group_order])

    def exp(self, k: int) -> int:
        """Element with discrete log ``k`` (any integer, reduced mod p^d - 1)."""
        return int(self.exp_table[k % self.group_order])

    def log(self, a: int) -> int:
        if a == 0:
            raise DomainError("log of zero is undefined")
        return int(self.log_table[a])

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> F_p -> this field."""
        return k % self.p

    def element_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        return self.group_order // gcd(self.log(a), self.group_order)

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.d)]

    def to_str(self, a: int) -> str:
        return poly_str(self.digits(a), "y")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, self.check(value))

    # -- small-field numpy tables for vectorized code arithmetic -----------

    @property
    def add_array(self) -> np.ndarray:
        return _op_arrays(self)[0]

    @property
    def mul_array(self) -> np.ndarray:
        return _op_arrays(self)[1]

    @property
    def neg_array(self) -> np.ndarray:
        return _op_arrays(self)[2]


_SMALL_TABLE_LIMIT = 1 << 12


@lru_cache(maxsize=64)
def _op_arrays(field: FieldTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    q = field.order
    if q > _SMALL_TABLE_LIMIT:
        raise ResourceError(f"operation tables for GF({q}) exceed {_SMALL_TABLE_LIMIT} elements")
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = field.add(a, b)
            mul[a, b] = field.mul(a, b)
    neg = np.array([field.neg(a) for a in range(q)], dtype=np.int64)
    for arr in (add, mul, neg):
        arr.setflags(write=False)
    return add, mul, neg


@lru_cache(maxsize=32)
def _build_field_cached(p: int, d: int, cap: int) -> FieldTable:
    modulus = find_primitive_poly(p, d, cap)
    exp_table = _build_exp_table(p, modulus)
    log_table = np.full(p**d, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(len(exp_table), dtype=np.int64)
    exp_table.setflags(write=False)
    log_table.setflags(write=False)
    return FieldTable(p, d, modulus, exp_table, log_table)


def build_field(p: int, d: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FieldTable:
    """Build (or fetch from cache) the table-backed field GF(p^d)."""
    return _build_field_cached(p, d, cap)


def element_order(field: FieldTable, a: int) -> int:
    return field.element_order(a)


# ----------------------------------------------------------------------
# Subfield embedding
# ----------------------------------------------------------------------

def _check_subfield(sub: FieldTable, sup: FieldTable) -> int:
    if sub.p != sup.p or sup.d % sub.d != 0:
        raise ValidationError(f"GF({sub.p}^{sub.d}) is not a subfield of GF({sup.p}^{sup.d})")
    return sup.group_order // sub.group_order


@lru_cache(maxsize=256)
def embedding_log_factor(sub: FieldTable, sup: FieldTable) -> int:
    """Multiplier ``s`` with ``embed(exp_sub(a)) = exp_sup(a * s)``.

    ``s = k * (|sup|-1)/(|sub|-1)`` for the smallest ``k`` coprime to
    ``|sub|-1`` such that the image of the primitive element is a root of
    ``sub.modulus``; that makes the map additive as well as multiplicative.
    """
    ratio = _check_subfield(sub, sup)
    n_sub = sub.group_order
    for k in range(1, max(n_sub, 1) + 1):
        if gcd(k, n_sub) != 1:
            continue
        root = sup.exp(k * ratio)
        acc = 0
        for c in reversed(sub.modulus):
            acc = sup.add(sup.mul(acc, root), sup.from_int(c))
        if acc == 0:
            return (k * ratio) % sup.group_order if sup.group_order > 1 else 0
    raise AssertionError("subfield modulus has no root in the extension")


def subfield_embed(sub: FieldTable, sup: FieldTable, x: int) -> int:
    """Image of ``x`` in ``sup`` under the canonical ring embedding."""
    sub.check(x)
    factor = embedding_log_factor(sub, sup)
    if x == 0:
        return 0
    return sup.exp(sub.log(x) * factor)


def project_to_subfield(sup: FieldTable, sub: FieldTable, x: int) -> int:
    """Preimage of ``x`` under :func:`subfield_embed`; DomainError if none."""
    sup.check(x)
    factor = embedding_log_factor(sub, sup)
    if x == 0:
        return 0
    lx = sup.log(x)
    ratio = sup.group_order // sub.group_order
    if lx % ratio != 0:
        raise DomainError(f"coefficient not in base field: {sup.to_str(x)}")
    # factor = k * ratio with gcd(k, |sub|-1) = 1
    k = factor // ratio
    a = (lx // ratio) * pow(k, -1, sub.group_order) if sub.group_order > 1 else 0
    return sub.exp(a)


# ----------------------------------------------------------------------
# Operator wrapper
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    field: FieldTable
    value: int

    def _other(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValidationError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def order(self) -> int:
        return self.field.element_order(self.value)

    @property
    def log(self) -> int | None:
        return None if self.value == 0 else self.field.log(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field.to_str(self.value)} in GF({self.field.p}^{self.field.d})"


def poly_str(coeffs: Iterable[int], var: str = "x") -> str:
    """Human-readable form of a coefficient list (lowest degree first)."""
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(reversed(terms)) if terms else "0"
