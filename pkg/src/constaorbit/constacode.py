"""Simple-root lambda-constacyclic codes: construction, idempotents, enumeration.

Codes live in F_q[x]/<x^n - lambda>.  A code is chosen by a set of cosets
(its check polynomial is the product of their minimal polynomials), so its
nonzero codewords are exactly those whose components in the selected
minimal ideals are not all zero.

Field elements of F_q are ints in the encoding of :mod:`constaorbit.gf`;
codeword vectors are int64 numpy arrays over that encoding.
"""

from __future__ import annotations

import re
from concurrent.futures import Executor
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import poly as P
from .cyclotomic import Coset, CosetSystem, alpha_of, coset_of, cosets_in_S, mult_order
from .errors import ConsistencyError, DomainError, ResourceError, ValidationError
from .gf import DEFAULT_FIELD_CAP, FieldTable, build_field, subfield_embed

DEFAULT_ENUM_CAP = 1 << 22


# ----------------------------------------------------------------------
# Context
# ----------------------------------------------------------------------

_POWER_RE = re.compile(r"^\s*g\s*\^\s*(-?\d+)\s*$")


def parse_lambda(q_field: FieldTable, spec: int | str) -> int:
    """Resolve a lambda spec to an element of F_q.

    A bare integer is a prime-field value and needs ``e == 1``; ``"g^a"`` is
    the a-th power of the canonical primitive element of F_q.
    """
    if isinstance(spec, str):
        m = _POWER_RE.match(spec)
        if m:
            return q_field.exp(int(m.group(1)))
        try:
            spec = int(spec)
        except ValueError:
            raise ValidationError(f"unrecognized lambda {spec!r}; use an integer or g^a") from None
    if isinstance(spec, bool) or not isinstance(spec, int):
        raise ValidationError(f"unrecognized lambda {spec!r}")
    if q_field.d != 1:
        raise ValidationError("a bare integer lambda needs a prime field (e = 1); use g^a")
    return spec % q_field.p


@dataclass(frozen=True)
class ZetaContext:
    """Everything fixed by (q, n, lambda): fields, cosets and the root zeta.

    ``zeta`` is stored through ``root``/``stride``: ``zeta^j = root^(j/stride)``.
    A full context has ``stride == 1`` and ``ext_field = F_{q^m}``.  A reduced
    context (see :func:`build_context` with ``components``) keeps only the
    subgroup generated by zeta^stride, which lives in the smaller field
    F_{q^D}, D = ord_{tn/stride}(q); it can realize only cosets whose members
    are multiples of ``stride``.
    """

    p: int
    e: int
    n: int
    lam: int
    t: int
    m: int
    q_field: FieldTable
    ext_field: FieldTable
    system: CosetSystem
    root: int
    stride: int
    zeta_u: int

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def tn(self) -> int:
        return self.t * self.n

    @property
    def ext_degree(self) -> int:
        """Degree of ``ext_field`` over F_q."""
        return self.ext_field.d // self.e

    @property
    def is_full(self) -> bool:
        return self.stride == 1

    @property
    def omega(self) -> int:
        return self.ext_field.primitive

    @property
    def zeta_log(self) -> int:
        """Discrete log of ``root`` w.r.t. the canonical primitive element."""
        return self.ext_field.log(self.root)

    @property
    def zeta(self) -> int:
        if not self.is_full:
            raise ValidationError("reduced context: zeta itself is not realized, only zeta^stride")
        return self.root

    @cached_property
    def lam_ext(self) -> int:
        return subfield_embed(self.q_field, self.ext_field, self.lam)

    @cached_property
    def inv_n_ext(self) -> int:
        return self.ext_field.inv(self.ext_field.from_int(self.n))

    @property
    def xi(self) -> int:
        """Canonical primitive element of F_q (generator of the scalar group)."""
        return self.q_field.primitive

    def zeta_pow(self, j: int) -> int:
        if j % self.stride:
            raise ValidationError(f"zeta^{j} not realized in a context of stride {self.stride}")
        return self.ext_field.exp(self.zeta_log * (j // self.stride))

    def realizes(self, coset: Coset) -> bool:
        return all(j % self.stride == 0 for j in coset.members)

    def embed(self, a: int) -> int:
        return subfield_embed(self.q_field, self.ext_field, a)


def _zeta_candidates(ext: FieldTable, N: int, stride: int, j0: int, n: int, lam_ext: int) -> Iterator[tuple[int, int]]:
    """(u, omega^(u (Q-1)/N)) for gcd(u, N) = 1 whose j0/stride-th power has n-th power lambda."""
    base = ext.group_order // N
    for u in range(1, N + 1):
        if gcd(u, N) != 1:
            continue
        root = ext.exp(u * base)
        if ext.pow(root, (j0 // stride) * n) == lam_ext:
            yield u, root


def _reference_exponent(t: int, n: int, stride: int) -> int:
    """Smallest member of S divisible by ``stride``."""
    return next(1 + t * a for a in range(n) if (1 + t * a) % stride == 0)


def build_context(
    p: int,
    e: int,
    n: int,
    lambda_spec: int | str,
    *,
    components: Iterable[int] | None = None,
    minimal_field: bool = False,
    field_cap: int = DEFAULT_FIELD_CAP,
    zeta_choice: int = 0,
) -> ZetaContext:
    """Set up F_q, F_{q^m}, the coset system and a deterministic zeta.

    zeta is ``omega^(u (Q-1)/tn)`` for the smallest admissible ``u`` (the
    ``zeta_choice``-th one, as a test hook) with ``zeta^n = lambda``.

    When ``components`` (coset representatives) are given and either
    ``minimal_field`` is set or F_{q^m} exceeds ``field_cap``, a reduced
    context is built over the smallest field containing the roots of the
    selected cosets.  The reduced root is zeta^g, g = gcd(reps, tn), for some
    admissible zeta, though not always the one a full context would pick, so
    the same labels may name an equivalent code rather than the same one.
    """
    q_field = build_field(p, e, field_cap)
    q = q_field.order
    lam = parse_lambda(q_field, lambda_spec)
    if lam == 0:
        raise ValidationError("lambda must be nonzero")
    if n < 1:
        raise ValidationError(f"length n must be >= 1, got {n}")
    if gcd(n, q) != 1:
        raise ValidationError(f"gcd(n={n}, q={q}) != 1: repeated-root case unsupported")
    t = q_field.element_order(lam)
    system = cosets_in_S(q, n, t)
    tn = t * n
    m = mult_order(q, tn)

    stride = 1
    if components is not None:
        reps = [coset_of(r, system).rep for r in components]
        if not reps:
            raise ValidationError("empty component list")
        if minimal_field or q**m > field_cap:
            stride = reduce(gcd, reps, tn)
    elif q**m > field_cap:
        raise ResourceError(
            f"splitting field F_{q}^{m} has {q**m} elements, above cap {field_cap}; "
            "select components to use a reduced context"
        )
    N = tn // stride
    D = mult_order(q, N)
    ext = build_field(p, e * D, field_cap)
    lam_ext = subfield_embed(q_field, ext, lam)
    j0 = _reference_exponent(t, n, stride)
    found = 0
    for u, root in _zeta_candidates(ext, N, stride, j0, n, lam_ext):
        if found == zeta_choice:
            return ZetaContext(p, e, n, lam, t, m, q_field, ext, system, root, stride, u)
        found += 1
    if found == 0:
        raise ConsistencyError(f"no admissible zeta for q={q}, n={n}, lambda={lam}")
    raise ValidationError(f"zeta_choice={zeta_choice} but only {found} admissible roots exist")


def count_zeta_choices(ctx: ZetaContext) -> int:
    """Number of admissible roots the zeta scan could pick in this context."""
    N = ctx.tn // ctx.stride
    j0 = _reference_exponent(ctx.t, ctx.n, ctx.stride)
    return sum(1 for _ in _zeta_candidates(ctx.ext_field, N, ctx.stride, j0, ctx.n, ctx.lam_ext))


# ----------------------------------------------------------------------
# Minimal polynomials and idempotents
# ----------------------------------------------------------------------

def _require(ctx: ZetaContext, coset: Coset) -> None:
    if coset not in ctx.system.cosets:
        raise ValidationError(f"coset with rep {coset.rep} is not in this context's system")
    if not ctx.realizes(coset):
        raise ValidationError(f"coset with rep {coset.rep} is outside the reduced context")


def _to_base(ctx: ZetaContext, coeffs: Sequence[int], what: str) -> P.Poly:
    try:
        return P.project(ctx.ext_field, ctx.q_field, coeffs)
    except DomainError as exc:
        raise ConsistencyError(f"{what}: {exc}") from exc


def min_poly(coset: Coset, ctx: ZetaContext) -> P.Poly:
    """prod_{j in coset} (x - zeta^j), read down into F_q."""
    _require(ctx, coset)
    X = ctx.ext_field
    acc: P.Poly = [1]
    for j in coset.members:
        acc = P.mul(X, acc, [X.neg(ctx.zeta_pow(j)), 1])
    return _to_base(ctx, acc, f"minimal polynomial of coset {coset.rep}")


def primitive_idempotent(coset: Coset, ctx: ZetaContext) -> P.Poly:
    """(1/n) sum_v sum_{h in coset} zeta^(-v h) x^v, as a polynomial over F_q."""
    _require(ctx, coset)
    X = ctx.ext_field
    coeffs = []
    for v in range(ctx.n):
        s = 0
        for h in coset.members:
            s = X.add(s, ctx.zeta_pow((-v * h) % ctx.tn))
        coeffs.append(X.mul(s, ctx.inv_n_ext))
    return P.trim(_to_base(ctx, coeffs, f"idempotent of coset {coset.rep}"))


def fine_idempotent(j: int, ctx: ZetaContext) -> P.Poly:
    """(1/n) sum_v zeta^(-v j) x^v over the extension field (j in S)."""
    alpha_of(j, ctx.t, ctx.n)
    X = ctx.ext_field
    return P.trim([X.mul(ctx.zeta_pow((-v * j) % ctx.tn), ctx.inv_n_ext) for v in range(ctx.n)])


# ----------------------------------------------------------------------
# Codes
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CodeSpec:
    context: ZetaContext
    components: tuple[int, ...]  # coset alphas, increasing

    @property
    def cosets(self) -> list[Coset]:
        return [self.context.system.by_alpha(a) for a in self.components]


def code_spec(ctx: ZetaContext, reps: Iterable[int] | str) -> CodeSpec:
    """CodeSpec from coset representatives (any member) or ``"all"``."""
    if isinstance(reps, str):
        if reps.strip().lower() != "all":
            raise ValidationError(f"component list must be integers or 'all', got {reps!r}")
        cosets = list(ctx.system.cosets)
    else:
        cosets = [coset_of(r, ctx.system) for r in reps]
    alphas = sorted({c.alpha for c in cosets})
    for c in cosets:
        if not ctx.realizes(c):
            raise ValidationError(f"coset with rep {c.rep} is outside the reduced context")
    return CodeSpec(ctx, tuple(alphas))


@dataclass(frozen=True, eq=False)
class Code:
    spec: CodeSpec
    generator: tuple[int, ...]
    check: tuple[int, ...]
    generator_matrix: np.ndarray = field(repr=False)

    @property
    def context(self) -> ZetaContext:
        return self.spec.context

    @property
    def field(self) -> FieldTable:
        return self.spec.context.q_field

    @property
    def n(self) -> int:
        return self.spec.context.n

    @property
    def q(self) -> int:
        return self.spec.context.q

    @property
    def dimension(self) -> int:
        return self.generator_matrix.shape[0]

    k = dimension

    @property
    def size(self) -> int:
        return self.q**self.dimension

    @cached_property
    def systematic(self) -> tuple[np.ndarray, tuple[int, ...]]:
        """Reduced row echelon form of the generator matrix and its pivots."""
        return row_echelon(self.field, self.generator_matrix)


def build_code(spec: CodeSpec) -> Code:
    """Generator/check polynomials and generator matrix of the selected code."""
    if not spec.components:
        raise ValidationError("empty component list: the zero code has no nonzero codewords")
    ctx = spec.context
    F = ctx.q_field
    check: P.Poly = [1]
    for c in spec.cosets:
        check = P.mul(F, check, min_poly(c, ctx))
    gen, rem = P.divmod_(F, P.x_n_minus(F, ctx.n, ctx.lam), check)
    if rem:
        raise ConsistencyError("check polynomial does not divide x^n - lambda")
    k = len(check) - 1
    rows = np.zeros((k, ctx.n), dtype=np.int64)
    for j in range(k):
        rows[j, j : j + len(gen)] = gen
    rows.setflags(write=False)
    return Code(spec, tuple(gen), tuple(check), rows)


def row_echelon(F: FieldTable, mat: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over F (rows of zeros dropped) and pivot columns."""
    A = [list(map(int, row)) for row in mat]
    rows, cols = len(A), (len(A[0]) if A else 0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    out = np.array(A[:r], dtype=np.int64).reshape(r, cols)
    return out, tuple(pivots)


def rank(F: FieldTable, mat: np.ndarray) -> int:
    return len(row_echelon(F, mat)[1])


def idempotent_rows(code: Code) -> np.ndarray:
    """The n shifts x^j * eps mod (x^n - lambda), eps = sum of the selected
    primitive idempotents; their row space is the code."""
    ctx = code.context
    F = ctx.q_field
    eps: P.Poly = []
    for c in code.spec.cosets:
        eps = P.add(F, eps, primitive_idempotent(c, ctx))
    rows = np.zeros((ctx.n, ctx.n), dtype=np.int64)
    cur = P.pad(eps, ctx.n)
    for j in range(ctx.n):
        rows[j] = cur
        cur = list(consta_shift(np.array(cur, dtype=np.int64), ctx))
    return rows


# ----------------------------------------------------------------------
# Group actions on vectors
# ----------------------------------------------------------------------

def consta_shift(c: np.ndarray, ctx: ZetaContext, power: int = 1) -> np.ndarray:
    """rho^power(c) = (lam c_{n-1}, c_0, ..., c_{n-2}) iterated; works row-wise."""
    c = np.asarray(c, dtype=np.int64)
    if c.shape[-1] != ctx.n:
        raise ValidationError(f"vector length {c.shape[-1]} != n = {ctx.n}")
    F = ctx.q_field
    power %= ctx.tn
    wraps, r = divmod(power, ctx.n)
    out = np.roll(c, r, axis=-1)
    mul = F.mul_array
    if wraps:
        out = mul[F.pow(ctx.lam, wraps), out]
    if r:
        out[..., :r] = mul[ctx.lam, out[..., :r]]
    return out


def scalar_mul(b: int, c: np.ndarray, field: FieldTable) -> np.ndarray:
    """sigma_b(c): coordinatewise multiplication by a nonzero scalar."""
    if b == 0:
        raise ValidationError("scalar must be nonzero")
    field.check(b)
    return field.mul_array[b, np.asarray(c, dtype=np.int64)]


# ----------------------------------------------------------------------
# Enumeration and weights
# ----------------------------------------------------------------------

_BLOCK_DIGITS_MAX_ROWS = 1 << 12


def _check_enum_cap(code: Code, cap: int) -> None:
    if code.size > cap:
        raise ResourceError(f"q^k = {code.q}^{code.dimension} = {code.size} codewords exceeds enumeration cap {cap}")


def _split(code: Code) -> int:
    """Number of low message digits enumerated as one precomputed block."""
    q, k = code.q, code.dimension
    low = 0
    while low < k and q ** (low + 1) <= _BLOCK_DIGITS_MAX_ROWS:
        low += 1
    return low


def _low_block(code: Code, low: int) -> np.ndarray:
    F = code.field
    add, mul = F.add_array, F.mul_array
    G = code.generator_matrix
    block = np.zeros((1, code.n), dtype=np.int64)
    for j in range(low):
        block = np.concatenate([add[block, mul[a, G[j]][None, :]] for a in range(code.q)])
    return block


def prefix_count(code: Code) -> int:
    """Number of high-digit prefixes; partitions are ranges of these."""
    return code.q ** (code.dimension - _split(code))


def iter_codeword_blocks(
    code: Code, start: int = 0, stop: int | None = None, *, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[np.ndarray]:
    """Yield codewords in message order, one block per high-digit prefix.

    Message index ``i = sum_j m_j q^j`` (digit 0 fastest) maps to
    ``sum_j m_j * row_j``.  Within a block the low digits run over a table
    built once; between blocks the high-digit odometer advances by adding
    one scaled row per digit change.
    """
    _check_enum_cap(code, cap)
    F = code.field
    q, k = code.q, code.dimension
    low = _split(code)
    total = q ** (k - low)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    block = _low_block(code, low)
    add = F.add_array
    G = code.generator_matrix
    high_rows = G[low:]
    digits = [(start // q**j) % q for j in range(k - low)]
    base = np.zeros(code.n, dtype=np.int64)
    for j, dgt in enumerate(digits):
        if dgt:
            base = add[base, F.mul_array[dgt, high_rows[j]]]
    for _ in range(start, stop):
        yield add[base[None, :], block]
        for j in range(k - low):
            old = digits[j]
            new = (old + 1) % q
            digits[j] = new
            base = add[base, F.mul_array[F.sub(new, old), high_rows[j]]]
            if new:
                break


def enumerate_codewords(
    code: Code, start: int = 0, stop: int | None = None, *, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[np.ndarray]:
    """Yield all q^k codewords one at a time in message order.

    ``start``/``stop`` select a range of high-digit prefixes
    (see :func:`prefix_count`); disjoint ranges partition the code.
    """
    for block in iter_codeword_blocks(code, start, stop, cap=cap):
        yield from block


def codeword_array(code: Code, *, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """All codewords as a (q^k, n) array; row i is the codeword of message i."""
    blocks = list(iter_codeword_blocks(code, cap=cap))
    return np.concatenate(blocks) if blocks else np.zeros((0, code.n), dtype=np.int64)


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.counts) if a and i > 0]

    @property
    def distinct_nonzero(self) -> int:
        return len(self.support)

    def as_dict(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.counts) if a}

    def __str__(self) -> str:
        parts = []
        for i, a in self.as_dict().items():
            parts.append(str(a) if i == 0 else f"{a}x^{i}")
        return " + ".join(parts)


def _count_range(code: Code, start: int, stop: int, cap: int) -> np.ndarray:
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for block in iter_codeword_blocks(code, start, stop, cap=cap):
        counts += np.bincount((block != 0).sum(axis=1), minlength=code.n + 1)
    return counts


def weight_distribution(
    code: Code,
    *,
    partitions: int = 1,
    executor: Executor | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> WeightDistribution:
    """Exact weight distribution A_0..A_n.

    The prefix range is cut into ``partitions`` contiguous pieces whose count
    vectors are summed; pass an ``executor`` to evaluate pieces concurrently.
    """
    _check_enum_cap(code, cap)
    total = prefix_count(code)
    parts = max(1, min(partitions, total))
    bounds = [total * i // parts for i in range(parts + 1)]
    ranges = list(zip(bounds[:-1], bounds[1:]))
    if executor is None:
        pieces = [_count_range(code, a, b, cap) for a, b in ranges]
    else:
        futures = [executor.submit(_count_range, code, a, b, cap) for a, b in ranges]
        pieces = [f.result() for f in futures]
    counts = sum(pieces, np.zeros(code.n + 1, dtype=np.int64))
    return WeightDistribution(tuple(int(a) for a in counts))


def weight_distribution_of(words: np.ndarray, n: int) -> WeightDistribution:
    counts = np.bincount((np.asarray(words) != 0).sum(axis=1), minlength=n + 1)
    return WeightDistribution(tuple(int(a) for a in counts))
