"""Exact algebraic identity checks for a coset system and for single codes.

System level: cosets are grouped by ``g = gcd(rep, tn)``.  The roots of
x^n - lambda in group g are exactly the roots of order tn/g, so

    P_g = gcd(x^n - lambda, Phi_{tn/g})

over F_q, with no extension field and no choice of zeta.  The group
idempotent E_g comes from a Bezout identity.  Each group whose splitting
field fits the table cap is then materialized in a reduced context and its
minimal polynomials and primitive idempotents are checked against P_g and
E_g.  Groups beyond the cap are counted in ``skipped``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np

from . import poly as P
from .constacode import (
    Code,
    ZetaContext,
    build_context,
    consta_shift,
    idempotent_rows,
    min_poly,
    parse_lambda,
    primitive_idempotent,
    rank,
    scalar_mul,
)
from .cyclotomic import Coset, cosets_in_S, mult_order
from .gf import DEFAULT_FIELD_CAP, FieldTable, build_field


@lru_cache(maxsize=512)
def _cyclotomic_int(N: int) -> tuple[int, ...]:
    """Phi_N over Z, lowest degree first."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _int_exact_div(num, _cyclotomic_int(d))
    return tuple(num)


def _int_exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for s in range(len(out) - 1, -1, -1):
        c = a[s + len(b) - 1]  # b is monic
        out[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact division of cyclotomic polynomials")
    return out


def cyclotomic_poly(F: FieldTable, N: int) -> P.Poly:
    """Phi_N reduced into F (coefficients in the prime field)."""
    return P.trim([F.from_int(c) for c in _cyclotomic_int(N)])


def group_product(F: FieldTable, n: int, lam: int, t: int, g: int) -> P.Poly:
    return P.gcd(F, P.x_n_minus(F, n, lam), cyclotomic_poly(F, t * n // g))


def group_idempotent(F: FieldTable, n: int, lam: int, factor: P.Poly) -> P.Poly:
    """Idempotent equal to 1 on the roots of ``factor`` and 0 on the others."""
    modulus = P.x_n_minus(F, n, lam)
    cof, rem = P.divmod_(F, modulus, factor)
    if rem:
        raise ArithmeticError("factor does not divide x^n - lambda")
    one, u, _ = P.ext_gcd(F, cof, factor)
    if one != [1]:
        raise ArithmeticError("factor and cofactor are not coprime")
    return P.reduce_consta(F, P.mul(F, u, cof), n, lam)


@dataclass
class IdentityResult:
    q: int
    n: int
    t: int
    checks: dict[str, bool] = field(default_factory=dict)
    groups: int = 0
    skipped: list[int] = field(default_factory=list)  # g values not materialized
    skipped_cosets: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, value: bool) -> None:
        self.checks[name] = self.checks.get(name, True) and bool(value)


def check_system(p: int, e: int, n: int, lambda_spec, *, field_cap: int = DEFAULT_FIELD_CAP) -> IdentityResult:
    F = build_field(p, e)
    q = F.order
    lam = parse_lambda(F, lambda_spec)
    t = F.element_order(lam)
    system = cosets_in_S(q, n, t)
    tn = t * n
    res = IdentityResult(q, n, t)

    members = [x for c in system.cosets for x in c.members]
    res.record("partition", sum(c.size for c in system.cosets) == n
               and sorted(members) == [1 + t * a for a in range(n)])

    groups: dict[int, list[Coset]] = {}
    for c in system.cosets:
        groups.setdefault(gcd(c.rep, tn), []).append(c)
    res.groups = len(groups)

    modulus = P.x_n_minus(F, n, lam)
    prod: P.Poly = [1]
    total: P.Poly = []
    E: dict[int, P.Poly] = {}
    for g, cosets in sorted(groups.items()):
        Pg = group_product(F, n, lam, t, g)
        res.record("group_degree", P.degree(Pg) == sum(c.size for c in cosets))
        prod = P.mul(F, prod, Pg)
        E[g] = group_idempotent(F, n, lam, Pg)
        total = P.add(F, total, E[g])
        res.record("idempotent", P.mulmod_consta(F, E[g], E[g], n, lam) == E[g])

        if q ** mult_order(q, tn // g) > field_cap:
            res.skipped.append(g)
            res.skipped_cosets += len(cosets)
            continue
        ctx = build_context(p, e, n, lambda_spec, components=[c.rep for c in cosets], minimal_field=True)
        mp: P.Poly = [1]
        eps_sum: P.Poly = []
        eps = []
        for c in cosets:
            m = min_poly(c, ctx)
            res.record("min_poly_degree", P.degree(m) == c.size)
            mp = P.mul(F, mp, m)
            ei = primitive_idempotent(c, ctx)
            eps.append(ei)
            eps_sum = P.add(F, eps_sum, ei)
            res.record("idempotent", P.mulmod_consta(F, ei, ei, n, lam) == ei)
            res.record("orthogonal", P.mulmod_consta(F, ei, E[g], n, lam) == ei)
        for a, b in combinations(eps, 2):
            res.record("orthogonal", P.mulmod_consta(F, a, b, n, lam) == [])
        res.record("product", mp == Pg)
        res.record("idempotent_sum", eps_sum == E[g])

    res.record("product", prod == modulus)
    res.record("idempotent_sum", total == [1])
    for a, b in combinations(E.values(), 2):
        res.record("orthogonal", P.mulmod_consta(F, a, b, n, lam) == [])
    return res


def shift_times(words: np.ndarray, ctx: ZetaContext, times: int) -> np.ndarray:
    """rho applied ``times`` times one step at a time (no exponent reduction)."""
    for _ in range(times):
        words = consta_shift(words, ctx)
    return words


def shift_order(ctx: ZetaContext) -> int:
    """Order of rho on F_q^n: first return of the unit vectors."""
    basis = np.eye(ctx.n, dtype=np.int64)
    cur, order = consta_shift(basis, ctx), 1
    while not np.array_equal(cur, basis):
        cur = consta_shift(cur, ctx)
        order += 1
    return order


def check_code(code: Code, words: np.ndarray | None = None) -> dict[str, bool]:
    """Identities for one code: g*h = x^n - lambda, its idempotents, the
    idempotent-route row space, and the rho/sigma relations on codewords."""
    ctx = code.context
    F = code.field
    n, lam = ctx.n, ctx.lam
    out = {}
    out["generator_check"] = P.mul(F, code.generator, code.check) == P.x_n_minus(F, n, lam)
    eps = [primitive_idempotent(c, ctx) for c in code.spec.cosets]
    out["idempotent"] = all(P.mulmod_consta(F, e, e, n, lam) == e for e in eps)
    out["orthogonal"] = all(P.mulmod_consta(F, a, b, n, lam) == [] for a, b in combinations(eps, 2))
    both = np.concatenate([code.generator_matrix, idempotent_rows(code)])
    out["idempotent_route"] = rank(F, both) == code.dimension
    out["rho_exact_order"] = shift_order(ctx) == ctx.tn
    if words is not None:
        shifted = consta_shift(words, ctx)
        commute = True
        for b in range(1, code.q):
            commute &= np.array_equal(consta_shift(scalar_mul(b, words, F), ctx), scalar_mul(b, shifted, F))
        out["rho_sigma_commute"] = bool(commute)
        out["rho_tn_identity"] = bool(np.array_equal(shift_times(words, ctx, ctx.tn), words))
    return out
