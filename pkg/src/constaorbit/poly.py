"""Dense univariate polynomials over a :class:`~constaorbit.gf.FieldTable`.

A polynomial is a list of field-element ints, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError
from .gf import FieldTable, project_to_subfield, subfield_embed

Poly = list[int]


def trim(a: Sequence[int]) -> Poly:
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(a: Sequence[int]) -> int:
    return len(trim(a)) - 1


def add(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> Poly:
    return add(F, a, [F.neg(c) for c in b])


def scale(F: FieldTable, a: Sequence[int], c: int) -> Poly:
    return trim([F.mul(x, c) for x in a])


def mul(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise DomainError("polynomial division by zero")
    rem = trim(a)
    if len(rem) < len(b):
        return [], rem
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(rem) - len(b) + 1)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = F.mul(rem[-1], inv_lead)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(c, y))
        rem = trim(rem)
    return trim(quot), rem


def x_n_minus(F: FieldTable, n: int, lam: int) -> Poly:
    """x^n - lam."""
    out = [0] * (n + 1)
    out[0] = F.neg(lam)
    out[n] = 1
    return trim(out)


def reduce_consta(F: FieldTable, a: Sequence[int], n: int, lam: int) -> Poly:
    """Reduce modulo x^n - lam using x^n = lam (no division needed)."""
    out = [0] * n
    for i, c in enumerate(a):
        if c == 0:
            continue
        wraps, j = divmod(i, n)
        out[j] = F.add(out[j], F.mul(c, F.pow(lam, wraps)))
    return trim(out)


def mulmod_consta(F: FieldTable, a: Sequence[int], b: Sequence[int], n: int, lam: int) -> Poly:
    return reduce_consta(F, mul(F, a, b), n, lam)


def evaluate(F: FieldTable, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pad(a: Sequence[int], n: int) -> list[int]:
    a = list(a)
    return a + [0] * (n - len(a))


def embed(sub_f: FieldTable, sup_f: FieldTable, a: Sequence[int]) -> Poly:
    return [subfield_embed(sub_f, sup_f, c) for c in a]


def project(sup_f: FieldTable, sub_f: FieldTable, a: Sequence[int]) -> Poly:
    return [project_to_subfield(sup_f, sub_f, c) for c in a]


def monic(F: FieldTable, a: Sequence[int]) -> Poly:
    a = trim(a)
    return scale(F, a, F.inv(a[-1])) if a else []


def ext_gcd(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g, g monic (or [] when both are zero)."""
    r0, r1 = trim(a), trim(b)
    u0, u1, v0, v1 = [1], [], [], [1]
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(F, u0, mul(F, qt, u1))
        v0, v1 = v1, sub(F, v0, mul(F, qt, v1))
    if not r0:
        return [], u0, v0
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, u0, c), scale(F, v0, c)


def gcd(F: FieldTable, a: Sequence[int], b: Sequence[int]) -> Poly:
    return ext_gcd(F, a, b)[0]
