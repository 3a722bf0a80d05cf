"""Parameter-space sweeps: every (q, n, lambda) on a grid and every component
subset below a codeword budget, with formulas checked against the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .constacode import Code, build_code, build_context, code_spec
from .cyclotomic import Coset, CosetSystem, cosets_in_S
from .gf import build_field, factorize
from .orbitcount import OrbitReport, tightness_report


def prime_power(q: int) -> tuple[int, int]:
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = f.items()
    return p, e


def lambda_specs(q: int) -> list[int | str]:
    """Every nonzero lambda: integers for prime q, ``g^a`` strings otherwise."""
    p, e = prime_power(q)
    if e == 1:
        return list(range(1, q))
    return [f"g^{a}" for a in range(q - 1)]


def grid(qs=(2, 3, 4, 5, 7), n_max: int = 30) -> Iterator[tuple[int, int, int, int | str]]:
    """(p, e, n, lambda_spec) for every simple-root instance on the grid."""
    for q in qs:
        p, e = prime_power(q)
        for n in range(1, n_max + 1):
            if gcd(n, q) != 1:
                continue
            for lam in lambda_specs(q):
                yield p, e, n, lam


def lambda_order(p: int, e: int, lam: int | str) -> int:
    from .constacode import parse_lambda

    F = build_field(p, e)
    return F.element_order(parse_lambda(F, lam))


def bounded_subsets(system: CosetSystem, budget: int, max_components: int | None = None) -> Iterator[tuple[Coset, ...]]:
    """Nonempty coset subsets with q^k <= budget, in lexicographic alpha order."""
    q = system.q
    cosets = system.cosets

    def walk(start: int, chosen: tuple[Coset, ...], size: int):
        if chosen:
            yield chosen
        if max_components is not None and len(chosen) >= max_components:
            return
        for j in range(start, len(cosets)):
            nxt = size * q ** cosets[j].size
            if nxt <= budget:
                yield from walk(j + 1, chosen + (cosets[j],), nxt)

    yield from walk(0, (), 1)


@dataclass
class SweepRecord:
    p: int
    e: int
    n: int
    lam: int | str
    t: int
    reps: tuple[int, ...]
    k: int
    code: Code
    report: OrbitReport

    @property
    def q(self) -> int:
        return self.p**self.e


def sweep(
    qs=(2, 3, 4, 5, 7),
    n_max: int = 30,
    budget: int = 1 << 14,
    *,
    with_oracle: bool = True,
    max_components: int | None = None,
) -> Iterator[SweepRecord]:
    """Analyze every bounded component subset of every grid instance.

    Each subset gets its own reduced context (smallest field holding its
    roots), so instances whose full splitting field is too large for the
    tables are still covered.
    """
    for p, e, n, lam in grid(qs, n_max):
        q = p**e
        t = lambda_order(p, e, lam)
        system = cosets_in_S(q, n, t)
        for subset in bounded_subsets(system, budget, max_components):
            reps = tuple(c.rep for c in subset)
            ctx = build_context(p, e, n, lam, components=reps, minimal_field=True)
            code = build_code(code_spec(ctx, reps))
            report = tightness_report(code, with_oracle=with_oracle)
            yield SweepRecord(p, e, n, lam, t, reps, code.dimension, code, report)
