"""Orbit counts of <rho> and <rho, M> on the nonzero codewords.

Closed forms are evaluated in exact integer arithmetic and every division is
checked.  :func:`burnside_oracle` counts the same orbits by brute force so the
closed forms can be checked instance by instance.

Two counts exist for <rho, M>.  :func:`n_rho_m_cell` / :func:`n_rho_m_total`
are the closed forms as usually stated, which treat the condition
``rho^z(c) = xi^r c`` one component at a time.  For cells with two or more
components the shift ``z`` has to be shared, so that form can
overcount (q=5, n=4, lambda=1, cosets {1},{3}: formula 6, true count 4).
:func:`n_rho_m_cell_shared` / :func:`n_rho_m_total_shared` use the shared
shift and agree with the oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterator, Sequence

import numpy as np

from .constacode import Code, WeightDistribution, codeword_array, consta_shift, scalar_mul, weight_distribution_of
from .errors import ConsistencyError, ResourceError, ValidationError
from .unionfind import UnionFind

DEFAULT_ORACLE_CAP = 1 << 18


@dataclass(frozen=True)
class ComponentParams:
    alpha: int
    d: int
    t: int

    @property
    def rep(self) -> int:
        return 1 + self.t * self.alpha


def component_params(code: Code) -> list[ComponentParams]:
    t = code.context.t
    return [ComponentParams(c.alpha, c.size, t) for c in code.spec.cosets]


def _exact(num: int, den: int, what: str) -> int:
    quot, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"{what}: {num}/{den} is not an integer")
    return quot


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _nonempty(components: Sequence[ComponentParams]) -> None:
    if not components:
        raise ValidationError("need at least one component (the zero code has no nonzero words)")


def subsets(components: Sequence[ComponentParams]) -> Iterator[tuple[ComponentParams, ...]]:
    """Nonempty subsets in increasing bitmask order."""
    for mask in range(1, 1 << len(components)):
        yield tuple(c for i, c in enumerate(components) if mask >> i & 1)


# ----------------------------------------------------------------------
# <rho>
# ----------------------------------------------------------------------

def n_rho_irreducible(q: int, k: int, t: int, alpha: int, n: int) -> int:
    return _exact((q**k - 1) * gcd(1 + t * alpha, n), t * n, "N_<rho> of an irreducible code")


def n_rho_cell(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    """<rho>-orbits on words whose projection to every listed component is nonzero."""
    _nonempty(components)
    prod = 1
    for c in components:
        prod *= q**c.d - 1
    g = reduce(gcd, (c.rep for c in components), n)
    return _exact(prod * g, t * n, "N_<rho> of a cell")


def n_rho_total(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    _nonempty(components)
    return sum(n_rho_cell(s, q, t, n) for s in subsets(components))


# ----------------------------------------------------------------------
# <rho, M>, per-component closed forms
# ----------------------------------------------------------------------

def n_rho_m_irreducible(q: int, k: int, t: int, alpha: int, n: int) -> int:
    return _exact(
        (q**k - 1) * gcd((q - 1) * (1 + t * alpha), t * n),
        (q - 1) * t * n,
        "N_<rho,M> of an irreducible code",
    )


def _delta_numerator(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    tn = t * n
    return reduce(gcd, (tn // gcd(c.rep, n) for c in components), q - 1)


def n_rho_m_cell(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    _nonempty(components)
    prod = 1
    for c in components:
        prod *= q**c.d - 1
    g = reduce(gcd, (c.rep for c in components), n)
    return _exact(prod * g * _delta_numerator(components, q, t, n), (q - 1) * t * n, "N_<rho,M> of a cell")


def n_rho_m_total(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    _nonempty(components)
    return sum(n_rho_m_cell(s, q, t, n) for s in subsets(components))


def delta_factor(components: Sequence[ComponentParams], q: int, t: int, n: int) -> Fraction:
    """Ratio n_rho_m_cell / n_rho_cell for one subset; lies in (0, 1]."""
    _nonempty(components)
    return Fraction(_delta_numerator(components, q, t, n), q - 1)


def divisibility_condition(components: Sequence[ComponentParams], q: int, t: int, n: int) -> tuple[list[bool], bool]:
    """Per-subset test of ((q-1)/t) * lcm(gcd(n, rep_i)) | n, and the conjunction."""
    _nonempty(components)
    verdicts = []
    for s in subsets(components):
        L = reduce(_lcm, (gcd(n, c.rep) for c in s), 1)
        verdicts.append(n % ((q - 1) // t * L) == 0)
    return verdicts, all(verdicts)


# ----------------------------------------------------------------------
# <rho, M> with a shared shift
# ----------------------------------------------------------------------

def _scalar_fixing_count(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    """#{r in 1..q-1 : some z has rho^z c = xi^r c on every word of the cell}.

    In exponents of zeta: need z*rep_i equal for all i (mod tn), and the
    common value must be a power of zeta lying in F_q^*.  The admissible z
    are the multiples of h = lcm_i tn/gcd(rep_i - rep_1, tn), so the values
    form the subgroup of order tn/gcd(h*rep_1, tn); its intersection with
    F_q^* has order gcd(q-1, that).
    """
    tn = t * n
    first = components[0].rep
    h = reduce(_lcm, (tn // gcd(c.rep - first, tn) for c in components), 1)
    return gcd(q - 1, tn // gcd(h * first, tn))


def n_rho_m_cell_shared(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    _nonempty(components)
    return _exact(
        n_rho_cell(components, q, t, n) * _scalar_fixing_count(components, q, t, n),
        q - 1,
        "shared-shift N_<rho,M> of a cell",
    )


def n_rho_m_total_shared(components: Sequence[ComponentParams], q: int, t: int, n: int) -> int:
    _nonempty(components)
    return sum(n_rho_m_cell_shared(s, q, t, n) for s in subsets(components))


# ----------------------------------------------------------------------
# Brute-force oracle
# ----------------------------------------------------------------------

class Variant(enum.Enum):
    RHO = "rho"
    RHO_M = "rho_m"


@dataclass
class OracleResult:
    variant: Variant
    orbits: int
    burnside: int
    group_order: int
    labels: np.ndarray = field(repr=False)  # per message index; -1 for the zero word


@dataclass
class CodewordIndex:
    """All codewords of a code plus lookup from vectors back to message index."""

    words: np.ndarray
    q: int
    pivots: tuple[int, ...]
    position: np.ndarray

    def index_of(self, vectors: np.ndarray) -> np.ndarray:
        vectors = np.asarray(vectors)
        weights = self.q ** np.arange(len(self.pivots), dtype=np.int64)
        idx = self.position[vectors[..., list(self.pivots)] @ weights]
        if not np.array_equal(self.words[idx], vectors):
            raise ConsistencyError("image vector is not a codeword")
        return idx


def index_codewords(code: Code, cap: int = DEFAULT_ORACLE_CAP) -> CodewordIndex:
    if code.size > cap:
        raise ResourceError(f"q^k = {code.size} codewords exceeds oracle cap {cap}")
    words = codeword_array(code, cap=cap)
    _, pivots = code.systematic
    weights = code.q ** np.arange(len(pivots), dtype=np.int64)
    keys = words[:, list(pivots)] @ weights
    position = np.empty(len(words), dtype=np.int64)
    position[keys] = np.arange(len(words))
    return CodewordIndex(words, code.q, pivots, position)


def action_permutations(code: Code, index: CodewordIndex) -> tuple[np.ndarray, np.ndarray]:
    """Index permutations induced by rho and by sigma_xi on the codewords."""
    ctx = code.context
    rho = index.index_of(consta_shift(index.words, ctx))
    sigma = index.index_of(scalar_mul(ctx.xi, index.words, ctx.q_field))
    return rho, sigma


def _burnside(generators: list[tuple[np.ndarray, int]], size: int) -> tuple[int, int]:
    """Average fixed-point count over the abstract product of cyclic groups.

    Each generator is (permutation, order); the group enumerated is the
    direct product, which acts through the permutation group, so Burnside's
    average over it still counts orbits.  The zero word (index 0) is excluded.
    """
    ident = np.arange(size)
    elements = [ident]
    for perm, order in generators:
        powers = [ident]
        for _ in range(order - 1):
            powers.append(perm[powers[-1]])
        elements = [pw[el] for el in elements for pw in powers]
    fixed = sum(int(np.count_nonzero(el[1:] == ident[1:])) for el in elements)
    return _exact(fixed, len(elements), "Burnside average"), len(elements)


def burnside_oracle(
    code: Code,
    variant: Variant | str = Variant.RHO,
    *,
    cap: int = DEFAULT_ORACLE_CAP,
    index: CodewordIndex | None = None,
    perms: tuple[np.ndarray, np.ndarray] | None = None,
) -> OracleResult:
    """Count orbits on C* by disjoint-set closure, cross-checked with Burnside."""
    variant = Variant(variant)
    if not code.spec.components:
        raise ValidationError("the zero code has no nonzero codewords")
    index = index or index_codewords(code, cap)
    rho, sigma = perms or action_permutations(code, index)
    size = len(index.words)
    uf = UnionFind(size)
    gens = [rho] if variant is Variant.RHO else [rho, sigma]
    for perm in gens:
        for i, j in enumerate(perm.tolist()):
            if i:
                uf.union(i, j)
    orbits = uf.components - 1  # zero word is its own class
    labels = uf.labels()
    labels[0] = -1

    ctx = code.context
    gen_orders = [(rho, ctx.tn)]
    if variant is Variant.RHO_M:
        gen_orders.append((sigma, ctx.q - 1))
    burnside, group_order = _burnside(gen_orders, size)
    if burnside != orbits:
        raise ConsistencyError(f"closure found {orbits} orbits but Burnside average is {burnside}")
    return OracleResult(variant, orbits, burnside, group_order, labels)


def weight_classes_single_orbit(words: np.ndarray, labels: np.ndarray) -> bool:
    """True iff every nonzero weight class lies inside one orbit."""
    weights = (words != 0).sum(axis=1)
    seen: dict[int, int] = {}
    for w, lab in zip(weights[1:].tolist(), labels[1:].tolist()):
        if seen.setdefault(w, lab) != lab:
            return False
    return True


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

def delsarte_upper_check(size: int, n: int, q: int, distinct_weights: int) -> bool:
    """|C| <= sum_{j <= theta} C(n, j) (q-1)^j."""
    return size <= delsarte_upper_bound(n, q, distinct_weights)


def delsarte_upper_bound(n: int, q: int, theta: int) -> int:
    return sum(comb(n, j) * (q - 1) ** j for j in range(min(theta, n) + 1))


@dataclass
class SubsetTerm:
    alphas: tuple[int, ...]
    reps: tuple[int, ...]
    n_rho: int
    n_rho_m: int
    n_rho_m_shared: int
    delta: Fraction
    divisible: bool


@dataclass
class OrbitReport:
    n_rho: int
    n_rho_m: int
    n_rho_m_shared: int
    distinct_weights: int
    weights: WeightDistribution
    tight_rho: bool
    tight_rho_m: bool
    delta_all_one: bool
    divisible_all: bool
    terms: list[SubsetTerm]
    delsarte_ok: bool
    oracle_rho: int | None = None
    oracle_rho_m: int | None = None
    classes_single_orbit_rho: bool | None = None
    classes_single_orbit_rho_m: bool | None = None

    @property
    def oracle_agrees(self) -> bool | None:
        if self.oracle_rho is None or self.oracle_rho_m is None:
            return None
        return self.oracle_rho == self.n_rho and self.oracle_rho_m == self.n_rho_m

    @property
    def tight_rho_true(self) -> bool | None:
        """distinct weights == true <rho>-orbit count (oracle needed)."""
        return None if self.oracle_rho is None else self.distinct_weights == self.oracle_rho

    @property
    def tight_rho_m_true(self) -> bool | None:
        return None if self.oracle_rho_m is None else self.distinct_weights == self.oracle_rho_m


def subset_terms(components: Sequence[ComponentParams], q: int, t: int, n: int) -> list[SubsetTerm]:
    verdicts, _ = divisibility_condition(components, q, t, n)
    out = []
    for s, ok in zip(subsets(components), verdicts):
        out.append(
            SubsetTerm(
                alphas=tuple(c.alpha for c in s),
                reps=tuple(c.rep for c in s),
                n_rho=n_rho_cell(s, q, t, n),
                n_rho_m=n_rho_m_cell(s, q, t, n),
                n_rho_m_shared=n_rho_m_cell_shared(s, q, t, n),
                delta=delta_factor(s, q, t, n),
                divisible=ok,
            )
        )
    return out


def tightness_report(
    code: Code,
    *,
    with_oracle: bool = True,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    enum_cap: int | None = None,
) -> OrbitReport:
    """Formula values, exact weights, and (optionally) oracle orbit counts."""
    comps = component_params(code)
    _nonempty(comps)
    ctx = code.context
    q, t, n = ctx.q, ctx.t, ctx.n
    terms = subset_terms(comps, q, t, n)
    n_rho = sum(x.n_rho for x in terms)
    n_rho_m = sum(x.n_rho_m for x in terms)
    n_rho_m_shared = sum(x.n_rho_m_shared for x in terms)

    if with_oracle:
        index = index_codewords(code, oracle_cap)
        words = index.words
    else:
        index = None
        words = codeword_array(code, **({} if enum_cap is None else {"cap": enum_cap}))
    wd = weight_distribution_of(words, n)
    distinct = wd.distinct_nonzero
    if wd.total != code.size or wd.counts[0] != 1:
        raise ConsistencyError(f"weight distribution totals {wd.total}, expected {code.size}")

    report = OrbitReport(
        n_rho=n_rho,
        n_rho_m=n_rho_m,
        n_rho_m_shared=n_rho_m_shared,
        distinct_weights=distinct,
        weights=wd,
        tight_rho=distinct == n_rho,
        tight_rho_m=distinct == n_rho_m,
        delta_all_one=all(x.delta == 1 for x in terms),
        divisible_all=all(x.divisible for x in terms),
        terms=terms,
        delsarte_ok=delsarte_upper_check(code.size, n, q, distinct),
    )
    if index is not None:
        perms = action_permutations(code, index)
        r = burnside_oracle(code, Variant.RHO, index=index, perms=perms)
        rm = burnside_oracle(code, Variant.RHO_M, index=index, perms=perms)
        report.oracle_rho = r.orbits
        report.oracle_rho_m = rm.orbits
        report.classes_single_orbit_rho = weight_classes_single_orbit(words, r.labels)
        report.classes_single_orbit_rho_m = weight_classes_single_orbit(words, rm.labels)
        # distinct == true orbit count  <=>  each weight class is one orbit
        if (distinct == r.orbits) != report.classes_single_orbit_rho:
            raise ConsistencyError("tightness criterion disagrees with weight-class/orbit test for <rho>")
        if (distinct == rm.orbits) != report.classes_single_orbit_rho_m:
            raise ConsistencyError("tightness criterion disagrees with weight-class/orbit test for <rho,M>")
    return report
