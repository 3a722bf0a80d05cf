from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constaorbit.constacode import build_code, build_context, code_spec, codeword_array, consta_shift, scalar_mul
from constaorbit.errors import ConsistencyError, ResourceError, ValidationError
from constaorbit.orbitcount import (
    ComponentParams,
    Variant,
    burnside_oracle,
    component_params,
    delsarte_upper_bound,
    delsarte_upper_check,
    delta_factor,
    n_rho_cell,
    n_rho_irreducible,
    n_rho_m_cell,
    n_rho_m_cell_shared,
    n_rho_m_irreducible,
    n_rho_m_total,
    n_rho_m_total_shared,
    n_rho_total,
    divisibility_condition,
    subsets,
    tightness_report,
)
from constaorbit.unionfind import UnionFind


def _code(p, n, lam, reps, e=1):
    return build_code(code_spec(build_context(p, e, n, lam), reps))


def C(alpha, d, t):
    return ComponentParams(alpha, d, t)


EX2 = [C(32, 1, 2), C(2, 3, 2)]  # reps 65 and 5
EX4 = [C(45, 1, 2), C(3, 3, 2)]  # reps 91 and 7


# -- closed forms -----------------------------------------------------------------

@pytest.mark.parametrize("args,expected", [((5, 2, 2, 1, 18), 2), ((2, 3, 1, 0, 7), 1), ((7, 2, 3, 3, 32), 1)])
def test_n_rho_irreducible(args, expected):
    assert n_rho_irreducible(*args) == expected


def test_n_rho_irreducible_inexact():
    with pytest.raises(ConsistencyError):
        n_rho_irreducible(5, 1, 2, 1, 18)


def test_n_rho_cell_examples():
    assert n_rho_cell([C(1, 2, 2)], 5, 2, 18) == 2
    assert n_rho_cell(EX2, 3, 2, 65) == 2
    assert n_rho_cell(EX4, 3, 2, 91) == 2


def test_n_rho_total_examples():
    assert n_rho_total([C(1, 2, 2)], 5, 2, 18) == 2
    assert sorted(n_rho_cell(s, 3, 2, 65) for s in subsets(EX2)) == [1, 1, 2]
    assert n_rho_total(EX2, 3, 2, 65) == 4
    assert n_rho_total([C(0, 3, 1), C(2, 3, 1)], 2, 1, 7) == 9
    with pytest.raises(ValidationError):
        n_rho_total([], 5, 2, 18)


def test_n_rho_m_forms():
    assert n_rho_m_irreducible(7, 2, 3, 3, 32) == 1
    assert n_rho_m_irreducible(5, 2, 2, 1, 18) == 2
    assert n_rho_m_irreducible(2, 3, 1, 0, 7) == n_rho_irreducible(2, 3, 1, 0, 7)
    assert n_rho_m_cell(EX4, 3, 2, 91) == 2
    assert n_rho_m_cell([C(3, 2, 3)], 7, 3, 32) == n_rho_m_irreducible(7, 2, 3, 3, 32)
    assert n_rho_m_total([C(3, 2, 3)], 7, 3, 32) == 1
    assert n_rho_m_total(EX4, 3, 2, 91) == 4
    assert n_rho_m_total(EX2, 3, 2, 65) == 4


def test_delta_and_divisible():
    assert delta_factor([C(0, 3, 1), C(2, 3, 1)], 2, 1, 7) == 1
    assert delta_factor([C(3, 2, 3)], 7, 3, 32) == 1
    assert delta_factor(EX2, 3, 2, 65) == 1
    assert divisibility_condition(EX2, 3, 2, 65)[1]
    assert divisibility_condition(EX4, 3, 2, 91)[1]
    assert divisibility_condition([C(3, 2, 3)], 7, 3, 32) == ([True], True)
    # q=5, n=4, t=1: coset {0} (alpha 3) has gcd(4, 4) = 4, (4/1)*4 does not divide 4
    verdicts, overall = divisibility_condition([C(3, 1, 1)], 5, 1, 4)
    assert verdicts == [False] and not overall
    assert delta_factor([C(3, 1, 1)], 5, 1, 4) == Fraction(1, 4)


def test_divisibility_fails_for_repetition_part():
    code = _code(5, 4, 1, [4])  # coset {0}: x - 1 part, the repetition-like code
    rep = tightness_report(code)
    assert not rep.divisible_all
    assert rep.oracle_rho != rep.oracle_rho_m


def _all_subsets(system):
    comps = [ComponentParams(c.alpha, c.size, system.t) for c in system.cosets]
    return comps


@given(st.sampled_from([(5, 18, 2), (3, 65, 2), (7, 32, 3), (2, 21, 1), (4, 15, 3), (5, 24, 4), (7, 30, 6)]), st.data())
@settings(max_examples=80, deadline=None)
def test_cell_identities(qnt, data):
    from constaorbit.cyclotomic import cosets_in_S

    q, n, t = qnt
    comps = _all_subsets(cosets_in_S(q, n, t))
    chosen = data.draw(st.lists(st.sampled_from(comps), min_size=1, max_size=4, unique=True))
    rho = n_rho_cell(chosen, q, t, n)
    assert n_rho_m_cell(chosen, q, t, n) == delta_factor(chosen, q, t, n) * rho
    assert n_rho_m_cell_shared(chosen, q, t, n) <= n_rho_m_cell(chosen, q, t, n) <= rho
    if len(chosen) == 1:
        (c,) = chosen
        assert rho == n_rho_irreducible(q, c.d, t, c.alpha, n)
        assert n_rho_m_cell(chosen, q, t, n) == n_rho_m_irreducible(q, c.d, t, c.alpha, n)
        assert n_rho_m_cell_shared(chosen, q, t, n) == n_rho_m_cell(chosen, q, t, n)
    if q == 2:
        assert delta_factor(chosen, q, t, n) == 1
    verdicts, _ = divisibility_condition(chosen, q, t, n)
    assert verdicts == [delta_factor(s, q, t, n) == 1 for s in subsets(chosen)]


# -- oracle --------------------------------------------------------------------------

def test_union_find():
    uf = UnionFind(6)
    assert uf.union(0, 3) and uf.union(4, 3) and not uf.union(0, 4)
    assert uf.components == 4
    assert uf.labels().tolist() == [0, 1, 2, 0, 0, 5]


def _closure_orbits(code, with_m):
    """Orbit count by explicit BFS on codeword tuples (no indexing tricks)."""
    ctx = code.context
    words = codeword_array(code)
    unseen = {tuple(w) for w in words.tolist() if any(w)}
    orbits = 0
    while unseen:
        start = unseen.pop()
        orbits += 1
        stack = [np.array(start)]
        while stack:
            w = stack.pop()
            nbrs = [consta_shift(w, ctx)]
            if with_m:
                nbrs.append(scalar_mul(ctx.xi, w, code.field))
            for v in nbrs:
                key = tuple(v.tolist())
                if key in unseen:
                    unseen.remove(key)
                    stack.append(v)
    return orbits


@pytest.mark.parametrize(
    "p,n,lam,reps,rho,rho_m",
    [(5, 18, 4, [3], 2, 2), (3, 65, 2, [65, 5], 4, 4), (7, 32, 2, [10], 1, 1), (2, 7, 1, [1, 3], 9, 9), (5, 4, 1, [1, 3], 6, 4)],
)
def test_oracle_counts(p, n, lam, reps, rho, rho_m):
    code = _code(p, n, lam, reps)
    r = burnside_oracle(code, Variant.RHO)
    m = burnside_oracle(code, "rho_m")
    assert (r.orbits, m.orbits) == (rho, rho_m)
    assert r.burnside == r.orbits and m.burnside == m.orbits
    assert r.group_order == code.context.tn
    assert m.group_order == code.context.tn * (code.q - 1)
    assert _closure_orbits(code, False) == rho
    assert _closure_orbits(code, True) == rho_m


def test_oracle_cap():
    code = _code(3, 65, 2, [65, 5])
    with pytest.raises(ResourceError):
        burnside_oracle(code, cap=80)


def test_per_component_form_overcounts_shared_shift_cells():
    """Two components with different gcds: the per-component <rho,M> count
    exceeds the true orbit count; the shared-shift form matches it."""
    code = _code(5, 4, 1, [1, 3])
    comps = component_params(code)
    assert n_rho_m_total(comps, 5, 1, 4) == 6
    assert n_rho_m_total_shared(comps, 5, 1, 4) == 4
    assert burnside_oracle(code, Variant.RHO_M).orbits == 4


# -- reports ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "p,n,lam,reps,distinct,tight_rho,tight_rho_m",
    [(5, 18, 4, [3], 2, True, True), (7, 32, 2, [10], 1, True, True), (3, 91, 2, [91, 7], 4, True, True)],
)
def test_tightness_examples(p, n, lam, reps, distinct, tight_rho, tight_rho_m):
    rep = tightness_report(_code(p, n, lam, reps))
    assert rep.distinct_weights == distinct
    assert (rep.tight_rho, rep.tight_rho_m) == (tight_rho, tight_rho_m)
    assert rep.classes_single_orbit_rho == tight_rho
    assert rep.oracle_agrees
    assert rep.delsarte_ok


def test_tightness_without_oracle():
    rep = tightness_report(_code(2, 7, 1, [1, 3]), with_oracle=False)
    assert rep.oracle_rho is None and rep.oracle_agrees is None
    assert rep.distinct_weights == 3 and not rep.tight_rho


def test_delsarte():
    assert delsarte_upper_bound(18, 5, 2) == 1 + 72 + 2448  # C(18,2) * 4^2 = 2448
    assert delsarte_upper_check(25, 18, 5, 2)
    assert delsarte_upper_bound(7, 3, 7) == 3**7
    assert delsarte_upper_bound(32, 7, 1) == 193
    assert delsarte_upper_check(49, 32, 7, 1)
    assert not delsarte_upper_check(200, 32, 7, 1)
