"""A walk through one constacyclic code whose weight count meets the orbit bound.

Run with ``python3 demos/01_tight_code.py``.
"""

from constaorbit.constacode import build_code, build_context, code_spec
from constaorbit.cyclotomic import cosets_in_S
from constaorbit.orbitcount import tightness_report

# x^18 - 4 over F_5.  The constant 4 has order t = 2, so roots live in
# F_{5^6} as powers zeta^(1+2a) of a primitive 36th root of unity.
ctx = build_context(5, 1, 18, 4)
print(f"q={ctx.q} n={ctx.n} lambda={ctx.lam} t={ctx.t} extension degree m={ctx.m}")

print("\nq-cyclotomic cosets inside S = {1 + 2a}:")
for c in cosets_in_S(5, 18, 2):
    print(f"  alpha={c.alpha:<3} members={sorted(c.members)}")

# Take the two-element coset {3, 15} as the only nonzero component.
code = build_code(code_spec(ctx, [3]))
print(f"\ncode: [n={code.n}, k={code.dimension}], {code.size} codewords")
print(f"generator g(x) coefficients (low to high): {list(code.generator)}")

rep = tightness_report(code)
print(f"\nweight enumerator: {rep.weights}")
print(f"nonzero weights: {rep.distinct_weights}")
print(f"<rho> orbit bound: {rep.n_rho} (brute force: {rep.oracle_rho})")
print(f"<rho,M> orbit bound: {rep.n_rho_m} (brute force: {rep.oracle_rho_m})")
print(f"tight for <rho>: {rep.tight_rho}")
