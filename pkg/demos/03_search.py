"""Scan every small code of one length for weight/orbit tightness.

The search enumerates component subsets with at most ``max_components``
cosets, computes the formula bounds and the weight enumerator, and prints
those where the number of nonzero weights equals the <rho> bound.
"""

from constaorbit.cli import search

hits = 0
for doc in search(3, 1, 65, 2, max_components=2, enum_cap=3**6, with_oracle=True):
    code, tight = doc["code"], doc["tightness"]
    reps = [c["rep"] for c in code["components"]]
    if tight["tight_rho"]:
        hits += 1
        print(f"reps={reps!s:<12} k={code['k']:<3} weights={doc['weights']['distribution']}")
print(f"\n{hits} tight codes")
