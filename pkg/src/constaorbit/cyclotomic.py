"""q-cyclotomic cosets modulo tn inside S = {1 + t*i : i = 0..n-1}."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ValidationError


def mult_order(q: int, N: int) -> int:
    """Smallest m >= 1 with q^m = 1 (mod N)."""
    if N < 1:
        raise ValidationError(f"modulus must be positive, got {N}")
    if gcd(q, N) != 1:
        raise ValidationError(f"gcd({q}, {N}) != 1, multiplicative order undefined")
    if N == 1:
        return 1
    m, x = 1, q % N
    while x != 1:
        x = x * q % N
        m += 1
    return m


@dataclass(frozen=True)
class Coset:
    """One q-cyclotomic coset, labelled by its smallest alpha.

    ``rep`` is ``1 + t*alpha``.  ``members`` are the elements of S in the
    coset, written as ``1 + t*i`` with ``0 <= i < n`` (so values lie in
    1..tn and ``tn`` itself stands for the residue 0).
    """

    alpha: int
    rep: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CosetSystem:
    q: int
    n: int
    t: int
    cosets: tuple[Coset, ...]

    @property
    def tn(self) -> int:
        return self.t * self.n

    @property
    def s(self) -> int:
        return len(self.cosets) - 1

    @property
    def reps(self) -> list[int]:
        return [c.rep for c in self.cosets]

    def __len__(self) -> int:
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def by_alpha(self, alpha: int) -> Coset:
        for c in self.cosets:
            if c.alpha == alpha:
                return c
        raise ValidationError(f"no coset labelled alpha={alpha}")


def _check(q: int, n: int, t: int) -> None:
    if n < 1:
        raise ValidationError(f"length n must be >= 1, got {n}")
    if q < 2:
        raise ValidationError(f"q must be >= 2, got {q}")
    if gcd(n, q) != 1:
        raise ValidationError(f"gcd(n={n}, q={q}) != 1: repeated-root case unsupported")
    if t < 1 or (q - 1) % t:
        raise ValidationError(f"t={t} must divide q-1={q - 1}")


def cosets_in_S(q: int, n: int, t: int) -> CosetSystem:
    """Partition S into q-cyclotomic cosets mod tn, sorted by alpha."""
    _check(q, n, t)
    tn = t * n
    seen = [False] * n  # indexed by alpha
    cosets = []
    for alpha in range(n):
        if seen[alpha]:
            continue
        rep = 1 + t * alpha
        members = []
        x = rep % tn
        while True:
            a = ((x - 1) % tn) // t
            members.append(1 + t * a)
            seen[a] = True
            x = x * q % tn
            if x == rep % tn:
                break
        cosets.append(Coset(alpha, rep, tuple(sorted(members))))
    return CosetSystem(q, n, t, tuple(cosets))


def alpha_of(residue: int, t: int, n: int) -> int:
    """alpha with 1 + t*alpha = residue (mod tn); ValidationError if not in S."""
    tn = t * n
    r = residue % tn
    if (r - 1) % t:
        raise ValidationError(f"residue {r} (mod {tn}) is not in S = 1 + {t}Z")
    return ((r - 1) % tn) // t


def coset_of(rep: int, system: CosetSystem) -> Coset:
    """The coset containing ``rep`` (any member, taken mod tn)."""
    a = alpha_of(rep, system.t, system.n)
    member = 1 + system.t * a
    for c in system.cosets:
        if member in c.members:
            return c
    raise AssertionError(f"element {member} missing from the coset partition")
