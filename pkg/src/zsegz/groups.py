"""Finite abelian groups given as products of cyclic groups.

A group is a vector of moduli ``[n_1, ..., n_d]`` representing
``Z/n_1 x ... x Z/n_d``; elements are tuples of residues.  Elements are
enumerated in a fixed lexicographic order, which every canonicalisation
and search routine in this package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Element = tuple[int, ...]


@dataclass(frozen=True)
class Group:
    """Product of cyclic groups Z/n_1 x ... x Z/n_d, written additively."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("group needs at least one modulus")
        for n in self.moduli:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"modulus must be a positive integer, got {n!r}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.moduli)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.moduli)

    def check(self, a: Element) -> None:
        if len(a) != len(self.moduli):
            raise ValueError(f"element {a} has wrong rank for moduli {self.moduli}")
        for r, n in zip(a, self.moduli):
            if not 0 <= r < n:
                raise ValueError(f"residue {r} out of range [0,{n}) in {a}")

    def reduce(self, a: Sequence[int]) -> Element:
        if len(a) != len(self.moduli):
            raise ValueError(f"element {tuple(a)} has wrong rank for moduli {self.moduli}")
        return tuple(r % n for r, n in zip(a, self.moduli))

    def add(self, a: Element, b: Element) -> Element:
        if len(a) != len(b) or len(a) != len(self.moduli):
            raise ValueError("dimension mismatch")
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        if len(a) != len(self.moduli):
            raise ValueError("dimension mismatch")
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def scalar_mul(self, k: int, a: Element) -> Element:
        if len(a) != len(self.moduli):
            raise ValueError("dimension mismatch")
        return tuple((k * x) % n for x, n in zip(a, self.moduli))

    def elements(self) -> Iterator[Element]:
        """All elements in lexicographic order (the canonical enumeration)."""

        def rec(prefix: tuple[int, ...], rest: tuple[int, ...]) -> Iterator[Element]:
            if not rest:
                yield prefix
                return
            for r in range(rest[0]):
                yield from rec(prefix + (r,), rest[1:])

        return rec((), self.moduli)

    def index(self, a: Element) -> int:
        """Position of ``a`` in the lexicographic enumeration."""
        idx = 0
        for r, n in zip(a, self.moduli):
            idx = idx * n + r
        return idx

    def element(self, idx: int) -> Element:
        """Inverse of :meth:`index`."""
        if not 0 <= idx < self.order:
            raise ValueError(f"element index {idx} out of range")
        out = []
        for n in reversed(self.moduli):
            out.append(idx % n)
            idx //= n
        return tuple(reversed(out))


def make_group(moduli: Iterable[int]) -> Group:
    """Build a group from a vector of moduli (each >= 1)."""
    return Group(tuple(int(n) for n in moduli))


def smallest_ell(n: int, floor: int = 4) -> int:
    """Least ``ell >= floor`` that does not divide ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ell = floor
    while n % ell == 0:
        ell += 1
    return ell


def smallest_ell_pair(n1: int, n2: int) -> int:
    """Least ``ell >= 4`` dividing neither ``n1`` nor ``n2`` (requires n1 | n2)."""
    if n1 < 1 or n2 < 1 or n2 % n1 != 0:
        raise ValueError(f"need n1 | n2, got n1={n1}, n2={n2}")
    ell = 4
    while n1 % ell == 0 or n2 % ell == 0:
        ell += 1
    return ell


def smallest_coprime_k(n: int) -> int:
    """Least ``k >= 3`` with gcd(n, k) = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 3
    while math.gcd(n, k) != 1:
        k += 1
    return k


def split_factor(n: int) -> tuple[int, int]:
    """Write ``n = p*m`` with ``p`` the largest prime factor of ``n``.

    Choosing the largest prime factor minimises ``m`` and therefore gives
    the tightest upper bounds that depend on the cofactor.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rest, p = n, 1
    d = 2
    while d * d <= rest:
        while rest % d == 0:
            p = d
            rest //= d
        d += 1
    if rest > 1:
        p = rest
    return p, n // p


def _units(n: int) -> list[int]:
    return [u for u in range(1, n + 1) if math.gcd(u, n) == 1] if n > 1 else [0]


def _gl2_matrices(n: int) -> list[tuple[int, int, int, int]]:
    """All invertible 2x2 matrices mod n, by closure from standard generators.

    Generators: the coordinate swap, both unit shears, and unit scalings of
    the first coordinate.  These generate the full invertible matrix group
    over Z/n.
    """
    if n == 1:
        return [(0, 0, 0, 0)]

    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return (
            (a * e + b * g) % n,
            (a * f + b * h) % n,
            (c * e + d * g) % n,
            (c * f + d * h) % n,
        )

    gens = [(0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)]
    gens += [(u, 0, 0, 1) for u in _units(n)]
    ident = (1, 0, 0, 1)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for A in frontier:
            for G in gens:
                B = mul(A, G)
                if B not in seen:
                    seen.add(B)
                    nxt.append(B)
        frontier = nxt
    return sorted(seen)


_FULL_LINEAR_MAX_MODULUS = 12


@lru_cache(maxsize=None)
def automorphism_index_maps(group: Group) -> tuple[tuple[int, ...], ...]:
    """Automorphisms of the group as permutations of element indices.

    For rank <= 2 with equal moduli n <= 12 this is the full group of
    invertible linear maps.  Otherwise a sound subgroup is used: unit
    scalings per coordinate composed with permutations of coordinates that
    share a modulus.  Every returned permutation fixes the identity, so any
    orbit computed from these maps is a genuine automorphism orbit (possibly
    coarser than the full one, never finer).
    """
    moduli = group.moduli
    n0 = moduli[0]
    equal = all(n == n0 for n in moduli)
    perms: set[tuple[int, ...]] = set()

    if equal and group.rank == 1:
        for u in _units(n0):
            perms.add(
                tuple(group.index(group.scalar_mul(u, e)) for e in group.elements())
            )
    elif equal and group.rank == 2 and n0 <= _FULL_LINEAR_MAX_MODULUS:
        elems = list(group.elements())
        for a, b, c, d in _gl2_matrices(n0):
            perm = tuple(
                group.index(((a * x + b * y) % n0, (c * x + d * y) % n0))
                for x, y in elems
            )
            perms.add(perm)
    else:
        # Monomial maps: x_i -> u_i * x_{sigma(i)} with sigma preserving moduli.
        import itertools

        r = group.rank
        elems = list(group.elements())
        for sigma in itertools.permutations(range(r)):
            if any(moduli[sigma[i]] != moduli[i] for i in range(r)):
                continue
            for units in itertools.product(*(_units(moduli[i]) for i in range(r))):
                perm = tuple(
                    group.index(
                        tuple(
                            (units[i] * e[sigma[i]]) % moduli[i] if moduli[i] > 1 else 0
                            for i in range(r)
                        )
                    )
                    for e in elems
                )
                perms.add(perm)

    return tuple(sorted(perms))
