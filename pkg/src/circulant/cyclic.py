"""Exact arithmetic on cyclic groups and connection sets of circulant graphs.

A circulant graph Cay(Z_n, S) is fully described by its modulus and
connection set, so :class:`ConnectionSet` doubles as the graph type.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class ConnectionSet:
    """Connection set ``elements`` of a circulant graph on ``Z_n``.

    Elements are reduced residues in ``[1, n-1]``, strictly increasing.
    Undirected sets are closed under negation.
    """

    n: int
    elements: tuple[int, ...]
    directed: bool = False

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"modulus must be at least 2, got {self.n}")
        els = self.elements
        if not els:
            raise ValueError("connection set is empty")
        if any(not 1 <= e < self.n for e in els):
            raise ValueError(f"elements must lie in [1, {self.n - 1}]")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError("elements must be strictly increasing")
        if not self.directed:
            present = set(els)
            missing = [e for e in els if self.n - e not in present]
            if missing:
                raise ValueError(f"undirected set not closed under negation: {missing[:5]}")

    @property
    def order(self) -> int:
        return self.n

    @property
    def degree(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.n in self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def reduced(self) -> tuple[int, ...]:
        """Representatives ``e <= n/2`` of the ``±`` pairs (undirected only)."""
        if self.directed:
            return self.elements
        return tuple(e for e in self.elements if 2 * e <= self.n)

    def connected(self) -> bool:
        return reduce(math.gcd, self.elements, self.n) == 1

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "directed": self.directed, "generators": list(self.elements)})

    @classmethod
    def from_json(cls, line: str | dict) -> "ConnectionSet":
        """Parse one graph interchange object; invariants are enforced, not repaired."""
        obj = json.loads(line) if isinstance(line, str) else line
        try:
            n, directed, gens = obj["n"], obj["directed"], obj["generators"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"graph object missing field: {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool) or not isinstance(directed, bool):
            raise ValueError("graph object has mistyped fields")
        if not isinstance(gens, list) or not all(isinstance(g, int) and not isinstance(g, bool) for g in gens):
            raise ValueError("generators must be a list of integers")
        return cls(n, tuple(gens), directed)


CirculantGraph = ConnectionSet


def normalize(n: int, raw: Iterable[int], directed: bool = False) -> ConnectionSet:
    """Reduce ``raw`` modulo ``n``, drop zeros and duplicates, and sort.

    For undirected sets the closure under negation is added.
    """
    if n < 2:
        raise ValueError(f"modulus must be at least 2, got {n}")
    elems = {x % n for x in raw}
    elems.discard(0)
    if not directed:
        elems |= {n - e for e in elems}
    if not elems:
        raise ValueError("connection set reduces to the empty set")
    return ConnectionSet(n, tuple(sorted(elems)), directed)


def expand_reduced(n: int, reduced: Iterable[int], degree: int) -> ConnectionSet:
    """Expand reduced generators of an undirected graph to the full set.

    Odd ``degree`` forces the involution ``n/2`` into the set, as in
    published tables that list only one generator per ``±`` pair.
    """
    raw = list(reduced)
    if degree % 2:
        if n % 2:
            raise ValueError(f"odd degree {degree} needs an even modulus, got {n}")
        raw.append(n // 2)
    return normalize(n, raw, directed=False)


def pairwise_coprime(moduli: Sequence[int]) -> bool:
    return all(math.gcd(a, b) == 1 for a, b in combinations(moduli, 2))


@dataclass(frozen=True)
class ResidueVector:
    """Element of ``Z_{r_1} x ... x Z_{r_t}`` with pairwise coprime ``r_i``."""

    moduli: tuple[int, ...]
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.moduli) != len(self.coords):
            raise ValueError("moduli and coords differ in length")
        if any(r < 2 for r in self.moduli):
            raise ValueError("moduli must exceed 1")
        if not pairwise_coprime(self.moduli):
            raise ValueError(f"moduli {self.moduli} are not pairwise coprime")
        if any(not 0 <= c < r for c, r in zip(self.coords, self.moduli)):
            raise ValueError("coordinate out of range")

    @classmethod
    def of(cls, moduli: Sequence[int], coords: Sequence[int]) -> "ResidueVector":
        """Build from arbitrary integers, reducing each coordinate."""
        moduli = tuple(moduli)
        return cls(moduli, tuple(c % r for c, r in zip(coords, moduli)))


def crt_combine(v: ResidueVector) -> int:
    """The unique ``x`` in ``[0, prod r_i)`` congruent to every coordinate."""
    x, m = 0, 1
    for c, r in zip(v.coords, v.moduli):
        # x + m*t = c (mod r)
        t = (c - x) * pow(m, -1, r) % r
        x += m * t
        m *= r
    return x


def crt_split(x: int, moduli: Sequence[int]) -> ResidueVector:
    moduli = tuple(moduli)
    if not pairwise_coprime(moduli):
        raise ValueError(f"moduli {moduli} are not pairwise coprime")
    if not 0 <= x < math.prod(moduli):
        raise ValueError(f"{x} is outside [0, {math.prod(moduli)})")
    return ResidueVector(moduli, tuple(x % r for r in moduli))


def units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def multiplier_image(s: ConnectionSet, u: int) -> ConnectionSet:
    """Image of ``s`` under ``x -> u*x``; an isomorphism when ``gcd(u, n) = 1``."""
    if math.gcd(u, s.n) != 1:
        raise ValueError(f"multiplier {u} is not a unit mod {s.n}")
    return normalize(s.n, (u * e for e in s.elements), s.directed)


def symmetric_rep(x: int, n: int) -> int:
    """Representative of ``x mod n`` in the interval ``(-n/2, n/2]``."""
    x %= n
    return x - n if 2 * x > n else x
