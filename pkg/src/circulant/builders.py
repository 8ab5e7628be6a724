"""Direct-product constructions of large circulant graphs.

The group is ``Z_{r_1} x ... x Z_{r_k} x Z_w`` (cyclic because the factor
orders are pairwise coprime). Generators pair lines along the ladder basis
``e_i``, ``o``, ``u`` in the radius coordinates with elements of a base set
``B`` in the ``Z_w`` coordinate. If the radii satisfy the ladder hypotheses
and ``B`` covers ``Z_w`` with exactly ``k`` distinct summands, every group
element is a sum of at most ``k`` generators, so the diameter is at most
``k`` without any search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count, islice, product
from typing import Iterator, Sequence

from .cyclic import ConnectionSet, ResidueVector, crt_combine, normalize
from .metrics import WorkCapExceeded, diameter
from .torus import LadderParams, Report, validate_ladder


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BaseSet:
    w: int
    B: tuple[int, ...]
    k: int
    directed: bool

    def __post_init__(self) -> None:
        if self.w < 1 or self.k < 1:
            raise ConstructionError("w and k must be positive")
        if len(self.B) != self.k + 2:
            raise ConstructionError(f"base set needs k+2 = {self.k + 2} elements, got {len(self.B)}")
        if len({b % self.w for b in self.B}) != len(self.B):
            raise ConstructionError(f"base set {self.B} has repeated residues mod {self.w}")
        if self.directed and self.B[0] % self.w != 0:
            raise ConstructionError("directed base set must be {0, b_2, ..., b_{k+2}} with 0 first")
        if not self.directed and any(b % self.w == 0 for b in self.B):
            raise ConstructionError("undirected base set must not contain 0")


def base_sums(b: BaseSet) -> set[int]:
    """All residues reachable as sums of exactly ``k`` distinct (signed) base elements."""
    w, k = b.w, b.k
    sums = set()
    for idx in combinations(range(len(b.B)), k):
        chosen = [b.B[i] for i in idx]
        if b.directed:
            sums.add(sum(chosen) % w)
            continue
        for signs in product((1, -1), repeat=k):
            terms = [s * c % w for s, c in zip(signs, chosen)]
            if any((terms[i] + terms[j]) % w == 0 for i, j in combinations(range(k), 2)):
                continue
            sums.add(sum(terms) % w)
    return sums


def check_base_cover(b: BaseSet) -> bool:
    return len(base_sums(b)) == b.w


@dataclass(frozen=True)
class ConstructionCertificate:
    ladder: Report
    base_cover: bool
    order: int
    degree: int
    degree_bound: int
    generator_count: int
    claimed_diameter: int
    directed: bool

    @property
    def valid(self) -> bool:
        return self.ladder.ok and self.base_cover and self.degree <= self.degree_bound

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "ladder_violations": list(self.ladder.violations),
            "base_cover": self.base_cover,
            "order": self.order,
            "degree": self.degree,
            "degree_bound": self.degree_bound,
            "generator_count": self.generator_count,
            "claimed_diameter": self.claimed_diameter,
            "directed": self.directed,
        }


def _as_ladder(ladder: LadderParams | Sequence[int]) -> LadderParams:
    if isinstance(ladder, LadderParams):
        return ladder
    return LadderParams.from_radii(ladder)


def _product_generators(base: BaseSet, ladder: LadderParams) -> list[tuple[tuple[int, ...], int]]:
    """Generator list as ``(radius coordinates, Z_w coordinate)`` pairs."""
    k, B = ladder.k, base.B
    o, u = ladder.vector("o"), ladder.vector("u")
    gens: list[tuple[tuple[int, ...], int]] = []
    signs = (1,) if base.directed else (1, -1)
    for i in range(1, k + 1):
        for x in range(ladder.r(i)):
            if base.directed and i == 1 and x == 0:
                continue
            vec = tuple(x if t == i else 0 for t in range(1, k + 1))
            for sg in signs:
                # e-lines are complete, so only the Z_w coordinate changes sign
                gens.append((vec, sg * B[i - 1]))
    for line, bound, b in ((o, ladder.c_o, B[k]), (u, ladder.c_u, B[k + 1])):
        for x in range(bound):
            vec = tuple(x * c for c in line)
            for sg in signs:
                gens.append((tuple(sg * c for c in vec), sg * b))
    return gens


def _build(w: int, B: Sequence[int], ladder, directed: bool) -> tuple[ConnectionSet, ConstructionCertificate]:
    lp = _as_ladder(ladder)
    base = BaseSet(w, tuple(B), lp.k, directed)
    report = validate_ladder(lp, w)
    if not report:
        raise ConstructionError("radii violate the ladder hypotheses: " + "; ".join(report.violations))
    if not check_base_cover(base):
        kind = "distinct elements" if directed else "distinct signed elements, no two inverse,"
        raise ConstructionError(f"B = {base.B} does not cover Z_{w} with exactly {lp.k} {kind}")
    moduli = lp.radii + (w,)
    n = math.prod(moduli)
    # idempotent basis: x = sum c_i * E_i mod n
    idem = [crt_combine(ResidueVector(moduli, tuple(int(t == i) for t in range(len(moduli))))) for i in range(len(moduli))]
    raw = []
    for vec, z in _product_generators(base, lp):
        raw.append((sum(c * e for c, e in zip(vec, idem)) + z * idem[-1]) % n)
    graph = normalize(n, raw, directed)
    total = sum(lp.radii) + lp.c_o + lp.c_u
    bound = total - 1 if directed else 2 * total
    cert = ConstructionCertificate(
        ladder=report,
        base_cover=True,
        order=n,
        degree=graph.degree,
        degree_bound=bound,
        generator_count=len(raw),
        claimed_diameter=lp.k,
        directed=directed,
    )
    return graph, cert


def build_undirected(w: int, B: Sequence[int], ladder: LadderParams | Sequence[int]):
    """Undirected product construction; degree at most ``2(sum r_i + c_o + c_u)``."""
    return _build(w, B, ladder, directed=False)


def build_directed(w: int, B: Sequence[int], ladder: LadderParams | Sequence[int]):
    """Directed product construction; ``B`` starts with 0; degree at most ``sum r_i + c_o + c_u - 1``."""
    return _build(w, B, ladder, directed=True)


def bfs_check(graph: ConnectionSet, k: int, work_cap: int | None = None) -> int | None:
    """BFS diameter when affordable, else ``None`` (the certificate stands alone)."""
    try:
        d = diameter(graph, work_cap=work_cap)
    except WorkCapExceeded:
        return None
    if d > k:
        raise AssertionError(f"certified graph of order {graph.n} has diameter {d} > {k}")
    return d


@dataclass(frozen=True)
class Congruence:
    modulus: int
    residues: tuple[int, ...]
    allowed: bool = True

    def holds(self, q: int) -> bool:
        return (q % self.modulus in self.residues) == self.allowed

    def __str__(self) -> str:
        rel = "≡" if self.allowed else "≢"
        return f"q {rel} {','.join(map(str, self.residues))} (mod {self.modulus})"


@dataclass(frozen=True)
class FamilySpec:
    """A parametric family: radii ``q - delta`` for ``delta`` in ``offsets``.

    ``degree = a*q + b`` for ``degree_formula = (a, b)``; the predicted order is
    ``coefficient * prod(d + shift)`` for ``order_formula = (coefficient, shifts)``.
    """

    name: str
    directed: bool
    k: int
    w: int
    B: tuple[int, ...]
    offsets: tuple[int, ...]
    congruences: tuple[Congruence, ...]
    q_min: int
    degree_formula: tuple[int, int]
    order_formula: tuple[Fraction, tuple[int, ...]]
    c_o_offset: int

    def radii(self, q: int) -> tuple[int, ...]:
        return tuple(q - delta for delta in self.offsets)

    def degree(self, q: int) -> int:
        a, b = self.degree_formula
        return a * q + b

    def q_violations(self, q: int) -> list[str]:
        bad = [str(c) for c in self.congruences if not c.holds(q)]
        if q < self.q_min:
            bad.insert(0, f"q >= {self.q_min}")
        return bad

    def valid_q(self, start: int | None = None) -> Iterator[int]:
        for q in count(max(self.q_min, start or 0)):
            if not self.q_violations(q):
                yield q

    def describe(self) -> dict:
        coef, shifts = self.order_formula
        return {
            "name": self.name,
            "directed": self.directed,
            "k": self.k,
            "w": self.w,
            "B": list(self.B),
            "offsets": list(self.offsets),
            "q_min": self.q_min,
            "congruences": [str(c) for c in self.congruences],
            "degree": f"{self.degree_formula[0]}q{self.degree_formula[1]:+d}",
            "order": f"{coef}" + "".join(f"(d{s:+d})" for s in shifts),
            "c_o": f"q{self.c_o_offset:+d}",
        }


def _c(modulus: int, *residues: int, allowed: bool = True) -> Congruence:
    return Congruence(modulus, residues, allowed)


def _not(modulus: int, *residues: int) -> Congruence:
    return Congruence(modulus, residues, False)


FAMILIES: dict[str, FamilySpec] = {
    f.name: f
    for f in [
        FamilySpec("undirected-k3-w57", False, 3, 57, (1, 2, 7, 8, 27), (0, 4, 6),
                   (_c(6, 5), _not(19, 0, 4, 6)), 17, (10, -12),
                   (Fraction(57, 1000), (12, -28, -48)), 4),
        FamilySpec("undirected-k3-w56", False, 3, 56, (1, 2, 7, 14, 15), (0, 2, 4),
                   (_c(6, 3, 5), _c(7, 1, 3, 5, 6)), 15, (10, -8),
                   (Fraction(7, 125), (8, -12, -32)), 2),
        FamilySpec("undirected-k4", False, 4, 150, (1, 7, 16, 26, 41, 61), (0, 6, 8, 12),
                   (_c(30, 19),), 49, (12, -40),
                   (Fraction(25, 3456), (40, -32, -56, -104)), 6),
        FamilySpec("undirected-k5", False, 5, 436, (1, 15, 43, 48, 77, 109, 152), (0, 4, 10, 12, 16),
                   (_c(6, 5), _not(5, 0, 1), _not(109, 0, 4, 10, 12, 16)), 77, (14, -68),
                   (Fraction(109, 134456), (68, 12, -72, -100, -156)), 8),
        FamilySpec("directed-k2", True, 2, 6, (0, 1, 2, 4), (0, 2),
                   (_c(6, 1),), 7, (4, -1),
                   (Fraction(3, 8), (1, -7)), 2),
        FamilySpec("directed-k3", True, 3, 9, (0, 1, 2, 3, 6), (0, 4, 6),
                   (_c(6, 5),), 17, (5, -7),
                   (Fraction(9, 125), (7, -13, -23)), 4),
        FamilySpec("directed-k4", True, 4, 13, (0, 1, 3, 5, 7, 8), (0, 2, 4, 6),
                   (_c(6, 5), _not(13, 0, 2, 4, 6)), 23, (6, -11),
                   (Fraction(13, 1296), (11, -1, -13, -25)), 2),
        FamilySpec("directed-k5", True, 5, 17, (0, 1, 2, 3, 4, 8, 13), (0, 4, 10, 12, 16),
                   (_c(6, 5), _not(5, 0, 1), _not(17, 0, 4, 10, 12, 16)), 77, (7, -35),
                   (Fraction(17, 16807), (35, 7, -35, -49, -77)), 8),
        FamilySpec("directed-k6", True, 6, 24, (0, 1, 2, 4, 8, 13, 18, 22), (0, 6, 12, 18, 24, 30),
                   (_c(6, 1, 5), _not(5, 0, 4)), 181, (8, -85),
                   (Fraction(3, 32768), (85, 37, -11, -59, -107, -155)), 6),
        FamilySpec("directed-k7", True, 7, 30, (0, 1, 2, 6, 9, 12, 16, 17, 18), (0, 2, 6, 18, 20, 30, 42),
                   (_c(6, 1), _c(5, 4), _not(7, 0, 2, 6), _not(11, 9)), 529, (9, -77),
                   (Fraction(10, 1594323), (77, 59, 23, -85, -103, -193, -301)), 42),
        FamilySpec("directed-k8", True, 8, 36, (0, 1, 2, 3, 6, 12, 19, 20, 27, 33), (0, 6, 12, 18, 24, 30, 36, 42),
                   (_c(6, 1, 5), _c(5, 3), _not(7, 0, 1)), 353, (10, -163),
                   (Fraction(9, 25000000), (163, 103, 43, -17, -77, -137, -197, -257)), 6),
        FamilySpec("directed-k9", True, 9, 42, (0, 1, 2, 3, 4, 9, 16, 20, 26, 30, 37),
                   (0, 2, 6, 12, 20, 30, 42, 56, 72),
                   (_c(6, 1), _c(5, 3, 4), _c(7, 1, 3, 4), _not(11, 1, 6, 9), _not(13, 4, 7)), 1093, (11, -169),
                   (Fraction(42, 2357947691), (169, 147, 103, 37, -51, -161, -293, -447, -623)), 72),
    ]
}


def family_predicted_order(f: FamilySpec, d: int) -> int:
    coef, shifts = f.order_formula
    value = coef * math.prod(d + s for s in shifts)
    if value.denominator != 1:
        raise ConstructionError(f"{f.name}: order formula is not integral at d = {d}")
    return int(value)


def family_instantiate(f: FamilySpec | str, q: int) -> tuple[ConnectionSet, ConstructionCertificate]:
    if isinstance(f, str):
        f = FAMILIES[f]
    bad = f.q_violations(q)
    if bad:
        raise ConstructionError(f"{f.name}: q = {q} violates " + ", ".join(bad))
    build = build_directed if f.directed else build_undirected
    graph, cert = build(f.w, f.B, f.radii(q))
    d = f.degree(q)
    if cert.degree != d:
        raise AssertionError(f"{f.name}: built degree {cert.degree}, formula gives {d}")
    predicted = family_predicted_order(f, d)
    if predicted != cert.order:
        raise AssertionError(f"{f.name}: order {cert.order} differs from formula value {predicted}")
    return graph, cert


def first_valid_q(f: FamilySpec, how_many: int) -> list[int]:
    return list(islice(f.valid_q(), how_many))


def trivial_construction(r: int, k: int, directed: bool = False) -> ConnectionSet:
    """Balanced base-``r`` digits: ``Z_{r^k}`` with ``{h r^l : |h| <= r//2, l < k}``."""
    if r < 2 or k < 1:
        raise ValueError("need r >= 2 and k >= 1")
    n = r**k
    raw = [h * r**ell for ell in range(k) for h in range(-(r // 2), r // 2 + 1) if h]
    return normalize(n, raw, directed)
