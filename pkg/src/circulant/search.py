"""Search for circulant graphs of given order, degree and diameter.

Exhaustive mode enumerates connection sets up to the multiplier action
``S -> u*S`` (``gcd(u, n) = 1``), which maps a circulant to an isomorphic
one. A set containing a unit ``a`` has an image containing 1, so the
enumeration covers sets containing 1 plus sets with no units at all.
Elements are added in increasing order; a prefix is cut when multiplying
by the inverse of one of its units already gives a lexicographically
smaller prefix, since the completed set then cannot be the least one in
its orbit.

Candidates are checked with ball growth on Python ``int`` bitsets and the
final witness is re-checked by breadth-first search.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .cyclic import ConnectionSet, multiplier_image, normalize, units
from .metrics import verify_diameter_at_most


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, n: int, used: int, budget: int):
        super().__init__(f"search at n = {n} stopped after {used} evaluations (budget {budget})")
        self.n = n
        self.used = used
        self.budget = budget


def canonical_rep(s: ConnectionSet) -> ConnectionSet:
    """Lexicographically least set in the orbit of ``s`` under multipliers."""
    best = s
    for u in units(s.n):
        img = multiplier_image(s, u)
        if img.elements < best.elements:
            best = img
    return best


def lattice_ball(f: int, k: int) -> int:
    """Points of ``Z^f`` at L1 distance at most ``k`` from the origin."""
    return sum(2**i * math.comb(f, i) * math.comb(k, i) for i in range(min(f, k) + 1))


def order_upper_bound(d: int, k: int, directed: bool = False) -> int:
    """Largest order a circulant of degree ``d`` and diameter ``k`` could have.

    Every vertex is a sum of at most ``k`` generators, and in an abelian
    group the order of summation is irrelevant, so vertices are images of
    lattice points. Undirected: ``d // 2`` generator pairs, plus the
    involution ``n/2`` used at most once when ``d`` is odd.
    """
    if directed:
        return math.comb(d + k, k)
    f = d // 2
    if d % 2 == 0:
        return lattice_ball(f, k)
    return lattice_ball(f, k) + (lattice_ball(f, k - 1) if k >= 1 else 0)


def _within(n: int, gens: list[int], k: int) -> bool:
    """Ball of radius ``k`` around 0 is all of ``Z_n`` (bitset growth)."""
    mask = (1 << n) - 1
    ball = 1
    for _ in range(k):
        grown = ball
        for s in gens:
            grown |= ((ball << s) | (ball >> (n - s))) & mask
        if grown == mask:
            return True
        if grown == ball:
            return False
        ball = grown
    return ball == mask


def _full_set(n: int, picked: list[int], involution: bool, directed: bool) -> list[int]:
    if directed:
        return picked
    out = []
    for a in picked:
        out.append(a)
        out.append(n - a)
    if involution:
        out.append(n // 2)
    return out


class _Enumerator:
    def __init__(self, n: int, d: int, k: int, directed: bool, budget: int | None):
        self.n, self.d, self.k, self.directed, self.budget = n, d, k, directed, budget
        self.used = 0
        if directed:
            self.domain = list(range(1, n))
            self.size = d
            self.involution = False
        else:
            self.domain = list(range(1, (n - 1) // 2 + 1))
            self.size = d // 2
            self.involution = d % 2 == 1
        self.inverse = {a: pow(a, -1, n) for a in self.domain if math.gcd(a, n) == 1}

    def _key(self, x: int) -> int:
        x %= self.n
        return x if self.directed else min(x, self.n - x)

    def _smaller_image(self, prefix: list[int]) -> bool:
        for a in prefix:
            inv = self.inverse.get(a)
            if inv is None or a == 1:
                continue
            img = sorted(self._key(inv * x) for x in prefix)
            for p, q in zip(img, prefix):
                if p != q:
                    if p < q:
                        return True
                    break
        return False

    def _check(self, picked: list[int]) -> bool:
        self.used += 1
        if self.budget is not None and self.used > self.budget:
            raise SearchBudgetExceeded(self.n, self.used - 1, self.budget)
        return _within(self.n, _full_set(self.n, picked, self.involution, self.directed), self.k)

    def _extend(self, prefix: list[int], pool: list[int], start: int, canon: bool) -> list[int] | None:
        if len(prefix) == self.size:
            return prefix[:] if self._check(prefix) else None
        need = self.size - len(prefix)
        for i in range(start, len(pool) - need + 1):
            prefix.append(pool[i])
            if not (canon and self._smaller_image(prefix)):
                found = self._extend(prefix, pool, i + 1, canon)
                if found is not None:
                    return found
            prefix.pop()
        return None

    def run(self) -> list[int] | None:
        if self.size == 0:
            return [] if self._check([]) else None
        if 1 in self.domain:
            rest = [a for a in self.domain if a != 1]
            found = self._extend([1], rest, 0, True)
            if found is not None:
                return found
        non_units = [a for a in self.domain if a not in self.inverse]
        return self._extend([], non_units, 0, False)


def _shape_ok(n: int, d: int, directed: bool) -> bool:
    if n < 2 or d < 1 or d > n - 1:
        return False
    return directed or d % 2 == 0 or n % 2 == 0


def exists_graph(
    n: int, d: int, k: int, directed: bool = False, budget: int | None = None
) -> ConnectionSet | None:
    """A circulant of order ``n``, degree ``d`` and diameter at most ``k``, or ``None``.

    ``None`` is a definitive answer; running out of ``budget`` evaluations
    raises :class:`SearchBudgetExceeded` instead.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not _shape_ok(n, d, directed):
        return None
    if n > order_upper_bound(d, k, directed):
        return None
    en = _Enumerator(n, d, k, directed, budget)
    picked = en.run()
    if picked is None:
        return None
    g = normalize(n, _full_set(n, picked, en.involution, directed), directed=directed)
    if g.degree != d or not verify_diameter_at_most(g, k):
        raise AssertionError(f"search produced an invalid witness {g.elements} for n = {n}")
    return g


def _miss_count(n: int, gens: list[int], k: int) -> int:
    mask = (1 << n) - 1
    ball = 1
    for _ in range(k):
        grown = ball
        for s in gens:
            grown |= ((ball << s) | (ball >> (n - s))) & mask
        ball = grown
    return n - bin(ball).count("1")


def heuristic_graph(
    n: int, d: int, k: int, directed: bool = False, budget: int = 10_000, seed: int = 0
) -> ConnectionSet | None:
    """Steepest descent on the number of vertices farther than ``k`` from 0.

    Moves replace one generator; a local minimum triggers a random restart.
    ``budget`` counts evaluated sets, so a fixed seed gives the same result.
    ``None`` only means nothing was found.
    """
    if not _shape_ok(n, d, directed):
        return None
    rng = random.Random(seed)
    en = _Enumerator(n, d, k, directed, None)
    domain, size = en.domain, en.size
    if size > len(domain):
        return None
    used = 0

    def score(picked: list[int]) -> int:
        nonlocal used
        used += 1
        return _miss_count(n, _full_set(n, picked, en.involution, directed), k)

    while used < budget:
        cur = sorted(rng.sample(domain, size))
        cur_score = score(cur)
        while cur_score and used < budget:
            best, best_score = None, cur_score
            members = set(cur)
            for i in range(size):
                for x in domain:
                    if x in members:
                        continue
                    cand = sorted(cur[:i] + [x] + cur[i + 1 :])
                    sc = score(cand)
                    if sc < best_score:
                        best, best_score = cand, sc
                    if used >= budget:
                        break
                if used >= budget:
                    break
            if best is None:
                break
            cur, cur_score = best, best_score
        if cur_score == 0:
            g = normalize(n, _full_set(n, cur, en.involution, directed), directed=directed)
            if g.degree == d and verify_diameter_at_most(g, k):
                return g
    return None


@dataclass(frozen=True)
class SearchSpec:
    d: int
    k: int
    directed: bool = False
    mode: str = "exhaustive"
    n_range: tuple[int, int | None] = (1, None)
    budget: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        lo, hi = self.n_range
        if self.mode == "exhaustive" and hi is None:
            raise ValueError("exhaustive search needs a finite n range")
        if self.mode == "heuristic" and self.seed is None:
            raise ValueError("heuristic search needs a seed")
        if hi is not None and hi < lo:
            raise ValueError(f"empty range {lo}:{hi}")

    def candidates(self) -> Iterator[int]:
        """Orders to try, largest first, never above the abelian ball bound."""
        lo, hi = self.n_range
        cap = order_upper_bound(self.d, self.k, self.directed)
        top = cap if hi is None else min(hi, cap)
        for n in range(top, max(lo, 2) - 1, -1):
            if _shape_ok(n, self.d, self.directed):
                yield n


@dataclass
class SearchResult:
    n_best: int | None
    witness: ConnectionSet | None
    definitive: bool
    refuted: list[int] = field(default_factory=list)
    undecided: list[int] = field(default_factory=list)

    def __iter__(self):
        return iter((self.n_best, self.witness, self.definitive))

    def as_dict(self) -> dict:
        return {
            "n_best": self.n_best,
            "witness": list(self.witness.elements) if self.witness else None,
            "definitive": self.definitive,
            "refuted": self.refuted,
            "undecided": self.undecided,
        }


def _probe(args: tuple) -> tuple[int, str, tuple[int, ...] | None]:
    spec, n = args
    if spec.mode == "heuristic":
        g = heuristic_graph(n, spec.d, spec.k, spec.directed, spec.budget or 10_000, spec.seed + n)
        return n, ("found" if g else "undecided"), g.elements if g else None
    try:
        g = exists_graph(n, spec.d, spec.k, spec.directed, spec.budget)
    except SearchBudgetExceeded:
        return n, "undecided", None
    return n, ("found" if g else "absent"), g.elements if g else None


def find_max_order(spec: SearchSpec, jobs: int = 1, progress=None) -> SearchResult:
    """Largest order in ``spec.n_range`` with a witness, scanning downwards.

    ``definitive`` holds only if every larger order in the range was refuted
    exhaustively (orders above the ball bound count as refuted). With
    ``jobs > 1`` orders are probed in parallel batches; the merge keeps the
    largest order found.
    """
    result = SearchResult(None, None, False)
    order = list(spec.candidates())

    def absorb(n: int, status: str, elems) -> bool:
        if progress is not None:
            progress({"n": n, "status": status})
        if status == "found":
            result.n_best = n
            result.witness = ConnectionSet(n, elems, spec.directed)
            return True
        (result.refuted if status == "absent" else result.undecided).append(n)
        return False

    if jobs <= 1:
        for n in order:
            if absorb(*_probe((spec, n))):
                break
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i in range(0, len(order), jobs):
                batch = order[i : i + jobs]
                hits = []
                for n, status, elems in pool.map(_probe, [(spec, n) for n in batch]):
                    if status == "found":
                        hits.append((n, status, elems))
                    else:
                        absorb(n, status, elems)
                if hits:
                    absorb(*max(hits))
                    break
    above = [n for n in order if result.n_best is None or n > result.n_best]
    result.definitive = spec.mode == "exhaustive" and all(n in result.refuted for n in above)
    return result
