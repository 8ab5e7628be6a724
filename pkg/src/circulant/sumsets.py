"""k-fold sumsets in Z_n and the smallest sets whose k-fold sumset is everything.

Sets are handled as Python ``int`` bitsets (bit ``x`` set iff ``x`` is in
the set), so adding a residue is a cyclic rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .cyclic import ConnectionSet
from .metrics import verify_diameter_at_most


def to_bits(A: Iterable[int], n: int) -> int:
    bits = 0
    for a in A:
        bits |= 1 << (a % n)
    return bits


def from_bits(bits: int) -> set[int]:
    out = set()
    i = 0
    while bits:
        if bits & 1:
            out.add(i)
        bits >>= 1
        i += 1
    return out


def _rotate(bits: int, s: int, n: int, mask: int) -> int:
    s %= n
    if not s:
        return bits
    return ((bits << s) | (bits >> (n - s))) & mask


def _add(x: int, y: int, n: int) -> int:
    """Bitset of ``X + Y``; loops over the sparser operand."""
    if bin(x).count("1") > bin(y).count("1"):
        x, y = y, x
    mask = (1 << n) - 1
    out = 0
    s = 0
    while x:
        if x & 1:
            out |= _rotate(y, s, n, mask)
            if out == mask:
                break
        x >>= 1
        s += 1
    return out


def _power_bits(a: int, k: int, n: int) -> int:
    if k == 1:
        return a
    half = _power_bits(a, k // 2, n)
    out = _add(half, half, n)
    if k % 2:
        out = _add(out, a, n)
    return out


def sumset_power(A: Iterable[int], k: int, n: int) -> set[int]:
    """``kA = A + ... + A`` (``k`` summands) in ``Z_n``, by repeated doubling."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 1:
        raise ValueError("n must be positive")
    a = to_bits(A, n)
    if not a:
        raise ValueError("A must be nonempty")
    return from_bits(_power_bits(a, k, n))


def covers(A: Iterable[int], k: int, n: int) -> bool:
    return len(sumset_power(A, k, n)) == n


def trivial_upper(n: int, k: int) -> float:
    """``k * n**(1/k)``: base-``ceil(n**(1/k))`` digits always cover."""
    return k * n ** (1 / k)


def ss_upper_from_graph(g: ConnectionSet, k: int, work_cap: int | None = None) -> int:
    """``|S ∪ {0}|`` for a directed circulant of diameter at most ``k``.

    A walk of length at most ``k`` from 0 is a sum of ``k`` terms from
    ``S ∪ {0}``, so the diameter bound is exactly the covering property.
    Both are checked.
    """
    if not g.directed:
        raise ValueError("expected a directed circulant")
    if not verify_diameter_at_most(g, k, work_cap=work_cap):
        raise ValueError(f"graph of order {g.n} has diameter above {k}")
    A = {0, *g.elements}
    if not covers(A, k, g.n):
        raise AssertionError("diameter check passed but S ∪ {0} does not cover")
    return len(A)


@dataclass(frozen=True)
class MinimumCover:
    n: int
    k: int
    size: int
    witness: tuple[int, ...]


def _lower_count(n: int) -> int:
    """Smallest ``m`` with ``m(m+1)/2 >= n``."""
    m = 1
    while m * (m + 1) // 2 < n:
        m += 1
    return m


def ss_exact(n: int, k: int = 2) -> MinimumCover:
    """Exact minimum ``|A|`` with ``2A = Z_n`` for ``n <= 64``, with a witness.

    Exhaustive branch and bound (see :mod:`circulant._cover_kernel`); only
    ``k = 2`` is supported.
    """
    if k != 2:
        raise NotImplementedError("exhaustive minima are implemented for k = 2 only")
    if not 1 <= n <= 64:
        raise ValueError("exhaustive minima need 1 <= n <= 64")
    if n <= 2:
        wit = tuple(range(n))
        return MinimumCover(n, k, n, wit)
    from ._cover_kernel import find_cover

    m = _lower_count(n)
    while True:
        wit = find_cover(n, m)
        if wit is not None:
            if not covers(wit, 2, n):
                raise AssertionError(f"search returned a non-covering set for n = {n}")
            return MinimumCover(n, k, len(wit), tuple(wit))
        m += 1


def ss_ratio(size: int, n: int, k: int) -> float:
    """``|A| / n**(1/k)``, the normalisation used to compare covering sets."""
    return size / math.pow(n, 1 / k)
