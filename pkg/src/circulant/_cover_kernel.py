"""Compiled search for ``A ⊂ Z_n`` (``n <= 64``) of size ``m`` with ``A + A = Z_n``.

Sets and sumsets are single ``uint64`` words. Elements are added in
increasing order. A node is cut when the still-uncovered residues exceed
what the remaining ``r`` elements can add: each new element ``y`` brings at
most its own gain (new sums ``y + A`` and ``2y``), and pairs of new
elements at most ``r(r-1)/2`` more.

Symmetry: affine maps ``x -> (x - a) / (b - a)`` preserve covering, so if
some pair in ``A`` has a unit difference we may assume ``{0, 1} ⊂ A`` and
that ``A`` is lexicographically least among all such normalisations. A
sorted prefix that already has a smaller normal form can never extend to
the least one, so it is cut (checked only near the root, where it pays).
Sets without a unit difference are searched separately, with translation
as the only reduction.
"""

from __future__ import annotations

from math import gcd

import numba as nb
import numpy as np

CANON_DEPTH = 6


@nb.njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@nb.njit(cache=True)
def _rot(x, s, n, mask):
    if s == 0:
        return x
    return ((x << np.uint64(s)) | (x >> np.uint64(n - s))) & mask


@nb.njit(cache=True)
def _has_smaller_image(P, t, n, inv, img):
    for ia in range(t):
        a = P[ia]
        for ib in range(t):
            if ia == ib:
                continue
            iv = inv[(P[ib] - a) % n]
            if iv == 0:
                continue
            for j in range(t):
                img[j] = ((P[j] - a) * iv) % n
            img[:t].sort()
            for j in range(t):
                if img[j] != P[j]:
                    if img[j] < P[j]:
                        return True
                    break
    return False


@nb.njit(cache=True)
def _search(A, S, P, t, n, m, mask, gains, tops, suf, inv, img, unit_mode, allowed):
    if S == mask:
        return t
    r = m - t
    if r == 0:
        return 0
    u = n - _popcount(S)
    pairs = r * (r - 1) // 2
    if u > r * (t + 1) + pairs:
        return 0
    notS = ~S & mask
    lo = P[t - 1] + 1
    cnt = n - r + 1 - lo
    if cnt <= 0:
        return 0
    g = gains[t]
    for i in range(cnt):
        x = lo + i
        ok = True
        if not unit_mode:
            for j in range(t):
                if not allowed[(x - P[j]) % n]:
                    ok = False
                    break
        if ok:
            g[i] = _popcount((_rot(A, x, n, mask) | (np.uint64(1) << np.uint64((2 * x) % n))) & notS)
        else:
            g[i] = -1
    # sf[i]: sum of the r-1 largest gains at indices >= i
    top = tops[t]
    sf = suf[t]
    for j in range(r):
        top[j] = 0
    total = 0
    sf[cnt] = 0
    best = 0
    for i in range(cnt - 1, -1, -1):
        v = g[i]
        if v > best:
            best = v
        if r > 1 and v > top[r - 2]:
            total += v - top[r - 2]
            j = r - 2
            while j > 0 and top[j - 1] < v:
                top[j] = top[j - 1]
                j -= 1
            top[j] = v
        sf[i] = total
    if u > best + sf[0] + pairs:
        return 0
    for i in range(cnt):
        if g[i] < 0 or u > g[i] + sf[i + 1] + pairs:
            continue
        x = lo + i
        P[t] = x
        if unit_mode and t + 1 <= CANON_DEPTH and _has_smaller_image(P, t + 1, n, inv, img):
            continue
        A2 = A | (np.uint64(1) << np.uint64(x))
        S2 = S | _rot(A, x, n, mask) | (np.uint64(1) << np.uint64((2 * x) % n))
        found = _search(A2, S2, P, t + 1, n, m, mask, gains, tops, suf, inv, img, unit_mode, allowed)
        if found:
            return found
    return 0


def find_cover(n: int, m: int) -> list[int] | None:
    """A set of ``m`` residues with ``A + A = Z_n``, or ``None`` if there is none."""
    if not 3 <= n <= 64:
        raise ValueError("kernel handles 3 <= n <= 64")
    if m < 2:
        return None
    mask = np.uint64((1 << n) - 1)
    gains = np.zeros((m + 1, n + 1), dtype=np.int64)
    tops = np.zeros((m + 1, m + 1), dtype=np.int64)
    suf = np.zeros((m + 1, n + 2), dtype=np.int64)
    inv = np.zeros(n, dtype=np.int64)
    allowed = np.zeros(n, dtype=np.bool_)
    for x in range(1, n):
        if gcd(x, n) == 1:
            inv[x] = pow(x, -1, n)
        else:
            allowed[x] = True
    img = np.zeros(m + 1, dtype=np.int64)
    P = np.zeros(m + 1, dtype=np.int64)

    P[1] = 1
    A = np.uint64(0b11)
    S = np.uint64(0b111)
    t = _search(A, S, P, 2, n, m, mask, gains, tops, suf, inv, img, True, allowed)
    if t:
        return [int(x) for x in P[:t]]

    P[:] = 0
    t = _search(np.uint64(1), np.uint64(1), P, 1, n, m, mask, gains, tops, suf, inv, img, False, allowed)
    if t:
        return [int(x) for x in P[:t]]
    return None
