"""Bounded decompositions on products of cyclic groups.

Two results are implemented as witness producers plus validity checkers:

* the two-generator decomposition on the torus ``Z_r x Z_s`` with
  ``r = s + m*d``: every ``(x, y)`` equals ``h*(1, 1) + ell*(u, v)`` with
  ``h < s + m*v`` and ``ell < s - m*(u - 1)``;
* the ladder decomposition on ``Z_{r_1} x ... x Z_{r_k}`` over the basis
  ``A = {o, u, e_1, ..., e_k}`` (all-ones, staircase ``(1, 2, ..., k)`` and
  coordinate vectors): for any ``k``-subset of ``A`` every element is a
  combination with coefficients below ``c_o``, ``c_u = r_1`` and
  ``c_{e_i} = r_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np



@dataclass(frozen=True)
class Report:
    """Outcome of a validation: ``ok`` plus one message per violated condition."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TorusParams:
    u: int
    d: int
    s: int
    m: int

    @property
    def v(self) -> int:
        return self.u + self.d

    @property
    def r(self) -> int:
        return self.s + self.m * self.d

    @property
    def h_bound(self) -> int:
        return self.s + self.m * self.v

    @property
    def ell_bound(self) -> int:
        return self.s - self.m * (self.u - 1)


@dataclass(frozen=True)
class DecompWitness:
    h: int
    ell: int


def validate_torus(p: TorusParams) -> Report:
    bad = []
    for name in ("u", "d", "m"):
        if getattr(p, name) < 1:
            bad.append(f"{name} must be positive")
    if p.s <= 1:
        bad.append(f"s = {p.s} must exceed 1")
    if math.gcd(p.s, p.m * p.d) != 1:
        bad.append(f"s = {p.s} is not coprime to m*d = {p.m * p.d}")
    if p.s < p.m * p.v * (p.u - 1):
        bad.append(f"s = {p.s} < m*v*(u-1) = {p.m * p.v * (p.u - 1)}")
    return Report(tuple(bad))


def decompose_pair(p: TorusParams, x: int, y: int) -> DecompWitness:
    """Witness ``(h, ell)`` with the smallest ``ell``.

    For each candidate ``ell`` the multiple ``h`` of ``(1, 1)`` is pinned
    down modulo ``r*s`` by the Chinese remainder theorem
    (``gcd(r, s) = gcd(m*d, s) = 1``), so the scan is O(ell).
    """
    report = validate_torus(p)
    if not report:
        raise ValueError("; ".join(report.violations))
    r, s, u, v = p.r, p.s, p.u, p.v
    x %= r
    y %= s
    r_inv = pow(r, -1, s)
    for ell in range(p.ell_bound):
        a = (x - ell * u) % r
        h = a + r * (((y - ell * v - a) * r_inv) % s)
        if h < p.h_bound:
            return DecompWitness(h, ell)
    raise AssertionError(f"no decomposition of ({x}, {y}) for {p}; the bound argument failed")


def witness_table(p: TorusParams) -> tuple[np.ndarray, np.ndarray]:
    """Minimal-``ell`` witnesses for the whole torus at once.

    Returns arrays ``h`` and ``ell`` of shape ``(r, s)``; entry ``[x, y]``
    is what :func:`decompose_pair` returns for ``(x, y)``. Each step of
    ``ell`` only touches the points still unresolved.
    """
    report = validate_torus(p)
    if not report:
        raise ValueError("; ".join(report.violations))
    r, s = p.r, p.s
    r_inv = pow(r, -1, s)
    xs, ys = np.divmod(np.arange(r * s, dtype=np.int64), s)
    h_out = np.full(r * s, -1, dtype=np.int64)
    ell_out = np.full(r * s, -1, dtype=np.int64)
    todo = np.arange(r * s, dtype=np.int64)
    for ell in range(p.ell_bound):
        if not todo.size:
            break
        a = (xs[todo] - ell * p.u) % r
        h = a + r * (((ys[todo] - ell * p.v - a) * r_inv) % s)
        hit = h < p.h_bound
        h_out[todo[hit]] = h[hit]
        ell_out[todo[hit]] = ell
        todo = todo[~hit]
    if todo.size:
        x, y = divmod(int(todo[0]), s)
        raise AssertionError(f"no decomposition of ({x}, {y}) for {p}; the bound argument failed")
    return h_out.reshape(r, s), ell_out.reshape(r, s)


@dataclass(frozen=True)
class LadderParams:
    """Radii ``r_1 > ... > r_k`` with the derived ``m_{i,j}``, ``c_o`` and ``c_u``.

    Build with :meth:`from_radii`; the derived values are always recomputed.
    Indices are 1-based as in the usual statement.
    """

    radii: tuple[int, ...]
    m: dict[tuple[int, int], int] = field(compare=False)
    c_o: int
    c_u: int

    @property
    def k(self) -> int:
        return len(self.radii)

    def r(self, i: int) -> int:
        return self.radii[i - 1]

    @classmethod
    def from_radii(cls, radii: Sequence[int]) -> "LadderParams":
        radii = tuple(radii)
        k = len(radii)
        m = {}
        for i, j in combinations(range(1, k + 1), 2):
            diff = radii[i - 1] - radii[j - 1]
            m[i, j] = diff // (j - i) if diff % (j - i) == 0 else 0
        c_o = max((radii[j - 1] + j * mij for (_, j), mij in m.items()), default=0)
        return cls(radii, m, c_o, radii[0] if radii else 0)

    def bound(self, key: str) -> int:
        if key == "o":
            return self.c_o
        if key == "u":
            return self.c_u
        return self.r(int(key[1:]))

    def basis(self) -> list[str]:
        return ["o", "u"] + [f"e{i}" for i in range(1, self.k + 1)]

    def vector(self, key: str) -> tuple[int, ...]:
        if key == "o":
            return tuple(1 % r for r in self.radii)
        if key == "u":
            return tuple(i % r for i, r in enumerate(self.radii, 1))
        i = int(key[1:])
        return tuple(int(t == i) for t in range(1, self.k + 1))


def validate_ladder(p: LadderParams, w: int | None = None) -> Report:
    """Check every hypothesis on the radii, and coprimality to ``w`` if given."""
    radii = p.radii
    k = len(radii)
    bad = []
    if k < 2:
        bad.append(f"need at least 2 radii, got {k}")
    fresh = LadderParams.from_radii(radii)
    if (fresh.m, fresh.c_o, fresh.c_u) != (p.m, p.c_o, p.c_u):
        bad.append("stored m / c_o / c_u disagree with values recomputed from the radii")
    for i, r in enumerate(radii, 1):
        if r <= 1:
            bad.append(f"r_{i} = {r} must exceed 1")
        if math.gcd(r, i) != 1:
            bad.append(f"r_{i} = {r} is not coprime to {i}")
        if w is not None and math.gcd(r, w) != 1:
            bad.append(f"gcd(r_{i}, w) = gcd({r}, {w}) = {math.gcd(r, w)} != 1")
    for i, j in combinations(range(1, k + 1), 2):
        ri, rj = radii[i - 1], radii[j - 1]
        if ri <= rj:
            bad.append(f"r_{i} = {ri} must exceed r_{j} = {rj}")
            continue
        if math.gcd(ri, rj) != 1:
            bad.append(f"r_{i} = {ri} and r_{j} = {rj} are not coprime")
        if (ri - rj) % (j - i):
            bad.append(f"r_{i} - r_{j} = {ri - rj} is not a multiple of {j - i}")
            continue
        mij = (ri - rj) // (j - i)
        if rj < mij * (i - 1) * j:
            bad.append(f"r_{j} = {rj} < m_{i},{j}*(i-1)*j = {mij * (i - 1) * j}")
    return Report(tuple(bad))


def pair_params(p: LadderParams, i: int, j: int) -> TorusParams:
    """Torus parameters for coordinates ``i < j`` with ``(u, v) = (i, j)``."""
    return TorusParams(u=i, d=j - i, s=p.r(j), m=p.m[i, j])


def decompose_ladder(p: LadderParams, x: Sequence[int], omitted: Sequence[str]) -> dict[str, int]:
    """Coefficients ``h_s < c_s`` for ``s`` in ``A`` minus ``omitted`` reconstructing ``x``.

    ``omitted`` names exactly two of ``"o"``, ``"u"``, ``"e1"`` ... ``"ek"``.
    """
    k = p.k
    omit = set(omitted)
    if len(omit) != 2 or not omit <= set(p.basis()):
        raise ValueError(f"omitted must name two distinct basis elements, got {omitted!r}")
    x = [c % r for c, r in zip(x, p.radii)]
    if len(x) != k:
        raise ValueError(f"x has {len(x)} coordinates, expected {k}")
    omitted_e = sorted(int(key[1:]) for key in omit if key.startswith("e"))

    h_o = h_u = 0
    if "o" in omit and "u" in omit:
        pass
    elif "u" in omit:
        (i,) = omitted_e
        h_o = x[i - 1]
    elif "o" in omit:
        (i,) = omitted_e
        h_u = x[i - 1] * pow(i, -1, p.r(i)) % p.r(i)
    else:
        i, j = omitted_e
        wit = decompose_pair(pair_params(p, i, j), x[i - 1], x[j - 1])
        h_o, h_u = wit.h, wit.ell

    coeffs = {}
    if "o" not in omit:
        coeffs["o"] = h_o
    if "u" not in omit:
        coeffs["u"] = h_u
    for t in range(1, k + 1):
        if f"e{t}" in omit:
            continue
        coeffs[f"e{t}"] = (x[t - 1] - h_o - t * h_u) % p.r(t)
    return coeffs
