"""Stitching two circulants into one on the product of their orders.

With ``S_1`` and ``S_2`` written in ``(-n_i/2, n_i/2]``, the set
``n_2*S_1 ∪ S_2`` in ``Z_{n_1 n_2}`` has diameter at most ``k_1 + k_2``:
first fix the residue mod ``n_2`` with ``S_2``, then the remaining multiple
of ``n_2`` with the scaled copy of ``S_1``.
"""

from __future__ import annotations

from typing import Sequence

from .cyclic import ConnectionSet, symmetric_rep
from .metrics import WorkCapExceeded, diameter


class StitchError(ValueError):
    pass


def _check_diameter(g: ConnectionSet, k: int, work_cap: int | None) -> int | None:
    try:
        d = diameter(g, work_cap=work_cap)
    except WorkCapExceeded:
        return None
    if d > k:
        raise StitchError(f"claimed diameter {k} but graph of order {g.n} has diameter {d}")
    return d


def stitch(
    g1: ConnectionSet,
    g2: ConnectionSet,
    k1: int,
    k2: int,
    *,
    reorder: bool = True,
    verify: bool = True,
    work_cap: int | None = None,
) -> ConnectionSet:
    """Stitched graph of order ``n_1 n_2`` and diameter at most ``k_1 + k_2``.

    Undirected inputs need ``S_2`` of even degree; when exactly one degree
    is odd the arguments are swapped (disable with ``reorder=False``). When
    both are odd, ``-n_2/2`` is added, so the degree is ``d_1 + d_2 + 1``.
    """
    if g1.directed != g2.directed:
        raise StitchError("cannot stitch a directed graph with an undirected one")
    if verify:
        _check_diameter(g1, k1, work_cap)
        _check_diameter(g2, k2, work_cap)
    directed = g1.directed
    if not directed and reorder and g1.degree % 2 == 0 and g2.degree % 2 == 1:
        g1, g2, k1, k2 = g2, g1, k2, k1
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    raw = [n2 * symmetric_rep(e, n1) for e in g1.elements]
    raw += [symmetric_rep(e, n2) for e in g2.elements]
    extra = 0
    if not directed and g2.degree % 2 == 1:
        # S_2 holds n_2/2, whose negative is missing from S' unless added
        raw.append(-(n2 // 2))
        extra = 1
    elems = tuple(sorted({x % n for x in raw}))
    if directed:
        out = ConnectionSet(n, elems, True)
    else:
        try:
            out = ConnectionSet(n, elems, False)
        except ValueError as exc:
            raise AssertionError(f"stitched set is not symmetric: {exc}") from None
    limit = g1.degree + g2.degree + extra
    if out.degree > limit:
        raise AssertionError(f"stitched degree {out.degree} exceeds {limit}")
    if verify:
        _check_diameter(out, k1 + k2, work_cap)
    return out


def stitch_chain(parts: Sequence[tuple[ConnectionSet, int]], **kwargs) -> tuple[ConnectionSet, int]:
    """Left fold of :func:`stitch`; returns the graph and its diameter bound."""
    if len(parts) < 2:
        raise StitchError("stitching needs at least two parts")
    g, k = parts[0]
    for g2, k2 in parts[1:]:
        g = stitch(g, g2, k, k2, **kwargs)
        k += k2
    return g, k
