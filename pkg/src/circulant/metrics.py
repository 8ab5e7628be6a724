"""Distances and diameter of circulant graphs.

Circulants are vertex transitive, so one breadth-first search from 0 gives
the eccentricity of every vertex. The search switches to a bottom-up sweep
(scan unvisited vertices for a predecessor in the frontier) once the
frontier is large, which is where large-degree graphs spend their time.
"""

from __future__ import annotations

import os
from functools import reduce
from math import gcd
from dataclasses import dataclass

import numpy as np

from .cyclic import ConnectionSet

DEFAULT_WORK_CAP = 10**9


class DisconnectedGraphError(ValueError):
    def __init__(self, n: int, reached: int):
        super().__init__(f"graph on {n} vertices is disconnected: only {reached} reachable from 0")
        self.n = n
        self.reached = reached


class WorkCapExceeded(RuntimeError):
    def __init__(self, work: int, cap: int):
        super().__init__(f"BFS needs ~{work} edge traversals, over the cap of {cap}")
        self.work = work
        self.cap = cap


def default_work_cap() -> int:
    env = os.environ.get("CIRCULANT_WORK_CAP")
    return int(float(env)) if env else DEFAULT_WORK_CAP


@dataclass(frozen=True)
class DistanceProfile:
    n: int
    dist: np.ndarray
    diameter: int


def _check_cap(g: ConnectionSet, work_cap: int | None) -> None:
    cap = default_work_cap() if work_cap is None else work_cap
    work = g.n * g.degree
    if work > cap:
        raise WorkCapExceeded(work, cap)


def _layers(g: ConnectionSet, source: int, max_layers: int | None):
    """Yield ``(layer, new_vertices)``; stops when exhausted or after ``max_layers``."""
    n = g.n
    gens = np.asarray(g.elements, dtype=np.int64)
    d = gens.size
    visited = np.zeros(n, dtype=bool)
    visited[source] = True
    frontier = np.array([source], dtype=np.int64)
    seen = 1
    layer = 0
    while frontier.size and seen < n:
        if max_layers is not None and layer >= max_layers:
            return
        layer += 1
        if frontier.size * d <= n - seen:
            parts = []
            for s in gens:
                c = frontier + s
                c[c >= n] -= n
                c = c[~visited[c]]
                visited[c] = True
                parts.append(c)
            nxt = np.concatenate(parts)
        else:
            in_frontier = np.zeros(n, dtype=bool)
            in_frontier[frontier] = True
            rest = np.flatnonzero(~visited)
            parts = []
            for s in gens:
                if not rest.size:
                    break
                p = rest - s
                p[p < 0] += n
                hit = in_frontier[p]
                parts.append(rest[hit])
                rest = rest[~hit]
            nxt = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
            visited[nxt] = True
        seen += nxt.size
        frontier = nxt
        yield layer, nxt


def bfs_profile(g: ConnectionSet, source: int = 0, work_cap: int | None = None) -> DistanceProfile:
    """Distance from ``source`` to every vertex.

    Raises :class:`DisconnectedGraphError` rather than reporting an
    infinite diameter.
    """
    _check_cap(g, work_cap)
    n = g.n
    dtype = np.min_scalar_type(n)
    unreached = np.iinfo(dtype).max
    dist = np.full(n, unreached, dtype=dtype)
    dist[source] = 0
    diameter = 0
    reached = 1
    for layer, new in _layers(g, source, None):
        dist[new] = layer
        diameter = layer
        reached += new.size
    if reached < n:
        raise DisconnectedGraphError(n, reached)
    return DistanceProfile(n, dist, diameter)


def diameter(g: ConnectionSet, work_cap: int | None = None) -> int:
    return bfs_profile(g, work_cap=work_cap).diameter


def verify_diameter_at_most(g: ConnectionSet, k: int, work_cap: int | None = None) -> bool:
    """True iff every vertex lies within distance ``k`` of 0; stops after layer ``k``."""
    _check_cap(g, work_cap)
    if not g.connected():
        raise DisconnectedGraphError(g.n, g.n // reduce(gcd, g.elements, g.n))
    reached = 1
    for _, new in _layers(g, 0, k):
        reached += new.size
    return reached == g.n
