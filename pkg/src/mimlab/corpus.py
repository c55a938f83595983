"""Isomorphism-free corpora of small graphs for exhaustive sweeps.

Graphs on n vertices are encoded as bitmasks over the C(n,2) vertex pairs
in lexicographic order.  The canonical form of a graph is the minimum mask
over all vertex relabelings; corpora are grown one vertex at a time (every
(n+1)-vertex graph arises from an n-vertex graph plus a new vertex with
some neighborhood) and deduplicated by canonical form, which is vectorized
over all candidates at once.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .graph import Graph

MAX_EXHAUSTIVE_N = 7


def pair_order(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@functools.lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(pair_order(n))}


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = pair_order(n)
    edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
    return Graph(n, edges)


def mask_from_graph(g: Graph) -> int:
    idx = _pair_index(g.n)
    mask = 0
    for e in g.edges():
        mask |= 1 << idx[e]
    return mask


def _canonicalize_batch(n: int, masks: np.ndarray) -> np.ndarray:
    """Elementwise minimum over all vertex relabelings of each mask."""
    pairs = pair_order(n)
    idx = _pair_index(n)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        out = np.zeros_like(masks)
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            dst = idx[(a, b) if a < b else (b, a)]
            out |= ((masks >> k) & 1) << dst
        np.minimum(best, out, out=best)
    return best


def canonical_mask(n: int, mask: int) -> int:
    if n <= 1:
        return 0
    arr = np.array([mask], dtype=np.int64)
    return int(_canonicalize_batch(n, arr)[0])


@functools.lru_cache(maxsize=None)
def all_graph_masks(n: int) -> tuple[int, ...]:
    """Canonical masks of every graph on n vertices, one per class."""
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(
            f"exhaustive corpus capped at n={MAX_EXHAUSTIVE_N}"
        )
    if n <= 1:
        return (0,)
    prev = all_graph_masks(n - 1)
    old_pairs = pair_order(n - 1)
    idx_n = _pair_index(n)
    remap = [idx_n[p] for p in old_pairs]
    new_vertex_bit = [1 << idx_n[(i, n - 1)] for i in range(n - 1)]
    # Precompute the pair-mask contributed by each neighborhood subset of
    # the new vertex.
    nb_mask = [0] * (1 << (n - 1))
    for nb in range(1, 1 << (n - 1)):
        low = nb & -nb
        nb_mask[nb] = nb_mask[nb ^ low] | new_vertex_bit[low.bit_length() - 1]
    candidates = set()
    for mask in prev:
        base = 0
        for k, dst in enumerate(remap):
            if mask >> k & 1:
                base |= 1 << dst
        for nb in range(1 << (n - 1)):
            candidates.add(base | nb_mask[nb])
    arr = np.array(sorted(candidates), dtype=np.int64)
    canon = _canonicalize_batch(n, arr)
    return tuple(int(x) for x in np.unique(canon))


def _connected_mask(n: int, mask: int) -> bool:
    if n <= 1:
        return True
    adj = [0] * n
    for k, (i, j) in enumerate(pair_order(n)):
        if mask >> k & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    seen = 1
    frontier = 1
    while frontier:
        b = frontier & -frontier
        frontier ^= b
        nb = adj[b.bit_length() - 1] & ~seen
        seen |= nb
        frontier |= nb
    return seen == (1 << n) - 1


@functools.lru_cache(maxsize=None)
def connected_graph_masks(n: int) -> tuple[int, ...]:
    return tuple(m for m in all_graph_masks(n) if _connected_mask(n, m))


def all_graphs(n: int) -> list[Graph]:
    return [graph_from_mask(n, m) for m in all_graph_masks(n)]


def connected_graphs(n: int) -> list[Graph]:
    return [graph_from_mask(n, m) for m in connected_graph_masks(n)]
