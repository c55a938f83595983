"""Immutable simple graphs with bit-vector adjacency rows.

Vertices are 0-based ints internally; the edge-list file format is 1-based.
Adjacency is stored as one Python int per vertex (bit v set = neighbor), so
membership tests and set algebra on vertex sets are single int operations.
All functions here are pure; a Graph never changes after construction.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError

DEFAULT_MATCHING_BUDGET = 10**8


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Invariants enforced at construction: symmetric adjacency, no self
    loops, no duplicate edges, endpoints in range.
    """

    __slots__ = ("n", "adj", "labels", "parent_map", "_edges")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
        parent_map: tuple[int, ...] | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._edges = tuple(sorted(seen))
        if labels is not None:
            if len(labels) != n:
                raise ValueError("labels length must equal n")
            self.labels = tuple(labels)
        else:
            self.labels = None
        self.parent_map = parent_map

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(vertices_of(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v + 1)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def mask_of(vertices: Iterable[int], n: int) -> int:
    """Pack a vertex collection into a bitmask, validating the range."""
    mask = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> Iterator[int]:
    """Yield the set bits of a mask in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced by the vertex set s, reindexed to 0..|s|-1.

    The returned graph's `parent_map` maps each new index back to the
    original vertex, and labels are carried over.
    """
    smask = mask_of(s, g.n)
    members = list(vertices_of(smask))
    index = {v: i for i, v in enumerate(members)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges()
        if smask >> u & 1 and smask >> v & 1
    ]
    labels = tuple(g.label(v) for v in members) if g.labels else None
    return Graph(len(members), edges, labels=labels, parent_map=tuple(members))


def upper_subgraph(g: Graph, u: Iterable[int]) -> Graph:
    """Spanning subgraph keeping every edge with at least one end in u.

    Equivalently: delete exactly the edges internal to the complement
    of u. Vertex indices are unchanged.
    """
    umask = mask_of(u, g.n)
    edges = [(a, b) for a, b in g.edges() if umask >> a & 1 or umask >> b & 1]
    return Graph(g.n, edges, labels=g.labels)


def cut_graph(g: Graph, u: Iterable[int]) -> Graph:
    """Spanning subgraph keeping only the edges crossing the (u, rest) cut."""
    umask = mask_of(u, g.n)
    edges = [
        (a, b) for a, b in g.edges() if (umask >> a & 1) != (umask >> b & 1)
    ]
    return Graph(g.n, edges, labels=g.labels)


def neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """All neighbors of vertices of s, excluding s itself."""
    smask = mask_of(s, g.n)
    return frozenset(vertices_of(neighborhood_mask(g, smask)))


def neighborhood_mask(g: Graph, smask: int) -> int:
    out = 0
    m = smask
    while m:
        b = m & -m
        m ^= b
        out |= g.adj[b.bit_length() - 1]
    return out & ~smask


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    """True iff no edge of g has both ends in s."""
    return is_independent_mask(g, mask_of(s, g.n))


def is_independent_mask(g: Graph, smask: int) -> bool:
    m = smask
    while m:
        b = m & -m
        m ^= b
        if g.adj[b.bit_length() - 1] & smask:
            return False
    return True


def is_induced_cut_matching(
    g: Graph, u: Iterable[int], matching: Iterable[tuple[int, int]]
) -> bool:
    """Check that `matching` is an induced (u, rest)-matching of g.

    Every pair must be an edge of g with exactly one end in u (errors
    otherwise).  Returns True iff the pairs are vertex-disjoint and no
    edge of g joins two distinct matching edges.
    """
    umask = mask_of(u, g.n)
    pairs = []
    for a, b in matching:
        if not g.has_edge(a, b):
            raise ValueError(f"({a},{b}) is not an edge of the graph")
        if (umask >> a & 1) == (umask >> b & 1):
            raise ValueError(f"({a},{b}) does not cross the cut")
        pairs.append((a, b) if umask >> a & 1 else (b, a))
    used = 0
    for a, b in pairs:
        bits = 1 << a | 1 << b
        if used & bits:
            return False
        used |= bits
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1 :]:
            if g.adj[a] >> c & 1 or g.adj[a] >> d & 1 or g.adj[b] >> c & 1 \
                    or g.adj[b] >> d & 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Exact maximum induced cut matching.
#
# Crossing edges are oriented (u-side, rest-side).  Picking an edge forbids
# future u-side endpoints in `fu` and future rest-side endpoints in `fv`;
# the masks below encode "shares an endpoint or is joined by a graph edge".
# The search is branch and bound over the lexicographically sorted crossing
# edge list, so results and witnesses are deterministic.
# ---------------------------------------------------------------------------


class _Work:
    __slots__ = ("nodes", "budget", "what")

    def __init__(self, budget: int, what: str):
        self.nodes = 0
        self.budget = budget
        self.what = what

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self.budget:
            raise BudgetExceededError(self.what, self.budget)


def crossing_edges(g: Graph, umask: int) -> list[tuple[int, int]]:
    """Edges with exactly one end in umask, as (u-side, rest-side) pairs."""
    comp = g.full_mask() & ~umask
    out = []
    m = umask
    while m:
        b = m & -m
        m ^= b
        u = b.bit_length() - 1
        nb = g.adj[u] & comp
        while nb:
            c = nb & -nb
            nb ^= c
            out.append((u, c.bit_length() - 1))
    return out


def _full_conflict_masks(
    g: Graph, edges: list[tuple[int, int]]
) -> tuple[list[int], list[int], list[int], list[int]]:
    """Forbidden-mask tables for matchings induced in g itself."""
    us, vs, fua, fva = [], [], [], []
    adj = g.adj
    for u, v in edges:
        bu, bv = 1 << u, 1 << v
        block = adj[u] | adj[v] | bu | bv
        us.append(bu)
        vs.append(bv)
        fua.append(block)
        fva.append(block)
    return us, vs, fua, fva


def _mis_exists(
    us, vs, fua, fva, k: int, work: _Work | None = None,
    start: int = 0, fu0: int = 0, fv0: int = 0,
) -> bool:
    """Is there a compatible selection of k crossing edges from index
    `start` on, under initial forbidden masks (fu0, fv0)?"""
    if k <= 0:
        return True
    n_e = len(us)

    def rec(i: int, need: int, fu: int, fv: int) -> bool:
        if work is not None:
            work.tick()
        last = n_e - need
        j = i
        while j <= last:
            if not (fu & us[j]) and not (fv & vs[j]):
                if need == 1:
                    return True
                if rec(j + 1, need - 1, fu | fua[j], fv | fva[j]):
                    return True
            j += 1
        return False

    return rec(start, k, fu0, fv0)


def _mis_max(us, vs, fua, fva, work: _Work | None = None) -> int:
    k = 0
    while _mis_exists(us, vs, fua, fva, k + 1, work):
        k += 1
    return k


def _mis_lex_witness(edges, us, vs, fua, fva, size: int, work=None):
    """Lexicographically least sorted list of edges achieving `size`."""
    chosen: list[tuple[int, int]] = []
    fu = fv = 0
    start = 0
    while len(chosen) < size:
        for j in range(start, len(us)):
            if fu & us[j] or fv & vs[j]:
                continue
            need = size - len(chosen) - 1
            if _mis_exists(us, vs, fua, fva, need, work,
                           start=j + 1, fu0=fu | fua[j], fv0=fv | fva[j]):
                chosen.append(edges[j])
                fu |= fua[j]
                fv |= fva[j]
                start = j + 1
                break
        else:  # pragma: no cover - size was certified reachable
            raise AssertionError("witness reconstruction failed")
    return chosen


def max_induced_cut_matching(
    g: Graph, u: Iterable[int], *, budget: int | None = None
) -> tuple[int, list[tuple[int, int]]]:
    """Exact maximum induced (u, rest)-matching of g, with witness.

    The matching must be induced in g as given; pass an upper subgraph or
    a cut graph to measure matchings under those edge sets.  The witness
    is the lexicographically least edge list among the maximum matchings.
    Raises BudgetExceededError when the branch-and-bound exceeds its node
    budget (default 10**8).
    """
    umask = mask_of(u, g.n)
    work = _Work(budget or DEFAULT_MATCHING_BUDGET, "induced matching search")
    edges = crossing_edges(g, umask)
    us, vs, fua, fva = _full_conflict_masks(g, edges)
    best = _mis_max(us, vs, fua, fva, work)
    witness = _mis_lex_witness(edges, us, vs, fua, fva, best, work)
    return best, witness


# ---------------------------------------------------------------------------
# Edge-list file format: `p edge <n> <m>` header, one `e <u> <v>` line per
# edge with 1-based endpoints, `c` lines and blank lines ignored (except
# `c label <v> <name>` which restores display names).
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "c":
            if len(parts) >= 4 and parts[1] == "label":
                labels[int(parts[2]) - 1] = " ".join(parts[3:])
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"line {lineno}: malformed problem line")
            n = int(parts[2])
            continue
        if parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
            continue
        raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ValueError("missing `p edge` header")
    label_seq = None
    if labels:
        label_seq = [labels.get(v, str(v + 1)) for v in range(n)]
    return Graph(n, edges, labels=label_seq)


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    if g.labels:
        for v in range(g.n):
            lines.append(f"c label {v + 1} {g.labels[v]}")
    for u, v in g.edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comments))
