"""Monotone 2-CNFs and their ordered binary decision diagrams.

A graph without isolated vertices encodes the CNF with one positive clause
per edge.  Deciding variables in a fixed order, the live residual constraint
after any prefix assignment is determined by the set of still-undecided
vertices forced true (the neighbors of the falsified prefix vertices), which
is what makes a canonical level-sweep construction possible: states are
forced-sets, falsified states collapse into the false sink, fully satisfied
states into the true sink.

Two size notions are first class:

* size_quasi  - 2 sinks plus the per-level count of distinct live states
                (the level profile depends only on the prefix as a set);
* size_total  - node count of the fully reduced diagram (merged + no
                redundant tests), which decomposes per level into the count
                of live states that essentially depend on the level's
                variable.

Both decompositions are per-prefix-set, so both minima over variable
orderings are computed exactly by subset dynamic programs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceededError
from .graph import Graph, vertices_of
from .width import WidthReport, WidthVariant, exact_width

TRUTH_TABLE_LIMIT = 20
OBDD_DP_LIMIT = 20
EQUIV_CHECK_LIMIT = 20
BRUTE_ORDER_LIMIT = 8

FALSE_ID = 0
TRUE_ID = 1


@dataclass(frozen=True)
class MonotoneCnf:
    """One positive 2-clause per edge; variable i is vertex i."""

    n: int
    clauses: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def variable_name(self, v: int) -> str:
        return self.labels[v] if self.labels else f"x{v + 1}"


def cnf_of_graph(g: Graph) -> MonotoneCnf:
    isolated = g.isolated_vertices()
    if isolated:
        raise ValueError(
            f"graph has isolated vertices {list(isolated)}; every variable "
            "must occur in a clause"
        )
    return MonotoneCnf(g.n, g.edges(), labels=g.labels)


def cnf_satisfied(cnf: MonotoneCnf, true_mask: int) -> bool:
    for u, v in cnf.clauses:
        if not (true_mask >> u & 1 or true_mask >> v & 1):
            return False
    return True


def format_dimacs(cnf: MonotoneCnf) -> str:
    lines = [f"p cnf {cnf.n} {len(cnf.clauses)}"]
    for u, v in cnf.clauses:
        lines.append(f"{u + 1} {v + 1} 0")
    return "\n".join(lines) + "\n"


def write_dimacs(cnf: MonotoneCnf, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_dimacs(cnf))


def subfunction_count(g: Graph, prefix, *, limit: int = TRUTH_TABLE_LIMIT) -> int:
    """Number of distinct residual functions after assigning the prefix.

    Semantic oracle: enumerates the extendable prefix assignments, builds
    each residual's full truth table over the remaining variables, and
    counts distinct tables.  Deliberately independent of any trace or
    forced-set reasoning.
    """
    if g.n > limit:
        raise BudgetExceededError("semantic subfunction count", limit)
    cnf = cnf_of_graph(g)
    from .graph import mask_of

    umask = mask_of(prefix, g.n)
    comp_bits = [v for v in range(g.n) if not umask >> v & 1]
    u_bits = [v for v in range(g.n) if umask >> v & 1]
    tables = set()
    for pick in range(1 << len(u_bits)):
        true_mask = 0
        for i, v in enumerate(u_bits):
            if pick >> i & 1:
                true_mask |= 1 << v
        false_mask = umask & ~true_mask
        # Extendable iff no clause already has both ends false; the rest
        # of a monotone CNF is always satisfiable by setting all true.
        if any(
            false_mask >> a & 1 and false_mask >> b & 1
            for a, b in cnf.clauses
        ):
            continue
        table = 0
        for bpick in range(1 << len(comp_bits)):
            amask = true_mask
            for i, v in enumerate(comp_bits):
                if bpick >> i & 1:
                    amask |= 1 << v
            if cnf_satisfied(cnf, amask):
                table |= 1 << bpick
        tables.add(table)
    return len(tables)


class Obdd:
    """Reduced OBDD with explicit per-level live state counts.

    Internal nodes are (variable, lo_id, hi_id) triples keyed by id; ids
    0 and 1 are the false and true sinks.  `level_live_counts[i]` is the
    number of distinct live states entering level i of the quasi-reduced
    level sweep (before reduction).
    """

    def __init__(self, order, nodes, root, level_live_counts, labels=None):
        self.order = tuple(order)
        self.nodes = dict(nodes)
        self.root = root
        self.level_live_counts = tuple(level_live_counts)
        self.labels = labels
        self.n = len(self.order)
        self.position = {v: i for i, v in enumerate(self.order)}

    @property
    def size_internal(self) -> int:
        return len(self.nodes)

    @property
    def size_total(self) -> int:
        return self.size_internal + 2

    @property
    def size_quasi(self) -> int:
        return sum(self.level_live_counts) + 2

    def levels(self) -> dict[int, list[int]]:
        """Node ids grouped by decision variable."""
        out: dict[int, list[int]] = {v: [] for v in self.order}
        for nid, (var, _, _) in sorted(self.nodes.items()):
            out[var].append(nid)
        return out

    def variable_name(self, v: int) -> str:
        return self.labels[v] if self.labels else f"x{v + 1}"


def build_obdd(g: Graph, order: Sequence[int]) -> Obdd:
    """Level sweep over the ordering, then standard reduction.

    States are forced-sets over undecided vertices.  Setting a vertex
    false adds its undecided neighbors to the forced set; setting a forced
    vertex false falsifies; a state with nothing forced and no remaining
    edges is satisfied.
    """
    cnf_of_graph(g)  # validates no isolated vertices
    n = g.n
    if n == 0:
        raise ValueError("cannot build an OBDD over zero variables")
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the vertices")
    adj = g.adj
    full = (1 << n) - 1

    rem_after = [0] * (n + 1)
    acc = full
    for i, v in enumerate(order):
        acc &= ~(1 << v)
        rem_after[i + 1] = acc
    has_internal = [False] * (n + 1)
    for i in range(n + 1):
        mask = rem_after[i]
        m = mask
        found = False
        while m and not found:
            b = m & -m
            m ^= b
            if adj[b.bit_length() - 1] & mask:
                found = True
        has_internal[i] = found

    level_states: list[list[int]] = []
    level_lo: list[list[int]] = []
    level_hi: list[list[int]] = []
    # Sink / next-state encoding during the sweep: -1 false, -2 true,
    # otherwise index into the next level's state list.
    order_states = [0]
    for i, v in enumerate(order):
        bv = 1 << v
        nxt: dict[int, int] = {}
        nxt_list: list[int] = []
        lo_row: list[int] = []
        hi_row: list[int] = []

        def target(tmask: int) -> int:
            if tmask == 0 and not has_internal[i + 1]:
                return -2
            idx = nxt.get(tmask)
            if idx is None:
                idx = len(nxt_list)
                nxt[tmask] = idx
                nxt_list.append(tmask)
            return idx

        for tmask in order_states:
            hi_row.append(target(tmask & ~bv))
            if tmask & bv:
                lo_row.append(-1)
            else:
                lo_row.append(target((tmask | adj[v]) & rem_after[i + 1]))
        level_states.append(order_states)
        level_lo.append(lo_row)
        level_hi.append(hi_row)
        order_states = nxt_list
    if order_states:  # pragma: no cover - internal consistency
        raise AssertionError("live states remain after the last level")

    # Reduction: bottom-up unique table + redundant-test elimination.
    nodes: dict[int, tuple[int, int, int]] = {}
    unique: dict[tuple[int, int, int], int] = {}
    next_id = 2
    id_map: list[int] = []
    for i in range(n - 1, -1, -1):
        var = order[i]
        new_map = []
        for si in range(len(level_states[i])):
            resolved = []
            for t in (level_lo[i][si], level_hi[i][si]):
                if t == -1:
                    resolved.append(FALSE_ID)
                elif t == -2:
                    resolved.append(TRUE_ID)
                else:
                    resolved.append(id_map[t])
            lo_id, hi_id = resolved
            if lo_id == hi_id:
                new_map.append(lo_id)
                continue
            key = (var, lo_id, hi_id)
            nid = unique.get(key)
            if nid is None:
                nid = next_id
                next_id += 1
                unique[key] = nid
                nodes[nid] = key
            new_map.append(nid)
        id_map = new_map
    root = id_map[0]
    return Obdd(order, nodes, root,
                [len(s) for s in level_states], labels=g.labels)


def eval_obdd(z: Obdd, assignment: Sequence[bool]) -> bool:
    if len(assignment) != z.n:
        raise ValueError("assignment length does not match variable count")
    node = z.root
    while node not in (FALSE_ID, TRUE_ID):
        var, lo, hi = z.nodes[node]
        node = hi if assignment[var] else lo
    return node == TRUE_ID


def _eval_mask(z: Obdd, true_mask: int) -> bool:
    node = z.root
    while node not in (FALSE_ID, TRUE_ID):
        var, lo, hi = z.nodes[node]
        node = hi if true_mask >> var & 1 else lo
    return node == TRUE_ID


def count_accepting(z: Obdd) -> int:
    """Number of total assignments routed to the true sink."""
    n = z.n
    memo: dict[int, int] = {FALSE_ID: 0, TRUE_ID: 1}

    def level(node: int) -> int:
        if node in (FALSE_ID, TRUE_ID):
            return n
        return z.position[z.nodes[node][0]]

    def acc(node: int) -> int:
        got = memo.get(node)
        if got is not None:
            return got
        _, lo, hi = z.nodes[node]
        here = level(node)
        total = acc(lo) << (level(lo) - here - 1)
        total += acc(hi) << (level(hi) - here - 1)
        memo[node] = total
        return total

    return acc(z.root) << level(z.root)


def exhaustive_equiv_check(
    z: Obdd, g: Graph, *, limit: int = EQUIV_CHECK_LIMIT
) -> bool:
    """Compare the OBDD with direct clause evaluation on all assignments."""
    if g.n > limit:
        raise BudgetExceededError("exhaustive equivalence check", limit)
    cnf = cnf_of_graph(g)
    for true_mask in range(1 << g.n):
        if _eval_mask(z, true_mask) != cnf_satisfied(cnf, true_mask):
            return False
    return True


def count_satisfying(g: Graph, *, limit: int = TRUTH_TABLE_LIMIT) -> int:
    """Satisfying assignments of the edge CNF (= independent sets of g:
    the falsified variables must form an independent set)."""
    if g.n > limit:
        raise BudgetExceededError("satisfying assignment count", limit)
    cnf_of_graph(g)  # validates no isolated vertices
    adj = g.adj
    memo: dict[int, int] = {0: 1}

    def count(rem: int) -> int:
        got = memo.get(rem)
        if got is not None:
            return got
        b = rem & -rem
        v = b.bit_length() - 1
        total = count(rem ^ b) + count(rem & ~(b | adj[v]))
        memo[rem] = total
        return total

    return count(g.full_mask())


# ---------------------------------------------------------------------------
# Exact size minimization over variable orderings.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinSizeReport:
    size_quasi: int
    size_total: int
    order_quasi: tuple[int, ...]
    order_total: tuple[int, ...]


def _live_trace_masks(g: Graph, wmask: int, comp: int) -> set[int]:
    out = set()
    adj = g.adj
    members = list(vertices_of(wmask))

    def rec(idx: int, nmask: int, banned: int):
        out.add(nmask & comp)
        for j in range(idx, len(members)):
            v = members[j]
            b = 1 << v
            if b & banned:
                continue
            rec(j + 1, nmask | adj[v], banned | b | adj[v])

    rec(0, 0, 0)
    return out


def _internal_edge_table(g: Graph) -> bytearray:
    n = g.n
    table = bytearray(1 << n)
    adj = g.adj
    for mask in range(1, 1 << n):
        b = mask & -mask
        rest = mask ^ b
        table[mask] = table[rest] or bool(adj[b.bit_length() - 1] & rest)
    return table


def min_obdd_size_exact(
    g: Graph, *, method: str = "dp", limit: int = OBDD_DP_LIMIT
) -> MinSizeReport:
    """Exact minimum OBDD sizes over all variable orderings.

    method "dp" runs subset dynamic programs over prefix sets for both
    size notions; method "enum" builds the OBDD for every permutation
    (small n only) and serves as an independent cross-check.
    """
    if method == "enum":
        return _min_sizes_by_enumeration(g)
    if method != "dp":
        raise ValueError(f"unknown minimization method {method!r}")
    n = g.n
    if n > limit:
        raise BudgetExceededError(
            f"OBDD minimization subset DP on {n} variables", limit
        )
    cnf_of_graph(g)  # validate
    full = (1 << n) - 1
    size = 1 << n
    he = _internal_edge_table(g)
    adj = g.adj

    INF = 1 << 60
    gq = [INF] * size
    hr = [INF] * size
    gq[0] = 0
    hr[0] = 0
    for wmask in range(size):
        if gq[wmask] >= INF and hr[wmask] >= INF:
            continue
        comp = full ^ wmask
        tr = _live_trace_masks(g, wmask, comp)
        live = len(tr) - (0 if he[comp] else 1)
        base_q = gq[wmask] + live
        base_r = hr[wmask]
        rest = comp
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            tgt = wmask | b
            if base_q < gq[tgt]:
                gq[tgt] = base_q
            av = adj[v]
            dep = 0
            for t in tr:
                if t & b or av & comp & ~t:
                    dep += 1
            cand = base_r + dep
            if cand < hr[tgt]:
                hr[tgt] = cand

    def reconstruct(table, term) -> tuple[int, ...]:
        order_rev = []
        wmask = full
        while wmask:
            best_v = None
            for v in vertices_of(wmask):
                prev = wmask ^ (1 << v)
                if table[prev] >= INF:
                    continue
                if table[prev] + term(prev, v) == table[wmask]:
                    best_v = v
                    break
            if best_v is None:  # pragma: no cover - DP consistency
                raise AssertionError("order reconstruction failed")
            order_rev.append(best_v)
            wmask ^= 1 << best_v
        return tuple(reversed(order_rev))

    def live_term(prev: int, _v: int) -> int:
        comp = full ^ prev
        tr = _live_trace_masks(g, prev, comp)
        return len(tr) - (0 if he[comp] else 1)

    def dep_term(prev: int, v: int) -> int:
        comp = full ^ prev
        tr = _live_trace_masks(g, prev, comp)
        b = 1 << v
        av = adj[v]
        return sum(1 for t in tr if t & b or av & comp & ~t)

    return MinSizeReport(
        size_quasi=gq[full] + 2,
        size_total=hr[full] + 2,
        order_quasi=reconstruct(gq, live_term),
        order_total=reconstruct(hr, dep_term),
    )


def _min_sizes_by_enumeration(g: Graph) -> MinSizeReport:
    if g.n > BRUTE_ORDER_LIMIT:
        raise BudgetExceededError("OBDD minimization by enumeration",
                                  BRUTE_ORDER_LIMIT)
    best_q = best_t = None
    order_q = order_t = None
    for perm in itertools.permutations(range(g.n)):
        z = build_obdd(g, perm)
        if best_q is None or z.size_quasi < best_q:
            best_q, order_q = z.size_quasi, perm
        if best_t is None or z.size_total < best_t:
            best_t, order_t = z.size_total, perm
    return MinSizeReport(best_q, best_t, tuple(order_q), tuple(order_t))


# ---------------------------------------------------------------------------
# Bounds report: width vs. OBDD size on one instance.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrefixTraceRow:
    prefix_len: int
    prefix_width: int
    trace_count: int
    power_bound: int

    @property
    def ok(self) -> bool:
        return self.trace_count <= self.power_bound


@dataclass(frozen=True)
class ObddBoundsReport:
    n: int
    m: int
    lu: int
    lu_witness: tuple[int, ...]
    min_size_quasi: int
    min_size_total: int
    lower_bound: int
    upper_expression: int
    prefix_rows: tuple[PrefixTraceRow, ...]
    lower_ok: bool
    upper_mechanism_ok: bool
    level_contract_ok: bool
    equivalence_ok: bool
    counting_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.lower_ok
            and self.upper_mechanism_ok
            and self.level_contract_ok
            and self.equivalence_ok
            and self.counting_ok
        )


def matching_trace_family(
    g: Graph, u, *, variant: WidthVariant = WidthVariant.LU
) -> list[tuple[int, int]]:
    """Distinct-neighborhood family witnessing 2^r traces across a cut.

    Takes the endpoints of a maximum induced cut matching of the variant's
    derived graph and returns (subset mask, neighborhood mask) pairs for
    all subsets of those endpoints; raises if any two neighborhoods on the
    far side coincide (they cannot, each kept matching partner separates).
    """
    from .graph import mask_of, neighborhood_mask
    from .width import prefix_width_witness

    umask = mask_of(u, g.n)
    comp = g.full_mask() & ~umask
    _, witness = prefix_width_witness(g, u, variant)
    ends = [a if umask >> a & 1 else b for a, b in witness]
    family = []
    seen = set()
    for pick in range(1 << len(ends)):
        smask = 0
        for i, v in enumerate(ends):
            if pick >> i & 1:
                smask |= 1 << v
        tr = neighborhood_mask(g, smask) & comp
        if tr in seen:
            raise AssertionError(
                "matching endpoints produced coinciding neighborhoods"
            )
        seen.add(tr)
        family.append((smask, tr))
    return family


def obdd_bounds_report(
    g: Graph,
    *,
    width_report: WidthReport | None = None,
    min_sizes: MinSizeReport | None = None,
) -> ObddBoundsReport:
    """Exact width, exact minimal sizes, and every per-prefix check."""
    from .traces import trace_masks

    if width_report is None:
        width_report = exact_width(g, WidthVariant.LU)
    if min_sizes is None:
        min_sizes = min_obdd_size_exact(g)
    lu = width_report.value
    n = g.n

    rows = []
    wmask = 0
    for i, v in enumerate(width_report.witness):
        wmask |= 1 << v
        r_i = width_report.per_prefix[i]
        t_i = len(trace_masks(g, wmask))
        rows.append(PrefixTraceRow(i + 1, r_i, t_i, n ** (r_i + 1)))

    z = build_obdd(g, width_report.witness)
    level_ok = True
    wmask = 0
    for i in range(n):
        if z.level_live_counts[i] > subfunction_count(g, vertices_of(wmask)):
            level_ok = False
        wmask |= 1 << width_report.witness[i]
    z_min = build_obdd(g, min_sizes.order_quasi)
    equiv_ok = exhaustive_equiv_check(z, g) and exhaustive_equiv_check(z_min, g)
    expected = count_satisfying(g)
    counting_ok = (
        count_accepting(z) == expected and count_accepting(z_min) == expected
    )

    # The distinct-neighborhood family doubles as a check on matching
    # witnesses: it raises if any two subsets of the matching's endpoints
    # leave the same neighborhood on the far side.
    widest = max(range(n), key=lambda i: width_report.per_prefix[i])
    matching_trace_family(g, width_report.witness[: widest + 1])

    return ObddBoundsReport(
        n=n,
        m=g.m,
        lu=lu,
        lu_witness=width_report.witness,
        min_size_quasi=min_sizes.size_quasi,
        min_size_total=min_sizes.size_total,
        lower_bound=2**lu,
        upper_expression=n ** (lu + 2),
        prefix_rows=tuple(rows),
        lower_ok=2**lu <= min_sizes.size_quasi,
        upper_mechanism_ok=all(r.ok for r in rows),
        level_contract_ok=level_ok,
        equivalence_ok=equiv_ok,
        counting_ok=counting_ok,
    )


def obdd_to_dot(z: Obdd) -> str:
    """GraphViz rendering: solid edge = true branch, dashed = false,
    double-circled sinks."""
    lines = ["digraph obdd {"]
    lines.append('  false [label="0", shape=doublecircle];')
    lines.append('  true [label="1", shape=doublecircle];')

    def name(nid: int) -> str:
        if nid == FALSE_ID:
            return "false"
        if nid == TRUE_ID:
            return "true"
        return f"n{nid}"

    for nid, (var, lo, hi) in sorted(z.nodes.items()):
        lines.append(f'  n{nid} [label="{z.variable_name(var)}"];')
        lines.append(f"  n{nid} -> {name(hi)};")
        lines.append(f"  n{nid} -> {name(lo)} [style=dashed];")
    lines.append(f"  root [shape=point] ;")
    lines.append(f"  root -> {name(z.root)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
