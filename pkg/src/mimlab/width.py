"""Linear width parameters over vertex orderings.

Three variants measure the largest induced matching across each prefix cut,
differing in which edges of the host graph can break a matching:

* LU    - matchings induced in the upper subgraph of the prefix (edges
          internal to the unprocessed side are ignored),
* LMIM  - matchings induced in the cut graph (only crossing edges matter),
* LSIM  - matchings induced in the graph itself.

A prefix's width depends only on the prefix as a set, which makes the exact
minimum over all n! orderings computable by a min-max dynamic program over
the 2^n prefix sets.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .graph import (
    Graph,
    _mis_exists,
    _mis_lex_witness,
    _mis_max,
    _Work,
    mask_of,
)

DEFAULT_EXACT_LIMIT = 24
DEFAULT_HEURISTIC_BUDGET = 200


class WidthVariant(enum.Enum):
    LU = "lu"
    LMIM = "lmim"
    LSIM = "lsim"


@dataclass(frozen=True)
class WidthReport:
    variant: WidthVariant
    value: int
    witness: tuple[int, ...]
    per_prefix: tuple[int, ...]
    exact: bool = True


def _edge_tables(g: Graph, wmask: int, variant: WidthVariant):
    """Crossing edges of the prefix cut plus forbidden-mask tables.

    The masks encode, per oriented crossing edge (u in prefix, v outside),
    which future u-side / v-side endpoints would conflict with it in the
    variant's derived graph; the derived graph itself is never built.
    """
    adj = g.adj
    comp = g.full_mask() & ~wmask
    us, vs, fua, fva = [], [], [], []
    m = wmask
    if variant is WidthVariant.LU:
        while m:
            b = m & -m
            m ^= b
            au = adj[b.bit_length() - 1]
            nb = au & comp
            while nb:
                c = nb & -nb
                nb ^= c
                av = adj[c.bit_length() - 1]
                us.append(b)
                vs.append(c)
                fua.append(au | av | b | c)
                fva.append(au | c)
    elif variant is WidthVariant.LMIM:
        while m:
            b = m & -m
            m ^= b
            au = adj[b.bit_length() - 1]
            nb = au & comp
            while nb:
                c = nb & -nb
                nb ^= c
                av = adj[c.bit_length() - 1]
                us.append(b)
                vs.append(c)
                fua.append(av | b)
                fva.append(au | c)
    else:
        while m:
            b = m & -m
            m ^= b
            au = adj[b.bit_length() - 1]
            nb = au & comp
            while nb:
                c = nb & -nb
                nb ^= c
                block = au | adj[c.bit_length() - 1] | b | c
                us.append(b)
                vs.append(c)
                fua.append(block)
                fva.append(block)
    return us, vs, fua, fva


def prefix_width(
    g: Graph,
    w: Iterable[int],
    variant: WidthVariant,
    *,
    budget: int | None = None,
) -> int:
    """Largest induced cut matching across the (w, rest) cut.

    Depends only on the set w.  Equals the exact maximum induced
    (w, rest)-matching of the upper subgraph (LU), the cut graph (LMIM),
    or g itself (LSIM).
    """
    return _prefix_width_mask(g, mask_of(w, g.n), variant, budget=budget)


def _prefix_width_mask(
    g: Graph, wmask: int, variant: WidthVariant, *, budget: int | None = None
) -> int:
    us, vs, fua, fva = _edge_tables(g, wmask, variant)
    work = _Work(budget, "prefix width search") if budget else None
    return _mis_max(us, vs, fua, fva, work)


def prefix_width_witness(
    g: Graph, w: Iterable[int], variant: WidthVariant
) -> tuple[int, list[tuple[int, int]]]:
    """Prefix width together with its lexicographically least witness."""
    wmask = mask_of(w, g.n)
    us, vs, fua, fva = _edge_tables(g, wmask, variant)
    edges = [
        (u.bit_length() - 1, v.bit_length() - 1) for u, v in zip(us, vs)
    ]
    best = _mis_max(us, vs, fua, fva)
    return best, _mis_lex_witness(edges, us, vs, fua, fva, best)


def width_of_ordering(
    g: Graph, pi: Sequence[int], variant: WidthVariant
) -> tuple[int, list[int]]:
    """Max prefix width along the ordering, plus all per-prefix widths."""
    _check_permutation(g, pi)
    per_prefix = []
    wmask = 0
    for v in pi:
        wmask |= 1 << v
        per_prefix.append(_prefix_width_mask(g, wmask, variant))
    return max(per_prefix, default=0), per_prefix


def _width_of_ordering_capped(
    g: Graph, pi: Sequence[int], variant: WidthVariant, cap: int
) -> int:
    """Width of the ordering, or `cap` as soon as it cannot beat `cap`."""
    best = 0
    wmask = 0
    for v in pi:
        wmask |= 1 << v
        us, vs, fua, fva = _edge_tables(g, wmask, variant)
        while best < cap and _mis_exists(us, vs, fua, fva, best + 1):
            best += 1
        if best >= cap:
            return cap
    return best


def _check_permutation(g: Graph, pi: Sequence[int]) -> None:
    if sorted(pi) != list(range(g.n)):
        raise ValueError("ordering is not a permutation of the vertices")


def exact_width(
    g: Graph,
    variant: WidthVariant,
    *,
    limit: int = DEFAULT_EXACT_LIMIT,
) -> WidthReport:
    """Exact width minimum over all vertex orderings, with a witness.

    Subset DP: f(W) = max(prefix_width(W), min over v in W of f(W - v)).
    The witness is reconstructed by always removing the smallest-index
    minimizing vertex, so it is canonical.  Guarded by `limit` on n
    (2^n table).
    """
    n = g.n
    if n > limit:
        raise BudgetExceededError(f"exact width DP on {n} vertices", limit)
    if n == 0:
        return WidthReport(variant, 0, (), ())
    adj = g.adj
    full = (1 << n) - 1
    size = 1 << n

    # Per-directed-edge forbidden masks, fixed for the whole DP.
    prec: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for u in range(n):
        au = adj[u]
        bu = 1 << u
        nb = au
        while nb:
            c = nb & -nb
            nb ^= c
            av = adj[c.bit_length() - 1]
            if variant is WidthVariant.LU:
                prec[u].append((c, au | av | bu | c, au | c))
            elif variant is WidthVariant.LMIM:
                prec[u].append((c, av | bu, au | c))
            else:
                block = au | av | bu | c
                prec[u].append((c, block, block))

    f = bytearray(size)
    for wmask in range(1, size):
        m = 255
        w = wmask
        while w:
            b = w & -w
            w ^= b
            t = f[wmask ^ b]
            if t < m:
                m = t
        comp = full ^ wmask
        us, vs, fua, fva = [], [], [], []
        w = wmask
        while w:
            b = w & -w
            w ^= b
            for c, fu_add, fv_add in prec[b.bit_length() - 1]:
                if c & comp:
                    us.append(b)
                    vs.append(c)
                    fua.append(fu_add)
                    fva.append(fv_add)
        if not us or not _mis_exists(us, vs, fua, fva, m + 1):
            f[wmask] = m
            continue
        k = m + 1
        while _mis_exists(us, vs, fua, fva, k + 1):
            k += 1
        f[wmask] = k

    value = f[full]
    order_rev = []
    wmask = full
    while wmask:
        best_v = -1
        best_f = 256
        w = wmask
        while w:
            b = w & -w
            w ^= b
            t = f[wmask ^ b]
            if t < best_f:
                best_f = t
                best_v = b.bit_length() - 1
        order_rev.append(best_v)
        wmask ^= 1 << best_v
    witness = tuple(reversed(order_rev))
    check, per_prefix = width_of_ordering(g, witness, variant)
    if check != value:  # pragma: no cover - internal consistency
        raise AssertionError("witness width disagrees with DP value")
    return WidthReport(variant, value, witness, tuple(per_prefix))


def heuristic_width_upper(
    g: Graph,
    variant: WidthVariant,
    seed: int = 0,
    budget: int = DEFAULT_HEURISTIC_BUDGET,
) -> tuple[int, tuple[int, ...]]:
    """Upper-bound the width by local search over orderings.

    Hill climbing on adjacent transpositions with seeded random restarts;
    the identity ordering is always the first candidate, and `budget`
    caps the number of ordering evaluations.  The result is the exact
    width of the best ordering found, hence always >= the true width.
    """
    n = g.n
    if n == 0:
        return 0, ()
    rng = random.Random(seed)
    best_order = list(range(n))
    best_value, _ = width_of_ordering(g, best_order, variant)
    evals = 1
    current = list(best_order)
    current_value = best_value
    while evals < budget and best_value > 0:
        improved = False
        for i in range(n - 1):
            if evals >= budget:
                break
            current[i], current[i + 1] = current[i + 1], current[i]
            value = _width_of_ordering_capped(g, current, variant,
                                              current_value)
            evals += 1
            if value < current_value:
                current_value = value
                improved = True
                if value < best_value:
                    best_value = value
                    best_order = list(current)
            else:
                current[i], current[i + 1] = current[i + 1], current[i]
        if not improved and evals < budget:
            current = list(range(n))
            rng.shuffle(current)
            current_value = _width_of_ordering_capped(g, current, variant,
                                                      best_value + 1)
            evals += 1
            if current_value < best_value:
                best_value = current_value
                best_order = list(current)
    return best_value, tuple(best_order)
