"""Vertex orderings and certified minimum feedback arc sets.

An ordering is a tuple permutation of [0, n).  Its backward arcs (head placed
before tail) always form a feedback arc set, and the minimum of bas(D, order)
over all orderings is exactly fas(D), which is what the subset dynamic program
computes.  Weighted values are carried as exact Fractions: decimal weights
with at most six fraction digits are scaled to integers first, so optimality
claims never depend on float tolerance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .digraph import BudgetError, Digraph

WEIGHT_SCALE = 10**6

FAS_EXACT_MAX_N = 20


def _check_permutation(d: Digraph, order) -> None:
    if len(order) != d.n or sorted(order) != list(range(d.n)):
        raise ValueError("ordering is not a permutation of the vertex set")


def backward_arc_ids(d: Digraph, order) -> list:
    """Ids of arcs (u, v) whose head v is placed before their tail u."""
    _check_permutation(d, order)
    pos = [0] * d.n
    for i, v in enumerate(order):
        pos[v] = i
    return [a for a, (u, v) in enumerate(d.arcs) if pos[v] < pos[u]]


def bas(d: Digraph, order):
    """Backward-arc statistic of an ordering: count, or total weight if weighted."""
    ids = backward_arc_ids(d, order)
    if d.weights is None:
        return len(ids)
    return sum(d.weights[a] for a in ids)


@dataclass(frozen=True)
class FasCertificate:
    """Exact minimum feedback arc set answer with an attaining ordering.

    ``value`` is an int for unweighted inputs and an exact Fraction for
    weighted ones.  The backward arcs of ``order`` are a minimum FAS, listed in
    ``arc_ids``.
    """

    kind: str  # "unweighted" | "weighted"
    value: object
    order: tuple
    arc_ids: tuple
    note: str = ""

    @property
    def value_float(self) -> float:
        return float(self.value)


def _scaled_weights(d: Digraph):
    return [round(w * WEIGHT_SCALE) for w in d.weights]


def fas_exact(d: Digraph, max_n: int = FAS_EXACT_MAX_N) -> FasCertificate:
    """Minimum FAS size via the subset DP, with a witness ordering.

    f(S) = min over v in S of f(S - v) + (arcs from v into S - v): appending v
    to the placed prefix S - v makes exactly its arcs into the prefix backward.
    Refuses n > max_n rather than fall back to a heuristic.  Ties in the
    reconstruction take the lowest vertex id first.
    """
    value, order = _fas_dp(d, weighted=False, max_n=max_n)
    ids = tuple(backward_arc_ids(d, order))
    return FasCertificate("unweighted", value, tuple(order), ids)


def fas_weighted_exact(d: Digraph, max_n: int = FAS_EXACT_MAX_N) -> FasCertificate:
    """Minimum FAS weight (exact rational) via the same subset DP."""
    if d.weights is None:
        raise ValueError("fas_weighted_exact needs a weighted digraph")
    value, order = _fas_dp(d, weighted=True, max_n=max_n)
    ids = tuple(backward_arc_ids(d, order))
    return FasCertificate("weighted", Fraction(value, WEIGHT_SCALE), tuple(order), ids)


def _fas_dp(d: Digraph, weighted: bool, max_n: int):
    n = d.n
    if n > max_n:
        raise BudgetError(f"exact search refused for n={n} > {max_n}")
    if n == 0:
        return 0, ()
    if weighted:
        w = _scaled_weights(d)
        out_items = [[] for _ in range(n)]
        for a, (u, v) in enumerate(d.arcs):
            out_items[u].append((1 << v, w[a]))
    else:
        outmask = [0] * n
        for u, v in d.arcs:
            outmask[u] |= 1 << v

    size = 1 << n
    inf = float("inf")
    f = [0] * size
    choice = bytearray(size)
    for mask in range(1, size):
        best = inf
        best_v = 0
        rest = mask
        while rest:
            bit = rest & -rest
            v = bit.bit_length() - 1
            rest ^= bit
            prev = mask ^ bit
            if weighted:
                cost = f[prev]
                for nbit, nw in out_items[v]:
                    if nbit & prev:
                        cost += nw
            else:
                cost = f[prev] + (outmask[v] & prev).bit_count()
            # lowest vertex id wins ties, and bits are scanned low-to-high
            if cost < best:
                best = cost
                best_v = v
        f[mask] = best
        choice[mask] = best_v
    order = []
    mask = size - 1
    while mask:
        v = choice[mask]
        order.append(v)
        mask ^= 1 << v
    order.reverse()
    return f[size - 1], order


def fas_brute(d: Digraph, max_n: int = 9):
    """Independent factorial oracle: minimum bas over all n! orderings.

    Vectorized with numpy over the permutation list; shares no code with the
    DP.  Returns (value, order).  Weighted inputs are scored by exact scaled
    integers like the DP, and the value comes back as an int or Fraction.
    """
    import numpy as np

    n = d.n
    if n > max_n:
        raise BudgetError(f"brute force refused for n={n} > {max_n}")
    if n == 0:
        return 0, ()
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    pos = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    pos[rows, perms] = np.arange(n, dtype=np.int8)
    if d.weights is None:
        total = np.zeros(perms.shape[0], dtype=np.int64)
        for u, v in d.arcs:
            total += pos[:, v] < pos[:, u]
        best = int(total.argmin())
        return int(total[best]), tuple(int(x) for x in perms[best])
    scaled = _scaled_weights(d)
    total = np.zeros(perms.shape[0], dtype=np.int64)
    for a, (u, v) in enumerate(d.arcs):
        total += (pos[:, v] < pos[:, u]) * scaled[a]
    best = int(total.argmin())
    return Fraction(int(total[best]), WEIGHT_SCALE), tuple(int(x) for x in perms[best])


def fas_upper_heuristic(d: Digraph, seed: int = 0, restarts: int = 3) -> tuple:
    """Insertion plus adjacent-swap local search; deterministic per seed.

    Returns an ordering whose bas upper-bounds fas(D).  Used where exact
    search is refused.
    """
    from .digraph import is_acyclic

    acyclic, topo = is_acyclic(d)
    if acyclic:
        return tuple(topo)
    rng = random.Random(seed)
    weights = d.weights

    def arc_cost(a):
        return 1 if weights is None else weights[a]

    best_order = None
    best_val = None
    for _ in range(max(1, restarts)):
        verts = list(range(d.n))
        rng.shuffle(verts)
        order = []
        placed = set()
        for v in verts:
            out_w = {u: arc_cost(a) for u, a in d.out_arcs(v) if u in placed}
            in_w = {u: arc_cost(a) for u, a in d.in_arcs(v) if u in placed}
            # slot 0 puts v first: only placed in-neighbors become backward;
            # moving v past u trades an in-arc of v for an out-arc of v
            cost = sum(in_w.values())
            costs = [cost]
            for u in order:
                cost += out_w.get(u, 0.0) - in_w.get(u, 0.0)
                costs.append(cost)
            slot = min(range(len(costs)), key=lambda i: (costs[i], i))
            order.insert(slot, v)
            placed.add(v)
        # adjacent swap descent
        improved = True
        while improved:
            improved = False
            for i in range(len(order) - 1):
                u, v = order[i], order[i + 1]
                delta = 0.0
                for x, a in d.out_arcs(u):
                    if x == v:
                        delta += arc_cost(a)
                for x, a in d.out_arcs(v):
                    if x == u:
                        delta -= arc_cost(a)
                if delta < 0:
                    order[i], order[i + 1] = v, u
                    improved = True
        val = bas(d, order)
        if best_val is None or val < best_val:
            best_val = val
            best_order = tuple(order)
    return best_order
