"""Exact FAS decomposition number via good arc-coloring search and refutations.

A total coloring of A(D) with t colors is *good* when every directed cycle
carries all t colors, equivalently when every color class is a feedback arc
set.  The decomposition number of a non-acyclic digraph is the largest t
admitting a good t-coloring; it always lies between 2 and the directed girth.

The searcher keeps one remainder digraph per color (the arcs currently
assigned any other color).  A good coloring keeps every remainder acyclic, so
each remainder maintains a topological order with local repair on insertion
and a branch dies the moment a remainder closes a cycle.  Cycles of length
exactly t add a second pruning channel: their arcs must take pairwise distinct
colors, which is also what the clique refutations certify.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import (
    INFINITE,
    Digraph,
    cycle_arc_ids,
    enumerate_cycles,
    girth,
    is_acyclic,
)

DEFAULT_NODE_BUDGET = 10**8
TIGHT_CYCLE_CAP = 20000


def verify_good_coloring(d: Digraph, coloring: dict, t: int):
    """Check that every color class is a feedback arc set.

    Returns (True, None) or (False, (color, cycle)) where ``cycle`` is a
    directed cycle avoiding the offending color.  Partial colorings are
    rejected outright.
    """
    if set(coloring.keys()) != set(range(d.m)):
        raise ValueError("coloring must assign a color to every arc")
    bad = [c for c in coloring.values() if not (1 <= c <= t)]
    if bad:
        raise ValueError(f"color {bad[0]} outside [1, {t}]")
    for c in range(1, t + 1):
        keep = [uv for a, uv in enumerate(d.arcs) if coloring[a] != c]
        rest = Digraph(d.n, keep)
        ok, _ = is_acyclic(rest)
        if not ok:
            cyc = _some_cycle(rest)
            return False, (c, cyc)
    return True, None


def _some_cycle(d: Digraph):
    """Any directed cycle of a non-acyclic digraph, as a vertex tuple."""
    color = [0] * d.n
    parent = {}
    for root in range(d.n):
        if color[root]:
            continue
        stack = [(root, iter(d.out_neighbors(root)))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            found = False
            for v in it:
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, iter(d.out_neighbors(v))))
                    found = True
                    break
                if color[v] == 1:
                    cyc = [u]
                    while cyc[-1] != v:
                        cyc.append(parent[cyc[-1]])
                    cyc.reverse()
                    return tuple(cyc)
            if not found:
                color[u] = 2
                stack.pop()
    return None


class _PKOrder:
    """Incremental topological order with Pearce-Kelly local repair.

    Supports arc insertion (rejecting cycle-closing arcs) and arc removal.
    Removal never invalidates a topological order, so only insertions repair.
    """

    __slots__ = ("n", "pos", "out", "inn")

    def __init__(self, n: int):
        self.n = n
        self.pos = list(range(n))
        self.out = [set() for _ in range(n)]
        self.inn = [set() for _ in range(n)]

    def insert(self, u: int, v: int) -> bool:
        pos = self.pos
        if pos[u] > pos[v]:
            # affected region: forward from v up to pos[u], backward from u down to pos[v]
            fwd = []
            seen_f = {v}
            stack = [v]
            ub = pos[u]
            while stack:
                x = stack.pop()
                fwd.append(x)
                for y in self.out[x]:
                    if y not in seen_f and pos[y] <= ub:
                        if y == u:
                            return False
                        seen_f.add(y)
                        stack.append(y)
            bwd = []
            seen_b = {u}
            stack = [u]
            lb = pos[v]
            while stack:
                x = stack.pop()
                bwd.append(x)
                for y in self.inn[x]:
                    if y not in seen_b and pos[y] >= lb:
                        seen_b.add(y)
                        stack.append(y)
            if seen_f & seen_b:
                return False
            region = sorted(bwd + fwd, key=lambda x: pos[x])
            slots = sorted(pos[x] for x in region)
            bwd.sort(key=lambda x: pos[x])
            fwd.sort(key=lambda x: pos[x])
            for slot, x in zip(slots, bwd + fwd):
                pos[x] = slot
        self.out[u].add(v)
        self.inn[v].add(u)
        return True

    def remove(self, u: int, v: int) -> None:
        self.out[u].discard(v)
        self.inn[v].discard(u)


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a bounded good-coloring search."""

    status: str  # "sat" | "unsat" | "budget"
    coloring: dict | None
    nodes: int

    @property
    def sat(self) -> bool:
        return self.status == "sat"


def good_coloring_search(
    d: Digraph, t: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> SearchOutcome:
    """Backtracking search for a good t-arc-coloring of D.

    Complete: UNSAT is reported only after exhausting the branch space.  A
    budget exhaustion is reported as its own status, never as UNSAT.  Colors
    are canonicalized to appear in first-use order, which fixes the first
    assigned arc to color 1 and removes the t! relabeling symmetry.  Arcs are
    assigned in descending order of tight-cycle membership (fail-first), and a
    branch is cut when some remainder digraph closes a cycle or a tight cycle
    loses its last chance at pairwise-distinct colors.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    g = girth(d)
    if g is INFINITE:
        # every coloring of an acyclic digraph is good
        return SearchOutcome("sat", {a: 1 for a in range(d.m)}, 0)
    if g < t:
        return SearchOutcome("unsat", None, 0)
    m = d.m

    # short cycles drive both pruning channels: a cycle of length L needs all
    # t colors, so once distinct(assigned) + unassigned < t the branch is dead;
    # for L == t this is exactly pairwise-distinctness, used to filter
    # candidate colors up front.
    watch = enumerate_cycles(d, t + 3, cap=TIGHT_CYCLE_CAP)
    watch_ids = [cycle_arc_ids(d, cyc) for cyc in watch.cycles]
    tight_sets = [frozenset(ids) for cyc, ids in zip(watch.cycles, watch_ids) if len(cyc) == t]
    conflict = [set() for _ in range(m)]
    if not watch.truncated:
        for s in tight_sets:
            for a in s:
                conflict[a].update(s - {a})
    arc_cycles = [[] for _ in range(m)]
    for i, ids in enumerate(watch_ids):
        for a in ids:
            arc_cycles[a].append(i)
    counts = [[0] * (t + 1) for _ in watch_ids]
    distinct = [0] * len(watch_ids)
    unassigned = [len(ids) for ids in watch_ids]

    order = sorted(range(m), key=lambda a: (-len(arc_cycles[a]), a))

    remainders = [_PKOrder(d.n) for _ in range(t)]
    color_of = {}
    nodes = 0

    def assign(a: int, c: int) -> bool:
        u, v = d.arcs[a]
        done = []
        for cc in range(t):
            if cc == c - 1:
                continue
            if not remainders[cc].insert(u, v):
                for dd in done:
                    remainders[dd].remove(u, v)
                return False
            done.append(cc)
        ok = True
        touched = []
        for i in arc_cycles[a]:
            counts[i][c] += 1
            if counts[i][c] == 1:
                distinct[i] += 1
            unassigned[i] -= 1
            touched.append(i)
            if distinct[i] + unassigned[i] < t:
                ok = False
                break
        if not ok:
            for i in touched:
                counts[i][c] -= 1
                if counts[i][c] == 0:
                    distinct[i] -= 1
                unassigned[i] += 1
            for dd in done:
                remainders[dd].remove(u, v)
            return False
        color_of[a] = c
        return True

    def unassign(a: int, c: int) -> None:
        u, v = d.arcs[a]
        for cc in range(t):
            if cc != c - 1:
                remainders[cc].remove(u, v)
        for i in arc_cycles[a]:
            counts[i][c] -= 1
            if counts[i][c] == 0:
                distinct[i] -= 1
            unassigned[i] += 1
        del color_of[a]

    def candidates(a: int, used: int):
        banned = set()
        for b in conflict[a]:
            cb = color_of.get(b)
            if cb is not None:
                banned.add(cb)
        hi = min(t, used + 1)
        return [c for c in range(1, hi + 1) if c not in banned]

    def dfs(i: int, used: int):
        nonlocal nodes
        if i == m:
            return "sat"
        a = order[i]
        for c in candidates(a, used):
            nodes += 1
            if nodes > node_budget:
                return "budget"
            if not assign(a, c):
                continue
            res = dfs(i + 1, max(used, c))
            if res != "unsat":
                if res == "budget":
                    unassign(a, c)
                return res
            unassign(a, c)
        return "unsat"

    res = dfs(0, 0)
    if res == "sat":
        coloring = dict(color_of)
        ok, _ = verify_good_coloring(d, coloring, t)
        if not ok:  # pragma: no cover - would witness a search bug
            raise AssertionError("search produced a bad coloring")
        return SearchOutcome("sat", coloring, nodes)
    return SearchOutcome(res, None, nodes)


def fasd_brute(d: Digraph, t: int) -> bool:
    """Independent oracle: is there a good t-coloring?  Full t^m enumeration."""
    import itertools

    if is_acyclic(d)[0]:
        return True
    for combo in itertools.product(range(1, t + 1), repeat=d.m):
        coloring = dict(enumerate(combo))
        ok, _ = verify_good_coloring(d, coloring, t)
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# refutations


@dataclass(frozen=True)
class ConflictClique:
    """More than t arcs that pairwise share a cycle of length exactly t.

    On a t-cycle a good t-coloring is a bijection onto the colors, so arcs
    sharing such a cycle need distinct colors; a clique of size t+1 is
    therefore a proof that no good t-coloring exists.  ``witness`` maps each
    arc pair to a shared tight cycle.
    """

    t: int
    arcs: tuple
    witness: dict = field(hash=False)

    def check(self, d: Digraph) -> bool:
        if len(self.arcs) <= self.t:
            return False
        for i, a in enumerate(self.arcs):
            for b in self.arcs[i + 1 :]:
                key = (min(a, b), max(a, b))
                cyc = self.witness.get(key)
                if cyc is None or len(cyc) != self.t:
                    return False
                ids = set(cycle_arc_ids(d, cyc))
                if a not in ids or b not in ids:
                    return False
        return True


@dataclass(frozen=True)
class CountingBound:
    """Cycle-family double counting: every color needs >= 2 arcs of a fixed set.

    ``cycles`` is a family such that every color class of a good coloring must
    meet each member, while each arc of ``arcs`` lies on at most two members.
    The number of colors is then at most floor(|arcs| / 2).
    """

    cycles: tuple
    arcs: tuple
    bound: int


@dataclass(frozen=True)
class ShortCycleRefutation:
    """A directed cycle shorter than t cannot carry t distinct colors."""

    t: int
    cycle: tuple


EXHAUSTED = "exhausted"


def refute_by_conflict_clique(
    d: Digraph, t: int, cycle_cap: int = TIGHT_CYCLE_CAP
) -> ConflictClique | None:
    """Search a (t+1)-clique in the tight-cycle conflict graph.

    Exact branch-and-bound for target sizes up to 12, greedy beyond.  Returns
    None when no clique is found; that is not a satisfiability proof.
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    tight = enumerate_cycles(d, t, cap=cycle_cap)
    tight_cycles = [c for c in tight.cycles if len(c) == t]
    if not tight_cycles:
        return None
    pair_witness = {}
    neigh = {}
    for cyc in tight_cycles:
        ids = cycle_arc_ids(d, cyc)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                key = (min(a, b), max(a, b))
                pair_witness.setdefault(key, cyc)
                neigh.setdefault(a, set()).add(b)
                neigh.setdefault(b, set()).add(a)
    target = t + 1
    verts = sorted(a for a, s in neigh.items() if len(s) >= target - 1)
    if len(verts) < target:
        return None

    best: list = []
    if target <= 12:
        # exact: branch and bound over candidate sets
        def bb(clique, cands):
            nonlocal best
            if len(best) >= target:
                return
            if len(clique) + len(cands) < target:
                return
            if len(clique) == target:
                best = list(clique)
                return
            for i, v in enumerate(cands):
                bb(clique + [v], [u for u in cands[i + 1 :] if u in neigh[v]])
                if len(best) >= target:
                    return

        bb([], verts)
    else:
        # greedy from each seed vertex
        for seed in verts:
            clique = [seed]
            cands = sorted(neigh[seed])
            for v in cands:
                if all(v in neigh[u] for u in clique):
                    clique.append(v)
                if len(clique) == target:
                    break
            if len(clique) >= target:
                best = clique[:target]
                break
    if len(best) < target:
        return None
    arcs = tuple(sorted(best[:target]))
    witness = {}
    for i, a in enumerate(arcs):
        for b in arcs[i + 1 :]:
            witness[(a, b)] = pair_witness[(a, b)]
    clique = ConflictClique(t, arcs, witness)
    if not clique.check(d):  # pragma: no cover - would witness a builder bug
        raise AssertionError("constructed clique fails its own check")
    return clique


def verify_counting_bound(d: Digraph, g: int) -> CountingBound:
    """Check the three-cycle double count on the three-path gadget.

    Reconstructs the cycles pairing the defining paths, verifies that every
    path arc lies on exactly two of them and every connector arc on exactly
    one, and emits the bound floor(|A' u A''| / 2) = g - floor(g/4 - 1).
    """
    from .generators import dg_paths, gadget_dg

    if d != gadget_dg(g):
        raise ValueError("input is not the three-path gadget for this g")
    k = g // 2
    paths = dg_paths(g)
    cycles = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cycles.append(tuple(paths[i] + paths[j]))
    path_arcs = set()
    for p in paths:
        for x in range(k - 1):
            path_arcs.add(d.arc_id(p[x], p[x + 1]))
    connector_arcs = set(range(d.m)) - path_arcs
    count = {a: 0 for a in range(d.m)}
    for cyc in cycles:
        for a in cycle_arc_ids(d, cyc):
            count[a] += 1
    for a in path_arcs:
        if count[a] != 2:
            raise AssertionError("path arc not on exactly two of the cycles")
    for a in connector_arcs:
        if count[a] != 1:
            raise AssertionError("connector arc not on exactly one cycle")
    total = len(path_arcs) + len(connector_arcs)
    bound = total // 2
    if bound != g - (g // 4 - 1):
        raise AssertionError("arc-count arithmetic disagrees with the closed form")
    return CountingBound(tuple(cycles), tuple(sorted(count)), bound)


# ---------------------------------------------------------------------------
# the exact decomposition number


@dataclass(frozen=True)
class FasdCertificate:
    """Exact decomposition number with witness and refutation.

    ``value`` is INFINITE exactly for acyclic inputs.  Otherwise ``witness``
    is a good coloring with value colors and ``refutation`` explains why
    value + 1 fails: a ConflictClique, a ShortCycleRefutation (value equals
    the girth), or EXHAUSTED for a completed search.  When the budget runs out
    the value is None and (lo, hi) bracket the true answer.
    """

    value: object
    witness: dict | None
    refutation: object = None
    lo: int | None = None
    hi: int | None = None
    nodes: int = 0

    @property
    def complete(self) -> bool:
        return self.value is not None


def fasd_exact(
    d: Digraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    use_clique_refutation: bool = True,
) -> FasdCertificate:
    """Largest t admitting a good t-coloring, searched downward from the girth.

    Conflict-clique refutations run before each search level; when one exists
    the level is refuted without touching the branch space.  fasd >= 2 holds
    for every non-acyclic digraph (the backward and forward arcs of any
    ordering are both feedback arc sets), so the loop always terminates with a
    witness unless the budget is hit first.
    """
    ok, _ = is_acyclic(d)
    if ok:
        return FasdCertificate(INFINITE, None)
    g = girth(d)
    refutations = {}
    total_nodes = 0
    for t in range(g, 1, -1):
        if use_clique_refutation:
            clique = refute_by_conflict_clique(d, t)
            if clique is not None:
                refutations[t] = clique
                continue
        res = good_coloring_search(d, t, node_budget=node_budget)
        total_nodes += res.nodes
        if res.status == "sat":
            if t == g:
                refutation = ShortCycleRefutation(
                    g + 1, _shortest_cycle(d, g)
                )
            else:
                refutation = refutations.get(t + 1, EXHAUSTED)
            return FasdCertificate(t, res.coloring, refutation, nodes=total_nodes)
        if res.status == "budget":
            return FasdCertificate(
                None, None, refutations.get(t + 1), lo=2, hi=t, nodes=total_nodes
            )
        refutations[t] = EXHAUSTED
    raise AssertionError(
        "no good 2-coloring found for a non-acyclic digraph"
    )  # pragma: no cover


def _shortest_cycle(d: Digraph, g: int):
    return enumerate_cycles(d, g, cap=1).cycles[0]


def coloring_classes(coloring: dict, t: int):
    """Arc-id classes of a coloring, indexed by color 1..t."""
    classes = {c: [] for c in range(1, t + 1)}
    for a, c in sorted(coloring.items()):
        classes[c].append(a)
    return classes
