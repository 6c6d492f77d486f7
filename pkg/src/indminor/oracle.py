"""Exhaustive, exact reference procedures.

The induced-minor search assigns each host vertex, in ascending order, either
to one pattern bag or to "deleted", pruning on the way:

* a host edge between two bags whose pattern vertices are non-adjacent kills
  the branch immediately (exact-adjacency violation);
* a bag split into components one of which has no neighbor among the still
  unassigned vertices can never reconnect;
* more empty bags than unassigned vertices, or more missing pattern
  adjacencies than the remaining vertices could create, end the branch.

First-found witnesses are deterministic because vertices are processed
ascending and labels are tried in ascending order with "deleted" last.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .graphs import (
    ContractionTrace,
    Graph,
    GraphError,
    _component_masks,
    _is_connected_mask,
    _neighbor_mask,
    bits,
    mask_of,
    set_of,
)
from .models import Model, lift_through_trace

DEFAULT_MAX_HOST = 12


class SearchCapExceeded(RuntimeError):
    """The instance exceeds the configured exhaustive-search size cap."""


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def _pattern_twin_classes(pattern: Graph, pinned: set[int]) -> list[list[int]]:
    """Groups of interchangeable (twin) pattern vertices, pinned ones left out.

    Two pattern vertices are interchangeable when swapping them is an
    automorphism, i.e. their neighborhoods agree outside the pair.  Mutually
    overlapping pairs generate the full symmetric group on a class, so bags
    of a class may be forced to open in ascending order.
    """
    h = pattern.n
    parent = list(range(h))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in range(h):
        if p in pinned:
            continue
        for q in range(p + 1, h):
            if q in pinned:
                continue
            if pattern.adj[p] & ~(1 << q) == pattern.adj[q] & ~(1 << p):
                parent[find(p)] = find(q)
    groups: dict[int, list[int]] = {}
    for p in range(h):
        if p not in pinned:
            groups.setdefault(find(p), []).append(p)
    return [sorted(g) for g in groups.values() if len(g) > 1]


def _iter_models(
    host: Graph,
    pattern: Graph,
    forced: Sequence[int | None] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every bag-mask tuple forming a model, in deterministic order.

    ``forced[v]``, when given, pins host vertex ``v`` to that bag.  Bags of
    unpinned twin pattern vertices are interchangeable and are forced to
    open in ascending order (each model is enumerated once per canonical
    labeling).
    """
    n, h = host.n, pattern.n
    if h == 0:
        yield ()
        return
    if h > n:
        return
    hadj, padj = host.adj, pattern.adj
    label: list[int | None] = [None] * n
    bagmask = [0] * h
    realized = [0] * h
    pinned = {p for p in (forced or []) if p is not None}
    earlier_twins: list[list[int]] = [[] for _ in range(h)]
    for group in _pattern_twin_classes(pattern, pinned):
        for i, p in enumerate(group):
            earlier_twins[p] = group[:i]
    state = {"unrealized": pattern.edge_count, "empty": h}
    maxdeg = max((padj[p].bit_count() for p in range(h)), default=0)
    pattern_edges = pattern.edges()
    full = (1 << n) - 1

    def assign(v: int, p: int) -> list[tuple[int, int]] | None:
        """Try labeling v with bag p; return realized-adjacency undo log."""
        nb = hadj[v] & ((1 << v) - 1)
        for u in bits(nb):
            q = label[u]
            if q is not None and q >= 0 and q != p and not padj[p] >> q & 1:
                return None
        gained: list[tuple[int, int]] = []
        for u in bits(nb):
            q = label[u]
            if q is None or q < 0 or q == p:
                continue
            if not realized[p] >> q & 1:
                realized[p] |= 1 << q
                realized[q] |= 1 << p
                gained.append((p, q))
                state["unrealized"] -= 1
        if bagmask[p] == 0:
            state["empty"] -= 1
        bagmask[p] |= 1 << v
        label[v] = p
        return gained

    def undo(v: int, p: int, gained: list[tuple[int, int]]) -> None:
        label[v] = None
        bagmask[p] &= ~(1 << v)
        if bagmask[p] == 0:
            state["empty"] += 1
        for a, b in gained:
            realized[a] &= ~(1 << b)
            realized[b] &= ~(1 << a)
            state["unrealized"] += 1

    def viable(v: int, p: int) -> bool:
        future = full & ~((1 << (v + 1)) - 1)
        comps = _component_masks(hadj, bagmask[p])
        if len(comps) > 1:
            for comp in comps:
                if not _neighbor_mask(hadj, comp) & future:
                    return False
        remaining = n - v - 1
        if state["empty"] > remaining:
            return False
        if state["unrealized"] > maxdeg * remaining:
            return False
        return True

    def feasible(v: int) -> bool:
        """Global cut: inside host[future + bags], no bag may be split
        across components and unrealized pattern edges need a shared one."""
        region = full & ~((1 << (v + 1)) - 1)
        for bm in bagmask:
            region |= bm
        comps = _component_masks(hadj, region)
        if len(comps) == 1:
            return True
        where = [-1] * h
        for p in range(h):
            bm = bagmask[p]
            if not bm:
                continue
            seed = bm & -bm
            for i, c in enumerate(comps):
                if c & seed:
                    if bm & ~c:
                        return False
                    where[p] = i
                    break
        for p, q in pattern_edges:
            if realized[p] >> q & 1:
                continue
            if where[p] != -1 and where[q] != -1 and where[p] != where[q]:
                return False
        return True

    def walk(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            if state["empty"] == 0 and state["unrealized"] == 0:
                if all(_is_connected_mask(hadj, bm) for bm in bagmask):
                    yield tuple(bagmask)
            return
        want = forced[v] if forced is not None else None
        if want is None:
            # try deleting first so the first-found model is lean
            label[v] = -1
            remaining = n - v - 1
            if state["empty"] <= remaining and feasible(v):
                yield from walk(v + 1)
            label[v] = None
        choices: Iterable[int] = range(h) if want is None else (want,)
        for p in choices:
            if bagmask[p] == 0 and any(bagmask[q] == 0 for q in earlier_twins[p]):
                continue
            gained = assign(v, p)
            if gained is None:
                continue
            if viable(v, p) and feasible(v):
                yield from walk(v + 1)
            undo(v, p, gained)

    yield from walk(0)


def iter_induced_minor_models(host: Graph, pattern: Graph) -> Iterator[Model]:
    """All induced-minor models of ``pattern`` in ``host`` (no size cap),
    one representative per relabeling orbit of twin pattern vertices.

    Bag statistics (sizes, counts of non-trivial bags) are invariant under
    twin relabeling, so orbit representatives suffice for such checks.
    """
    for masks in _iter_models(host, pattern):
        yield Model(pattern, host, tuple(set_of(m) for m in masks))


def induced_minor_exhaustive(
    host: Graph, pattern: Graph, max_host: int = DEFAULT_MAX_HOST
) -> Model | None:
    """First induced-minor model under the deterministic order, or ``None``.

    Exact; refuses hosts above ``max_host`` instead of truncating the search.
    """
    if host.n > max_host:
        raise SearchCapExceeded(
            f"host has {host.n} vertices, exhaustive cap is {max_host}"
        )
    for model in iter_induced_minor_models(host, pattern):
        return model
    return None


def induced_subgraph_search(
    host: Graph, pattern: Graph
) -> tuple[int, ...] | None:
    """Injective map realizing ``pattern`` as an induced subgraph, or ``None``.

    Backtracking with adjacency and degree pruning; exact.  The returned
    tuple maps pattern vertex ``u`` to host vertex ``map[u]``.
    """
    n, h = host.n, pattern.n
    if h > n:
        return None
    order = sorted(range(h), key=lambda u: (-pattern.adj[u].bit_count(), u))
    image = [-1] * h
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == h:
            return True
        u = order[i]
        pu = pattern.adj[u]
        du = pu.bit_count()
        for x in range(n):
            if used >> x & 1 or host.adj[x].bit_count() < du:
                continue
            ok = True
            for j in range(i):
                w = order[j]
                if bool(pu >> w & 1) != bool(host.adj[x] >> image[w] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[u] = x
            used |= 1 << x
            if place(i + 1):
                return True
            used &= ~(1 << x)
            image[u] = -1
        return False

    if place(0):
        return tuple(image)
    return None


def rooted_clique_minor(
    host: Graph, roots: Sequence[Iterable[int]]
) -> Model | None:
    """A model of ``K_k`` in ``host`` whose bag ``i`` contains ``roots[i]``.

    For complete patterns, minor and induced-minor models coincide, so the
    result is a valid :class:`Model`.  Root sets may be empty (an unrooted
    bag); they must be pairwise disjoint.  Exact backtracking, exponential in
    the worst case; meant for desk-scale hosts.
    """
    k = len(roots)
    if k < 1:
        raise GraphError("at least one root set required")
    forced: list[int | None] = [None] * host.n
    seen = 0
    for i, r in enumerate(roots):
        m = mask_of(r)
        if m & ~host.full_mask():
            raise GraphError("root vertex out of range")
        if m & seen:
            raise GraphError("root sets overlap")
        seen |= m
        for v in bits(m):
            forced[v] = i
    pattern = complete_graph(k)
    for masks in _iter_models(host, pattern, forced):
        return Model(pattern, host, tuple(set_of(m) for m in masks))
    return None


def _find_cycle(g: Graph) -> list[int] | None:
    """Vertices of some cycle, in cyclic order; deterministic DFS."""
    parent = [-2] * g.n
    for root in range(g.n):
        if parent[root] != -2:
            continue
        parent[root] = -1
        stack = [(root, iter(bits(g.adj[root])))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if parent[w] == -2:
                    parent[w] = v
                    stack.append((w, iter(bits(g.adj[w]))))
                    advanced = True
                    break
                if w != parent[v]:
                    # back edge closes a cycle through the tree path v..w
                    cyc = [v]
                    x = v
                    while x != w:
                        x = parent[x]
                        cyc.append(x)
                    return cyc
            if not advanced:
                stack.pop()
    return None


def _series_parallel_reduce(
    g: Graph,
) -> tuple[Graph, tuple[frozenset[int], ...]] | None:
    """Exhaustively delete degree-<=1 vertices and bypass degree-2 vertices.

    Returns the stuck graph (minimum degree >= 3) with the preimage sets of
    its vertices, or ``None`` when the graph reduces away completely, which
    happens exactly when it has no K_4 minor.
    """
    alive = set(range(g.n))
    adj = {v: set(bits(g.adj[v])) for v in range(g.n)}
    group = {v: {v} for v in range(g.n)}
    while True:
        low = None
        for v in sorted(alive):
            if len(adj[v]) <= 2:
                low = v
                break
        if low is None:
            break
        nbrs = sorted(adj[low])
        if len(nbrs) <= 1:
            for u in nbrs:
                adj[u].discard(low)
            alive.discard(low)
            del adj[low], group[low]
        else:
            a, b = nbrs
            keep = min(a, b)
            group[keep] |= group[low]
            adj[a].add(b)
            adj[b].add(a)
            adj[a].discard(low)
            adj[b].discard(low)
            alive.discard(low)
            del adj[low], group[low]
    if not alive:
        return None
    keep = sorted(alive)
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u in keep for v in adj[u] if u < v]
    stuck = Graph.from_edges(len(keep), edges)
    preimages = tuple(frozenset(group[v]) for v in keep)
    return stuck, preimages


def clique_minor_test(
    host: Graph, k: int, max_host: int = DEFAULT_MAX_HOST
) -> Model | None:
    """A model of ``K_k`` in ``host`` or ``None``; exact.

    k <= 2 is a direct check, k = 3 finds a cycle and splits it into three
    arcs, k = 4 runs the series-parallel reduction (stuck with minimum degree
    >= 3 iff a K_4 minor exists) and recovers a witness on the stuck graph,
    k >= 5 delegates to the rooted search under the size cap.
    """
    if k < 1:
        raise GraphError("k must be positive")
    if k == 1:
        if host.n == 0:
            return None
        return Model.from_bags(complete_graph(1), host, [{0}])
    if k == 2:
        for u in range(host.n):
            if host.adj[u]:
                v = next(bits(host.adj[u]))
                return Model.from_bags(complete_graph(2), host, [{u}, {v}])
        return None
    if k == 3:
        cyc = _find_cycle(host)
        if cyc is None:
            return None
        bags = [{cyc[0]}, {cyc[1]}, set(cyc[2:])]
        return Model.from_bags(complete_graph(3), host, bags)
    if k == 4:
        reduced = _series_parallel_reduce(host)
        if reduced is None:
            return None
        stuck, preimages = reduced
        inner = rooted_clique_minor(stuck, [(), (), (), ()])
        assert inner is not None  # min degree >= 3 guarantees a K_4 minor
        trace = ContractionTrace(host, stuck, preimages, allows_deletions=True)
        return lift_through_trace(inner, trace)
    if host.n > max_host:
        raise SearchCapExceeded(
            f"k={k} clique search needs the exhaustive engine; host has "
            f"{host.n} vertices, cap is {max_host}"
        )
    return rooted_clique_minor(host, [()] * k)
