"""Oriented graphs and tournaments on at most 64 vertices.

A graph is stored as a tuple of out-neighbour bitmasks: bit ``j`` of
``out[i]`` is set iff the arc ``i -> j`` is present.  Values are immutable;
every operation returns a new graph.

Named constructions use dense 0-based labels.  Where the usual labelling is
1-based (``v_1 .. v_k``, ``w_1 .. w_5``), label ``v_i`` is stored as vertex
``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from heapq import heapify, heappop, heappush
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import CyclicGraphError, GraphError, NotTournamentError, SizeCapError

MAX_VERTICES = 64


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Arc(NamedTuple):
    source: int
    target: int


def _check_rows(n: int, out: Sequence[int]) -> None:
    if not 0 <= n <= MAX_VERTICES:
        raise SizeCapError(f"graphs are limited to {MAX_VERTICES} vertices, got {n}")
    if len(out) != n:
        raise GraphError(f"expected {n} adjacency rows, got {len(out)}")
    full = (1 << n) - 1
    for v, row in enumerate(out):
        if row < 0 or row & ~full:
            raise GraphError(f"vertex {v} has an out-neighbour outside 0..{n - 1}")
        if row >> v & 1:
            raise GraphError(f"self-loop at vertex {v}")
    for v, row in enumerate(out):
        for u in iter_bits(row):
            if u > v and out[u] >> v & 1:
                raise GraphError(f"arcs {v}->{u} and {u}->{v} both present (antisymmetry)")


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """Loop-free antisymmetric digraph with bitmask out-adjacency rows."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "out", tuple(self.out))
        _check_rows(self.n, self.out)

    @classmethod
    def _trusted(cls, n: int, out: Sequence[int]):
        # Skips validation; only for rows produced by code that preserves the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "out", tuple(out))
        return g

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self):
        return hash((self.n, self.out))

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}(n={self.n}, arcs={[tuple(a) for a in self.arcs()]})"

    def __len__(self):
        return self.n

    @cached_property
    def inn(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for v, row in enumerate(self.out):
            for u in iter_bits(row):
                rows[u] |= 1 << v
        return tuple(rows)

    @cached_property
    def num_arcs(self) -> int:
        return sum(row.bit_count() for row in self.out)

    @cached_property
    def is_tournament(self) -> bool:
        full = (1 << self.n) - 1
        inn = self.inn
        return all((self.out[v] | inn[v]) == full & ~(1 << v) for v in range(self.n))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def arcs(self) -> list[Arc]:
        return [Arc(v, u) for v in range(self.n) for u in iter_bits(self.out[v])]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.inn[v]))

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def max_out_degree(self) -> int:
        return max((row.bit_count() for row in self.out), default=0)

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.inn[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out[v]]

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of the vertices")
        rows = [0] * self.n
        for v, row in enumerate(self.out):
            nv = 0
            for u in iter_bits(row):
                nv |= 1 << perm[u]
            rows[perm[v]] = nv
        return _wrap(self, rows)

    def to_hex(self) -> str:
        from .formats import to_hex

        return to_hex(self)

    def to_digraph6(self) -> str:
        from .formats import to_digraph6

        return to_digraph6(self)


class Tournament(OrientedGraph):
    """An oriented graph with exactly one arc between every pair of vertices."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_tournament:
            raise NotTournamentError("some vertex pair carries no arc")


def as_tournament(g: OrientedGraph) -> Tournament:
    if isinstance(g, Tournament):
        return g
    if not g.is_tournament:
        raise NotTournamentError("graph is not a tournament")
    return Tournament._trusted(g.n, g.out)


def _wrap(template: OrientedGraph, rows: Sequence[int]) -> OrientedGraph:
    """Build a graph of the same class as ``template`` from trusted rows."""
    return type(template)._trusted(len(rows), rows)


def _from_rows(n: int, rows: Sequence[int]) -> OrientedGraph:
    g = OrientedGraph(n, tuple(rows))
    if n and g.is_tournament:
        return Tournament._trusted(n, g.out)
    return g


def _require_tournament(g: OrientedGraph) -> None:
    if not g.is_tournament:
        raise NotTournamentError("operation requires a tournament")


def _cap(n: int) -> None:
    if n > MAX_VERTICES:
        raise SizeCapError(f"result would have {n} vertices (cap {MAX_VERTICES})")


# ---------------------------------------------------------------------------
# constructors


def make_oriented(n: int, arcs: Iterable[Sequence[int]]) -> OrientedGraph:
    """Build a graph on ``n`` vertices holding exactly the given arcs."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    _cap(n)
    rows = [0] * n
    for arc in arcs:
        u, v = arc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"arc {u}->{v} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if rows[v] >> u & 1:
            raise GraphError(f"arcs {u}->{v} and {v}->{u} both present (antisymmetry)")
        rows[u] |= 1 << v
    return OrientedGraph(n, tuple(rows))


def empty_graph(n: int) -> OrientedGraph:
    _cap(n)
    return OrientedGraph(n, (0,) * n)


def transitive_tournament(k: int) -> Tournament:
    if k < 0:
        raise GraphError("k must be non-negative")
    _cap(k)
    rows = [((1 << k) - 1) & ~((1 << (i + 1)) - 1) for i in range(k)]
    return Tournament(k, tuple(rows))


def directed_path(k: int) -> OrientedGraph:
    if k < 1:
        raise GraphError("a directed path needs at least one vertex")
    _cap(k)
    return _from_rows(k, [1 << (i + 1) if i + 1 < k else 0 for i in range(k)])


def directed_cycle(k: int) -> OrientedGraph:
    if k < 3:
        raise GraphError("a directed cycle needs at least three vertices")
    _cap(k)
    return _from_rows(k, [1 << ((i + 1) % k) for i in range(k)])


def bipartite_oriented(s: int, t: int) -> OrientedGraph:
    """B_{s,t}: every vertex of the s-part points at every vertex of the t-part."""
    if s < 1 or t < 1:
        raise GraphError("both parts need at least one vertex")
    _cap(s + t)
    target = ((1 << t) - 1) << s
    return OrientedGraph(s + t, tuple([target] * s + [0] * t))


def power_path(k: int, ell: int) -> OrientedGraph:
    """Directed path on ``k`` vertices plus arcs ``i -> i + ell``."""
    if not 2 <= ell < k:
        raise GraphError(f"power_path needs 2 <= ell < k, got k={k}, ell={ell}")
    _cap(k)
    arcs = [(i, i + 1) for i in range(k - 1)] + [(i, i + ell) for i in range(k - ell)]
    return make_oriented(k, arcs)


def power_cycle(k: int, ell: int) -> OrientedGraph:
    """Directed cycle on ``k`` vertices plus arcs ``i -> i + ell (mod k)``.

    Coinciding arcs are merged; opposite arcs on one pair (for instance
    ``ell = k - 1`` or ``2 * ell = k``) raise :class:`GraphError`.
    """
    if not 2 <= ell < k:
        raise GraphError(f"power_cycle needs 2 <= ell < k, got k={k}, ell={ell}")
    _cap(k)
    arcs = {(i, (i + 1) % k) for i in range(k)} | {(i, (i + ell) % k) for i in range(k)}
    g = make_oriented(k, sorted(arcs))
    return as_tournament(g) if g.is_tournament else g


def composition(g: OrientedGraph, h: OrientedGraph) -> OrientedGraph:
    """G ⊙ H: vertex ``(a, b)`` is stored as ``a * |H| + b``."""
    m = h.n
    _cap(g.n * m)
    block = (1 << m) - 1
    rows = []
    for a in range(g.n):
        between = 0
        for c in iter_bits(g.out[a]):
            between |= block << (c * m)
        for b in range(m):
            rows.append(between | (h.out[b] << (a * m)))
    if g.is_tournament and h.is_tournament and g.n and m:
        return Tournament._trusted(g.n * m, rows)
    return OrientedGraph._trusted(g.n * m, rows)


def arrow_join(g: OrientedGraph, h: OrientedGraph) -> OrientedGraph:
    """G ⇒ H: disjoint union with every arc from the G side to the H side."""
    n = g.n + h.n
    _cap(n)
    right = ((1 << h.n) - 1) << g.n
    rows = [row | right for row in g.out] + [row << g.n for row in h.out]
    if g.is_tournament and h.is_tournament and n:
        return Tournament._trusted(n, rows)
    return OrientedGraph._trusted(n, rows)


def blow_up(g: OrientedGraph, sizes: Sequence[int]) -> OrientedGraph:
    """Replace vertex ``v`` by an independent set of ``sizes[v]`` vertices (stored consecutively)."""
    if len(sizes) != g.n:
        raise GraphError("need one blob size per vertex")
    if any(s < 1 for s in sizes):
        raise GraphError("blob sizes must be positive")
    total = sum(sizes)
    _cap(total)
    offsets = []
    acc = 0
    for s in sizes:
        offsets.append(acc)
        acc += s
    blobs = [((1 << s) - 1) << off for s, off in zip(sizes, offsets)]
    rows = []
    for v in range(g.n):
        row = 0
        for u in iter_bits(g.out[v]):
            row |= blobs[u]
        rows.extend([row] * sizes[v])
    return _from_rows(total, rows)


def flip_vertex(t: OrientedGraph, v: int) -> Tournament:
    """Reverse every arc incident to ``v``."""
    _require_tournament(t)
    if not 0 <= v < t.n:
        raise GraphError(f"vertex {v} out of range")
    bit = 1 << v
    old_out, old_in = t.out[v], t.inn[v]
    rows = list(t.out)
    for u in range(t.n):
        if u == v:
            continue
        if old_out >> u & 1:
            rows[u] |= bit
        else:
            rows[u] &= ~bit
    rows[v] = old_in
    return Tournament._trusted(t.n, rows)


def reverse(g: OrientedGraph) -> OrientedGraph:
    return _wrap(g, g.inn)


def induced(g: OrientedGraph, subset: Iterable[int]) -> OrientedGraph:
    """Induced subgraph on ``subset``, reindexed in increasing vertex order."""
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(verts)}
    sel = mask_of(verts)
    rows = []
    for v in verts:
        row = 0
        for u in iter_bits(g.out[v] & sel):
            row |= 1 << pos[u]
        rows.append(row)
    return _from_rows(len(verts), rows)


# ---------------------------------------------------------------------------
# acyclicity and paths


def topological_order(g: OrientedGraph) -> list[int]:
    """Kahn's algorithm, always releasing the smallest available vertex.

    Raises CyclicGraphError if ``g`` has a directed cycle.
    """
    indeg = [row.bit_count() for row in g.inn]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapify(heap)
    order = []
    while heap:
        v = heappop(heap)
        order.append(v)
        for u in iter_bits(g.out[v]):
            indeg[u] -= 1
            if indeg[u] == 0:
                heappush(heap, u)
    if len(order) != g.n:
        raise CyclicGraphError("graph contains a directed cycle")
    return order


def is_acyclic(g: OrientedGraph) -> bool:
    try:
        topological_order(g)
    except CyclicGraphError:
        return False
    return True


def levels_from_sinks(g: OrientedGraph) -> list[int]:
    """Number of arcs on a longest directed path starting at each vertex."""
    level = [0] * g.n
    for v in reversed(topological_order(g)):
        best = -1
        for u in iter_bits(g.out[v]):
            if level[u] > best:
                best = level[u]
        level[v] = best + 1
    return level


def longest_path_order(g: OrientedGraph) -> int:
    """p(G): vertex count of a longest directed path; 0 for the empty graph."""
    if g.n == 0:
        return 0
    return max(levels_from_sinks(g)) + 1


def reachability(g: OrientedGraph) -> list[int]:
    """``reach[v]`` = mask of vertices reachable from ``v`` by a path of length >= 1."""
    reach = list(g.out)
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            r = reach[v]
            acc = r
            for u in iter_bits(r):
                acc |= reach[u]
            if acc != r:
                reach[v] = acc
                changed = True
    return reach


def strongly_connected_components(g: OrientedGraph) -> list[list[int]]:
    """Components listed in topological order of the condensation.

    Ties between incomparable components go to the one holding the smaller
    vertex, so the output is deterministic; for tournaments the order is forced.
    """
    reach = reachability(g)
    comp_of = [-1] * g.n
    comps: list[int] = []
    for v in range(g.n):
        if comp_of[v] >= 0:
            continue
        members = 1 << v
        for u in iter_bits(reach[v]):
            if reach[u] >> v & 1:
                members |= 1 << u
        for u in iter_bits(members):
            comp_of[u] = len(comps)
        comps.append(members)
    k = len(comps)
    succ = [set() for _ in range(k)]
    indeg = [0] * k
    for v in range(g.n):
        for u in iter_bits(g.out[v]):
            a, b = comp_of[v], comp_of[u]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    heap = [(comps[c] & -comps[c], c) for c in range(k) if indeg[c] == 0]
    heapify(heap)
    ordered = []
    while heap:
        _, c = heappop(heap)
        ordered.append(sorted(iter_bits(comps[c])))
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heappush(heap, (comps[d] & -comps[d], d))
    return ordered


def is_strongly_connected(g: OrientedGraph) -> bool:
    return g.n > 0 and len(strongly_connected_components(g)) == 1


def hamiltonian_path(t: OrientedGraph) -> list[int]:
    """Hamiltonian path of a tournament by insertion.

    Each new vertex goes in front of the first path vertex it beats, which
    keeps every consecutive pair an arc.
    """
    _require_tournament(t)
    path: list[int] = []
    for v in range(t.n):
        for i, u in enumerate(path):
            if t.out[v] >> u & 1:
                path.insert(i, v)
                break
        else:
            path.append(v)
    return path


def is_directed_path(g: OrientedGraph, order: Sequence[int]) -> bool:
    if len(set(order)) != len(order):
        return False
    return all(g.out[a] >> b & 1 for a, b in zip(order, order[1:]))


# ---------------------------------------------------------------------------
# named tournaments


def tilde_t7() -> Tournament:
    """TT_6 on v_1..v_6 plus v_7 with out-neighbourhood {v_1, v_2, v_4} (0-based 6 -> {0, 1, 3})."""
    arcs = [(i, j) for i, j in combinations(range(6), 2)]
    outs = {0, 1, 3}
    arcs += [(6, u) if u in outs else (u, 6) for u in range(6)]
    return as_tournament(make_oriented(7, arcs))


def _reverse_pair(t: OrientedGraph, a: int, b: int) -> Tournament:
    rows = list(t.out)
    if rows[a] >> b & 1:
        rows[a] &= ~(1 << b)
        rows[b] |= 1 << a
    elif rows[b] >> a & 1:
        rows[b] &= ~(1 << a)
        rows[a] |= 1 << b
    else:
        raise GraphError(f"no arc between {a} and {b}")
    return as_tournament(OrientedGraph(t.n, tuple(rows)))


def special_t(which: str) -> Tournament:
    """The five strongly connected 5-vertex tournaments T_a .. T_e.

    Labels w_1..w_5 map to vertices 0..4.  T_a / T_b reverse the pair
    {w_1, w_4} of C_5^(3) / C_5^(2); T_c reverses the source-sink arc of TT_5;
    T_d and T_e reverse {w_3, w_5} and {w_2, w_4} of T_c.
    """
    which = which.lower().removeprefix("t").removeprefix("_")
    if which == "a":
        return _reverse_pair(power_cycle(5, 3), 0, 3)
    if which == "b":
        return _reverse_pair(power_cycle(5, 2), 0, 3)
    tc = _reverse_pair(transitive_tournament(5), 0, 4)
    if which == "c":
        return tc
    if which == "d":
        return _reverse_pair(tc, 2, 4)
    if which == "e":
        return _reverse_pair(tc, 1, 3)
    raise GraphError(f"unknown special tournament {which!r}; expected one of a-e")


def rotational_11() -> Tournament:
    """Vertices v_0..v_10 with arcs v_i -> v_{i+j mod 11}, j in {1, 3, 4, 5, 9}."""
    steps = (1, 3, 4, 5, 9)
    return as_tournament(make_oriented(11, [(i, (i + j) % 11) for i in range(11) for j in steps]))


def knn_orientation(n: int) -> OrientedGraph:
    """Acyclic orientation of K_{n,n} with a Hamiltonian directed path.

    Vertices a_0..a_{n-1} are 0..n-1 and b_0..b_{n-1} are n..2n-1, with
    ``a_i -> b_j`` for ``j >= i`` and ``b_j -> a_i`` for ``i > j``.
    """
    if not 1 <= n <= 32:
        if n > 32:
            raise SizeCapError("knn_orientation is limited to n <= 32")
        raise GraphError("n must be positive")
    arcs = []
    for i in range(n):
        for j in range(n):
            arcs.append((i, n + j) if j >= i else (n + j, i))
    return make_oriented(2 * n, arcs)


# ---------------------------------------------------------------------------
# counting and clique numbers


def count_c3(t: OrientedGraph) -> int:
    """Number of directed triangles of a tournament, C(n,3) - sum C(d+(v), 2)."""
    _require_tournament(t)
    return comb(t.n, 3) - sum(comb(row.bit_count(), 2) for row in t.out)


def count_c3_brute(t: OrientedGraph) -> int:
    out = t.out
    total = 0
    for a, b, c in combinations(range(t.n), 3):
        if (out[a] >> b & 1 and out[b] >> c & 1 and out[c] >> a & 1) or (
            out[a] >> c & 1 and out[c] >> b & 1 and out[b] >> a & 1
        ):
            total += 1
    return total


OMEGA_CAP = 24


def _closeness(out: Sequence[int], inn: Sequence[int], within: int) -> list[int]:
    """Undirected 'joined by a directed path of length <= 2' relation, middles in ``within``."""
    n = len(out)
    close = []
    for v in range(n):
        two = 0
        for w in iter_bits(out[v] & within):
            two |= out[w]
        for w in iter_bits(inn[v] & within):
            two |= inn[w]
        close.append((out[v] | inn[v] | two) & ~(1 << v))
    return close


def _is_o_clique(g: OrientedGraph, subset: int) -> bool:
    close = _closeness(g.out, g.inn, subset)
    return all((close[v] | (1 << v)) & subset == subset for v in iter_bits(subset))


def is_o_clique(g: OrientedGraph) -> bool:
    return _is_o_clique(g, g.full_mask)


def _omega(g: OrientedGraph, absolute: bool) -> int:
    if g.n > OMEGA_CAP:
        raise SizeCapError(f"clique-number search is limited to {OMEGA_CAP} vertices")
    if g.n == 0:
        return 0
    close = _closeness(g.out, g.inn, g.full_mask)
    best = 1

    # Every candidate set is a clique of the closeness relation of the whole
    # graph; for the absolute number each clique must also pass the induced test.
    def grow(chosen: int, size: int, cand: int) -> None:
        nonlocal best
        if size > best and (not absolute or _is_o_clique(g, chosen)):
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(chosen | low, size + 1, cand & close[v])

    grow(0, 0, g.full_mask)
    return best


def omega_ao(g: OrientedGraph) -> int:
    """Largest S whose induced subgraph is an o-clique."""
    return _omega(g, absolute=True)


def omega_ro(g: OrientedGraph) -> int:
    """Largest S whose members are pairwise joined in ``g`` by a path of length <= 2."""
    return _omega(g, absolute=False)


def dominator_of(g: OrientedGraph, subset: int) -> int | None:
    """Least vertex whose out-neighbourhood contains the vertex mask ``subset``."""
    for v in range(g.n):
        if g.out[v] & subset == subset:
            return v
    return None
