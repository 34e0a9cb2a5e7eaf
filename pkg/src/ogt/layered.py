"""Layered acyclic graphs, the Q gadget and maps into tournaments.

A graph is l-layered when every vertex that is neither a source nor a sink has
a single residue mod l for the lengths of all source-to-it paths, and a single
residue for all it-to-sink paths.  Residue sets are computed by a forward and
a backward pass over a topological order with l-bit masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CyclicGraphError, GraphError, SizeCapError
from .graphs import (
    OrientedGraph,
    _from_rows,
    arrow_join,
    directed_cycle,
    empty_graph,
    hamiltonian_path,
    is_acyclic,
    iter_bits,
    longest_path_order,
    strongly_connected_components,
    topological_order,
)
from .hom import Homomorphism, certify, hom_exists, level_map

SOURCE, SINK, ISOLATED = "source", "sink", "isolated"


def _rot(mask: int, ell: int) -> int:
    return ((mask << 1) | (mask >> (ell - 1))) & ((1 << ell) - 1)


def _residues(mask: int) -> list[int]:
    return list(iter_bits(mask))


@dataclass(frozen=True)
class LayerAnalysis:
    """Residue masks per vertex; bit r set means some path length is r mod ell."""

    ell: int
    from_source: tuple[int, ...]
    to_sink: tuple[int, ...]
    kinds: tuple[str | None, ...]

    @property
    def failure(self) -> tuple[int, list[int], list[int]] | None:
        """(vertex, source residues, sink residues) of the first untypable vertex."""
        for v, kind in enumerate(self.kinds):
            if kind is None and (self.from_source[v].bit_count() != 1 or self.to_sink[v].bit_count() != 1):
                return v, _residues(self.from_source[v]), _residues(self.to_sink[v])
        return None


@dataclass(frozen=True)
class LayerTyping:
    """Per-vertex tag: ``source``, ``sink``, ``isolated`` or a pair (i, j) of residues."""

    ell: int
    tags: tuple

    def type_of(self, v: int):
        return self.tags[v]


def analyze_layers(h: OrientedGraph, ell: int) -> LayerAnalysis:
    if ell < 2:
        raise GraphError("ell must be at least 2")
    if not is_acyclic(h):
        raise CyclicGraphError("layering needs an acyclic graph")
    order = topological_order(h)
    kinds: list[str | None] = []
    for v in range(h.n):
        if not h.out[v] and not h.inn[v]:
            kinds.append(ISOLATED)
        elif not h.inn[v]:
            kinds.append(SOURCE)
        elif not h.out[v]:
            kinds.append(SINK)
        else:
            kinds.append(None)
    src = [0] * h.n
    for v in order:
        if not h.inn[v]:
            src[v] = 1
        else:
            m = 0
            for u in iter_bits(h.inn[v]):
                m |= src[u]
            src[v] = _rot(m, ell)
    snk = [0] * h.n
    for v in reversed(order):
        if not h.out[v]:
            snk[v] = 1
        else:
            m = 0
            for u in iter_bits(h.out[v]):
                m |= snk[u]
            snk[v] = _rot(m, ell)
    return LayerAnalysis(ell, tuple(src), tuple(snk), tuple(kinds))


def layer_typing(h: OrientedGraph, ell: int) -> LayerTyping | None:
    """The typing when ``h`` is ell-layered, else None (see :func:`analyze_layers` for why)."""
    a = analyze_layers(h, ell)
    if a.failure is not None:
        return None
    tags = []
    for v, kind in enumerate(a.kinds):
        if kind is not None:
            tags.append(kind)
        else:
            tags.append((a.from_source[v].bit_length() - 1, a.to_sink[v].bit_length() - 1))
    return LayerTyping(ell, tuple(tags))


def is_layered(h: OrientedGraph, ell: int) -> bool:
    return layer_typing(h, ell) is not None


def subdivide(h: OrientedGraph, ell: int) -> OrientedGraph:
    """Replace every arc by a directed path with ``ell`` arcs; new vertices come last."""
    if ell < 1:
        raise GraphError("ell must be positive")
    arcs = h.arcs()
    n = h.n + len(arcs) * (ell - 1)
    if n > 64:
        raise SizeCapError(f"subdivision has {n} vertices (cap 64)")
    rows = list(h.out) + [0] * (n - h.n)
    nxt = h.n
    for u, v in arcs:
        if ell == 1:
            continue
        rows[u] &= ~(1 << v)
        prev = u
        for _ in range(ell - 1):
            rows[prev] |= 1 << nxt
            prev = nxt
            nxt += 1
        rows[prev] |= 1 << v
    return _from_rows(n, rows)


# ---------------------------------------------------------------------------
# the gadget Q_ell


def q_index(ell: int, i: int, j: int) -> int:
    """Vertex (i, j) of the ell x ell grid, with i, j read mod ell."""
    return (i % ell) * ell + (j % ell)


def q_source(ell: int) -> int:
    return ell * ell


def q_sink(ell: int) -> int:
    return ell * ell + 1


def q_gadget(ell: int) -> OrientedGraph:
    """Grid vertices (i, j) with arcs (i, j) -> (i+1, j-1) plus a source and a sink.

    The source points to every (1, j), every (i, 1) points to the sink, and the
    source points to the sink.  Diagonal i + j = d is a directed cycle D_d.
    """
    if ell < 3:
        raise GraphError("ell must be at least 3; for ell = 2 the cycles D_i would be digons")
    n = ell * ell + 2
    if n > 64:
        raise SizeCapError(f"Q_{ell} has {n} vertices (cap 64)")
    rows = [0] * n
    for i, j in product(range(ell), repeat=2):
        rows[q_index(ell, i, j)] |= 1 << q_index(ell, i + 1, j - 1)
    s, t = q_source(ell), q_sink(ell)
    for j in range(ell):
        rows[s] |= 1 << q_index(ell, 1, j)
        rows[q_index(ell, j, 1)] |= 1 << t
    rows[s] |= 1 << t
    return _from_rows(n, rows)


def canonical_hom_to_q(h: OrientedGraph, typing: LayerTyping) -> Homomorphism:
    """Sources to the gadget source, sinks and isolated vertices to its sink, type (i, j) to (i, j)."""
    if len(typing.tags) != h.n:
        raise GraphError("typing does not belong to this graph")
    ell = typing.ell
    images = []
    for tag in typing.tags:
        if tag == SOURCE:
            images.append(q_source(ell))
        elif tag in (SINK, ISOLATED):
            images.append(q_sink(ell))
        else:
            images.append(q_index(ell, *tag))
    return certify(images, h, q_gadget(ell))


def cycle_join(ell: int) -> OrientedGraph:
    """The directed ell-cycle with one extra vertex receiving every arc from it."""
    return arrow_join(directed_cycle(ell), empty_graph(1))


def hom_to_cycle_join(h: OrientedGraph, typing: LayerTyping) -> Homomorphism:
    """Type (i, j) and sources go to cycle position by source residue, sinks to the apex."""
    ell = typing.ell
    if ell < 3:
        raise GraphError("the directed cycle needs ell >= 3")
    if len(typing.tags) != h.n:
        raise GraphError("typing does not belong to this graph")
    images = []
    for tag in typing.tags:
        if tag == SOURCE:
            images.append(0)
        elif tag in (SINK, ISOLATED):
            images.append(ell)
        else:
            images.append(tag[0] % ell)
    return certify(images, h, cycle_join(ell))


def _on_c3(t: OrientedGraph, v: int) -> bool:
    return any(t.out[w] & t.inn[v] for w in iter_bits(t.out[v]))


def _arc_on_c3(t: OrientedGraph, x: int, y: int) -> bool:
    return bool(t.out[y] & t.inn[x])


def _arc_on_c4(t: OrientedGraph, x: int, y: int) -> bool:
    avoid = ~((1 << x) | (1 << y))
    for a in iter_bits(t.out[y] & avoid):
        if t.out[a] & t.inn[x] & avoid & ~(1 << a):
            return True
    return False


@dataclass(frozen=True)
class GadgetPair:
    u: int
    v: int
    w: int
    z: int
    x: int
    y: int


def find_gadget_pair(t: OrientedGraph, u: int | None = None, v: int | None = None) -> GadgetPair | None:
    """Vertices with u -> v, a triangle vertex w on v -> w -> u, a vertex z on
    u -> z -> v, and an arc x -> y on u -> x -> y -> v lying on both a 3-cycle
    and a 4-cycle.  ``u`` and ``v`` can be pinned."""
    us = [u] if u is not None else range(t.n)
    for a in us:
        vs = [v] if v is not None else iter_bits(t.out[a])
        for b in vs:
            if not t.has_arc(a, b):
                continue
            ws = [w for w in iter_bits(t.out[b] & t.inn[a]) if _on_c3(t, w)]
            zs = list(iter_bits(t.out[a] & t.inn[b]))
            if not ws or not zs:
                continue
            for x in iter_bits(t.out[a]):
                for y in iter_bits(t.out[x] & t.inn[b]):
                    if _arc_on_c3(t, x, y) and _arc_on_c4(t, x, y):
                        return GadgetPair(a, b, ws[0], zs[0], x, y)
    return None


def gadget_partial_map(ell: int, pair: GadgetPair) -> dict[int, int]:
    """Pin the gadget source and sink plus a few cycle vertices to the pair's vertices.

    The rest of Q_ell is completed by search.
    """
    if ell not in (3, 4):
        raise GraphError("the gadget-pair route covers ell = 3 and 4")
    q = lambda i, j: q_index(ell, i, j)  # noqa: E731
    fixed = {
        q_source(ell): pair.u,
        q_sink(ell): pair.v,
        q(1, 1): pair.z,
        q(1, 2): pair.x,
        q(2, 1): pair.y,
    }
    if ell == 3:
        fixed[q(0, 1)] = pair.u
        fixed[q(1, 0)] = pair.v
    else:
        fixed[q(0, 1)] = pair.z
        fixed[q(3, 1)] = pair.u
        fixed[q(1, 3)] = pair.v
    return fixed


def hom_via_gadget_pair(ell: int, t: OrientedGraph, pair: GadgetPair) -> Homomorphism | None:
    return hom_exists(q_gadget(ell), t, fixed=gadget_partial_map(ell, pair))


def _first_c3(t: OrientedGraph, x: int) -> tuple[int, int] | None:
    for y in iter_bits(t.out[x]):
        zs = t.out[y] & t.inn[x]
        if zs:
            return y, (zs & -zs).bit_length() - 1
    return None


def _padded(walk: list[int], target_len: int, t: OrientedGraph) -> list[int]:
    """Lengthen a walk by 3-cycle detours at its first vertex until it has ``target_len`` arcs."""
    extra = target_len - (len(walk) - 1)
    assert extra >= 0 and extra % 3 == 0
    if not extra:
        return walk
    y, z = _first_c3(t, walk[0])
    head = [walk[0]]
    for _ in range(extra // 3):
        head += [y, z, walk[0]]
    return head + walk[1:]


def reduce_and_map_q(ell: int, t: OrientedGraph) -> Homomorphism | None:
    """A hom from Q_ell into ``t`` lifted from Q_ell' with ell' in 3..5, ell' = ell mod 3.

    Requires every vertex of ``t`` to lie on a directed triangle.  Each cycle
    D_i of Q_ell is routed along the image of a matching cycle of Q_ell', its
    two attachment arcs kept and the walk lengthened by triangle detours.
    """
    if ell < 3:
        raise GraphError("ell must be at least 3")
    if ell <= 5:
        return hom_exists(q_gadget(ell), t)
    for v in range(t.n):
        if not _on_c3(t, v):
            raise GraphError(f"vertex {v} lies on no directed triangle")
    small = (ell - 3) % 3 + 3
    base = hom_exists(q_gadget(small), t)
    if base is None:
        return None
    images = [0] * (ell * ell + 2)
    images[q_source(ell)] = base[q_source(small)]
    images[q_sink(ell)] = base[q_sink(small)]
    for i in range(ell):
        d = (i - 2) % ell
        d_small = next(
            e for e in range(small) if (d - e) % 3 == 0 and d >= e and (ell - d) >= (small - e)
        )
        i_small = (d_small + 2) % small
        # positions 1, 2, ... along D_i' starting at the source attachment (1, i'-1)
        walk = [base[q_index(small, 1 + s, i_small - 1 - s)] for s in range(small)]
        first = _padded(walk[: d_small + 1], d, t)
        second = _padded(walk[d_small:] + [walk[0]], ell - d, t)
        closed = first[:-1] + second[:-1]
        assert len(closed) == ell
        for s in range(ell):
            images[q_index(ell, 1 + s, i - 1 - s)] = closed[s]
    return certify(images, q_gadget(ell), t)


def level_hom(h: OrientedGraph, t: OrientedGraph, ell: int) -> Homomorphism:
    """Map an acyclic ``h`` into ``t`` by sink distance along a Hamiltonian path.

    Valid when ``t`` has at least p(H) vertices and, by the layering argument,
    when every strong component of ``t`` is smaller than ``ell``; certification
    raises GraphError otherwise.
    """
    if t.n < longest_path_order(h):
        raise GraphError("target smaller than p(H)")
    if any(len(c) >= ell for c in strongly_connected_components(t)):
        raise GraphError(f"target has a strong component of size >= {ell}")
    path = hamiltonian_path(t)
    return certify(level_map(h, path), h, t)


def glued_paths(lengths) -> OrientedGraph:
    """Directed paths with the given arc counts sharing a start (vertex 0) and an end (vertex 1)."""
    lengths = list(lengths)
    if not lengths or min(lengths) < 1 or lengths.count(1) > 1:
        raise GraphError("need positive lengths with at most one direct arc")
    n = 2 + sum(k - 1 for k in lengths)
    rows = [0] * n
    nxt = 2
    for k in lengths:
        prev = 0
        for _ in range(k - 1):
            rows[prev] |= 1 << nxt
            prev = nxt
            nxt += 1
        rows[prev] |= 1 << 1
    return _from_rows(n, rows)


def cycle_route_target(t: OrientedGraph, cycle, u: int, v: int) -> OrientedGraph:
    """Spanning subgraph of ``t`` keeping the arcs of ``cycle``, the arcs out of ``u`` and into ``v``.

    A hom of Q_ell into it with the source at ``u`` and the sink at ``v``
    sends every D_i around the given cycle.
    """
    rows = [0] * t.n
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not t.has_arc(a, b):
            raise GraphError(f"{a} -> {b} is not an arc")
        rows[a] |= 1 << b
    rows[u] |= t.out[u]
    for a in iter_bits(t.inn[v]):
        rows[a] |= 1 << v
    return OrientedGraph._trusted(t.n, rows)


def hom_via_cycle_route(ell: int, t: OrientedGraph, cycle, u: int, v: int) -> Homomorphism | None:
    """Q_ell into ``t`` with every D_i wound around ``cycle``, source at ``u`` and sink at ``v``."""
    target = cycle_route_target(t, cycle, u, v)
    found = hom_exists(q_gadget(ell), target, fixed={q_source(ell): u, q_sink(ell): v})
    return None if found is None else certify(found.map, q_gadget(ell), t)
