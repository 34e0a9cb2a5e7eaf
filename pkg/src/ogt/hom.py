"""Homomorphism and copy search between small oriented graphs.

The search assigns source vertices one at a time (topological order for
acyclic sources, otherwise most-constrained-first), keeps a bitmask domain per
unassigned vertex and prunes by forward checking.  Target vertices are tried
in ascending index order, so the witness returned is the least one under that
variable ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import islice
from typing import Mapping, Sequence

import numpy as np

from .errors import DominationError, GraphError, SizeCapError
from .graphs import (
    OrientedGraph,
    dominator_of,
    is_acyclic,
    iter_bits,
    levels_from_sinks,
    mask_of,
    topological_order,
)


@dataclass(frozen=True)
class Homomorphism:
    source_size: int
    target_size: int
    map: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def __getitem__(self, v: int) -> int:
        return self.map[v]


def is_homomorphism(mapping: Sequence[int], h: OrientedGraph, t: OrientedGraph) -> bool:
    if len(mapping) != h.n:
        raise GraphError(f"map has {len(mapping)} entries for a {h.n}-vertex source")
    for x in mapping:
        if not 0 <= x < t.n:
            raise GraphError(f"image {x} outside target vertices 0..{t.n - 1}")
    tout = t.out
    for u in range(h.n):
        row = tout[mapping[u]]
        for v in iter_bits(h.out[u]):
            if not row >> mapping[v] & 1:
                return False
    return True


def is_injective_homomorphism(mapping: Sequence[int], h: OrientedGraph, t: OrientedGraph) -> bool:
    return len(set(mapping)) == len(mapping) and is_homomorphism(mapping, h, t)


def _certify(mapping: Sequence[int], h: OrientedGraph, t: OrientedGraph, injective: bool) -> Homomorphism:
    ok = is_injective_homomorphism(mapping, h, t) if injective else is_homomorphism(mapping, h, t)
    if not ok:
        raise AssertionError("search produced a map that is not arc-preserving")
    return Homomorphism(h.n, t.n, tuple(mapping))


def certify(mapping: Sequence[int], h: OrientedGraph, t: OrientedGraph) -> Homomorphism:
    """Wrap ``mapping`` as a Homomorphism, raising GraphError unless it preserves every arc."""
    if not is_homomorphism(mapping, h, t):
        raise GraphError("map does not preserve every arc")
    return Homomorphism(h.n, t.n, tuple(mapping))


def _variable_order(h: OrientedGraph) -> list[int]:
    if is_acyclic(h):
        return topological_order(h)
    deg = [h.out[v].bit_count() + h.inn[v].bit_count() for v in range(h.n)]
    adj = [h.out[v] | h.inn[v] for v in range(h.n)]
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        v = max(remaining, key=lambda x: ((adj[x] & placed).bit_count(), deg[x], -x))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


class SearchPlan:
    """Precomputed variable order for repeated searches from one source graph."""

    def __init__(self, h: OrientedGraph, injective: bool = False):
        self.h = h
        self.injective = injective
        self.order = _variable_order(h)
        pos = {v: i for i, v in enumerate(self.order)}
        self.later_out = []
        self.later_in = []
        for i, v in enumerate(self.order):
            self.later_out.append([w for w in iter_bits(h.out[v]) if pos[w] > i])
            self.later_in.append([w for w in iter_bits(h.inn[v]) if pos[w] > i])

    def run(self, t: OrientedGraph, fixed: Mapping[int, int] | None = None) -> list[int] | None:
        h = self.h
        if h.n == 0:
            return []
        if t.n == 0:
            return None
        tout, tin = t.out, t.inn
        doms = [t.full_mask] * h.n
        if fixed:
            for v, x in fixed.items():
                if not (0 <= v < h.n and 0 <= x < t.n):
                    raise GraphError(f"fixed assignment {v}->{x} out of range")
                doms[v] &= 1 << x
                for w in iter_bits(h.out[v]):
                    doms[w] &= tout[x]
                for w in iter_bits(h.inn[v]):
                    doms[w] &= tin[x]
            if not all(doms):
                return None
        assign = [-1] * h.n
        order, later_out, later_in = self.order, self.later_out, self.later_in
        injective = self.injective
        m = h.n

        def step(i: int, used: int) -> bool:
            if i == m:
                return True
            v = order[i]
            cand = doms[v] & ~used if injective else doms[v]
            lo, li = later_out[i], later_in[i]
            while cand:
                low = cand & -cand
                cand ^= low
                x = low.bit_length() - 1
                saved = []
                ok = True
                rx = tout[x]
                for w in lo:
                    nd = doms[w] & rx
                    if injective:
                        nd &= ~low
                    if not nd:
                        ok = False
                        break
                    saved.append((w, doms[w]))
                    doms[w] = nd
                if ok:
                    rx = tin[x]
                    for w in li:
                        nd = doms[w] & rx
                        if injective:
                            nd &= ~low
                        if not nd:
                            ok = False
                            break
                        saved.append((w, doms[w]))
                        doms[w] = nd
                if ok:
                    assign[v] = x
                    if step(i + 1, used | low):
                        return True
                for w, d in reversed(saved):
                    doms[w] = d
            return False

        return assign if step(0, 0) else None

    def find(self, t: OrientedGraph, fixed: Mapping[int, int] | None = None) -> Homomorphism | None:
        found = self.run(t, fixed)
        if found is None:
            return None
        return _certify(found, self.h, t, self.injective)


def _shuffled_run(plan: SearchPlan, t: OrientedGraph, seed: int, fixed=None) -> Homomorphism | None:
    perm = list(range(t.n))
    random.Random(seed).shuffle(perm)
    inverse = [0] * t.n
    for old, new in enumerate(perm):
        inverse[new] = old
    shuffled = t.relabel(perm)
    fixed2 = {v: perm[x] for v, x in fixed.items()} if fixed else None
    found = plan.run(shuffled, fixed2)
    if found is None:
        return None
    return _certify([inverse[x] for x in found], plan.h, t, plan.injective)


def hom_exists(
    h: OrientedGraph,
    t: OrientedGraph,
    fixed: Mapping[int, int] | None = None,
    order_seed: int | None = None,
) -> Homomorphism | None:
    """A certified homomorphism ``h -> t``, or None when none exists.

    ``fixed`` pins some source vertices to given target vertices.
    ``order_seed`` explores target vertices in a seeded random order instead of
    ascending order; used to re-verify verdicts by an independent search path.
    """
    plan = SearchPlan(h)
    if order_seed is not None:
        return _shuffled_run(plan, t, order_seed, fixed)
    return plan.find(t, fixed)


def contains_copy(g: OrientedGraph, p: OrientedGraph, fixed: Mapping[int, int] | None = None) -> Homomorphism | None:
    """An injective arc-preserving map ``p -> g`` (a not necessarily induced copy)."""
    if p.n > g.n:
        return None
    return SearchPlan(p, injective=True).find(g, fixed)


def count_homs(h: OrientedGraph, t: OrientedGraph, guard: int = 10**8, chunk: int = 1 << 18) -> int:
    """Exact number of homomorphisms by checking every map ``V(h) -> V(t)``.

    Independent of the backtracking search; meant as a test oracle.
    """
    total = t.n**h.n
    if total > guard:
        raise SizeCapError(f"{t.n}^{h.n} = {total} maps exceeds the guard {guard}")
    if h.n == 0:
        return 1
    if t.n == 0:
        return 0
    adj = np.zeros((t.n, t.n), dtype=bool)
    for u, v in t.arcs():
        adj[u, v] = True
    arcs = h.arcs()
    powers = t.n ** np.arange(h.n, dtype=np.int64)
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % t.n
        ok = np.ones(len(idx), dtype=bool)
        for u, v in arcs:
            ok &= adj[digits[:, u], digits[:, v]]
        count += int(ok.sum())
    return count


def embed_via_domination(h: OrientedGraph, t: OrientedGraph, k: int) -> Homomorphism:
    """Greedy embedding of an acyclic ``h`` with out-degree <= k into a k-dominated ``t``.

    Vertices are placed sinks-first; each goes to a dominator of its
    out-neighbours' images, padded with the smallest unused target vertices up
    to a k-set.  Raises DominationError naming the first undominated set.
    """
    if k < 1:
        raise GraphError("k must be positive")
    if h.max_out_degree() > k:
        raise GraphError(f"source has out-degree {h.max_out_degree()} > k = {k}")
    if h.n and not t.n:
        raise GraphError("empty target")
    images = [-1] * h.n
    for v in reversed(topological_order(h)):
        chosen = mask_of(images[w] for w in iter_bits(h.out[v]))
        want = min(k, t.n)
        pad = (x for x in range(t.n) if not chosen >> x & 1)
        for x in islice(pad, max(0, want - chosen.bit_count())):
            chosen |= 1 << x
        dom = dominator_of(t, chosen)
        if dom is None:
            raise DominationError(iter_bits(chosen))
        images[v] = dom
    return _certify(images, h, t, injective=False)


def level_map(h: OrientedGraph, path: Sequence[int]) -> list[int]:
    """Map each vertex to the entry of ``path`` indexed from the end by its sink distance.

    ``path`` lists a Hamiltonian path ``x_{p-1}, ..., x_0`` of a tournament; a
    vertex whose longest outgoing path has ``d`` arcs goes to ``x_d``.
    """
    level = levels_from_sinks(h)
    if level and max(level) >= len(path):
        raise GraphError("path is shorter than the longest path of the source")
    return [path[len(path) - 1 - d] for d in level]
