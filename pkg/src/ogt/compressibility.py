"""Exact compressibility numbers by census sweep.

``tau(H)`` is the least k such that every tournament on k vertices receives a
homomorphism from H.  The property is monotone in k: a tournament on k+1
vertices contains one on k vertices, so a hom into the smaller one is a hom
into the larger one.  Sweeping exact-size censuses upward and stopping at the
first level with no bad tournament therefore gives the exact value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .enumeration import TOURNAMENT_CAP, tournaments
from .errors import CyclicGraphError, GraphError, SizeCapError
from .graphs import (
    OrientedGraph,
    Tournament,
    is_acyclic,
    longest_path_order,
    topological_order,
    transitive_tournament,
    _from_rows,
)
from .hom import Homomorphism, SearchPlan, _shuffled_run, certify

EXACT = "exact"
AT_CAP = "lower_bound_at_cap"
DEFAULT_MAX_K = 9


@dataclass(frozen=True)
class CompressibilityResult:
    """Outcome of a sweep.

    ``tau`` is exact when ``status == "exact"``; otherwise every level up to
    the cap had a bad tournament and ``tau`` is the cap plus one, a lower bound.
    ``witnesses[k]`` is a k-vertex tournament receiving no hom from any member.
    ``level_homs`` holds one certified hom per tournament of the final level,
    paired with the index of the family member used.
    """

    tau: int
    p: int
    status: str
    witnesses: Mapping[int, Tournament] = field(repr=False)
    level_homs: tuple[tuple[int, Homomorphism], ...] = field(default=(), repr=False)

    @property
    def exact(self) -> bool:
        return self.status == EXACT


def _validate_family(family: Sequence[OrientedGraph]) -> list[OrientedGraph]:
    family = list(family)
    if not family:
        raise GraphError("empty family")
    for h in family:
        if h.n == 0:
            raise GraphError("the empty graph has no compressibility number")
        if not is_acyclic(h):
            raise CyclicGraphError("graph has a directed cycle, so no transitive tournament receives it (tau is infinite)")
    return family


def _first_bad(plans: Sequence[SearchPlan], census) -> Tournament | None:
    for t in census:
        if all(plan.run(t) is None for plan in plans):
            return t
    return None


def tau_family(family: Sequence[OrientedGraph], max_k: int = DEFAULT_MAX_K, seed: int = 0) -> CompressibilityResult:
    """Least k such that every k-tournament receives a hom from some member of ``family``."""
    family = _validate_family(family)
    p = min(longest_path_order(h) for h in family)
    if max_k > TOURNAMENT_CAP:
        raise SizeCapError(f"max_k={max_k} exceeds the census cap {TOURNAMENT_CAP}")
    if max_k < p:
        raise SizeCapError(f"max_k={max_k} is below the lower bound p={p}")
    plans = [SearchPlan(h) for h in family]
    witnesses: dict[int, Tournament] = {}
    if p >= 2:
        tt = transitive_tournament(p - 1)
        assert all(plan.run(tt) is None for plan in plans)
        witnesses[p - 1] = tt
    for k in range(p, max_k + 1):
        census = tournaments(k)
        bad = _first_bad(plans, census)
        if bad is not None:
            witnesses[k] = bad
            continue
        return CompressibilityResult(k, p, EXACT, witnesses, _reverify_level(plans, census, seed))
    return CompressibilityResult(max_k + 1, p, AT_CAP, witnesses)


def _reverify_level(plans: Sequence[SearchPlan], census, seed: int) -> tuple[tuple[int, Homomorphism], ...]:
    """Find every final-level hom again by shuffled target order and certify it."""
    homs = []
    for idx, t in enumerate(census):
        for j, plan in enumerate(plans):
            found = _shuffled_run(plan, t, seed + idx)
            if found is not None:
                homs.append((j, found))
                break
        else:
            raise AssertionError(f"re-verification found no hom into census member {idx}")
    return tuple(homs)


def tau(h: OrientedGraph, max_k: int = DEFAULT_MAX_K, seed: int = 0) -> CompressibilityResult:
    return tau_family([h], max_k, seed)


def tau_lower_witness(h: OrientedGraph, k: int) -> Tournament | None:
    """First k-tournament (census order) receiving no hom from ``h``."""
    _validate_family([h])
    return _first_bad([SearchPlan(h)], tournaments(k))


def tau_tt(k: int, max_k: int = DEFAULT_MAX_K) -> CompressibilityResult:
    return tau(transitive_tournament(k), max_k)


# ---------------------------------------------------------------------------
# universal graphs for bounded out-degree


@dataclass(frozen=True)
class UniversalDk:
    """Layered graph receiving every acyclic graph with out-degree <= k and p <= n.

    Vertex ``i`` of level ``j`` is labelled by the set of earlier vertices it
    points to; that set always meets level ``j - 1``.
    """

    graph: OrientedGraph
    labels: tuple[frozenset[int], ...]
    level_of: tuple[int, ...]
    index: Mapping[frozenset[int], int] = field(repr=False)

    @property
    def level_sizes(self) -> list[int]:
        sizes = [0] * (max(self.level_of) + 1 if self.level_of else 0)
        for lv in self.level_of:
            sizes[lv] += 1
        return sizes[1:]


def universal_dk(n: int, k: int) -> UniversalDk:
    if n < 1 or k < 1:
        raise GraphError("need n >= 1 and k >= 1")
    labels: list[frozenset[int]] = [frozenset()]
    level_of = [1]
    last = [0]
    for level in range(2, n + 1):
        earlier = list(range(len(labels)))
        new = []
        last_set = set(last)
        for size in range(1, k + 1):
            for combo in combinations(earlier, size):
                if last_set.intersection(combo):
                    new.append(frozenset(combo))
        if len(labels) + len(new) > 64:
            raise SizeCapError(
                f"level {level} would bring the universal graph to {len(labels) + len(new)} vertices (cap 64)"
            )
        last = list(range(len(labels), len(labels) + len(new)))
        labels.extend(new)
        level_of.extend([level] * len(new))
    rows = [sum(1 << u for u in lab) for lab in labels]
    index = {lab: i for i, lab in enumerate(labels)}
    return UniversalDk(_from_rows(len(labels), rows), tuple(labels), tuple(level_of), index)


def build_universal_dk(n: int, k: int) -> OrientedGraph:
    return universal_dk(n, k).graph


def universal_dk_map(h: OrientedGraph, n: int, k: int, universal: UniversalDk | None = None) -> Homomorphism:
    """The explicit hom into the universal graph: sinks go to the bottom vertex and
    every other vertex to the label formed by its out-neighbours' images."""
    if not is_acyclic(h):
        raise CyclicGraphError("source must be acyclic")
    if h.max_out_degree() > k:
        raise GraphError(f"out-degree {h.max_out_degree()} exceeds k={k}")
    if longest_path_order(h) > n:
        raise GraphError(f"p(H)={longest_path_order(h)} exceeds n={n}")
    u = universal or universal_dk(n, k)
    images = [-1] * h.n
    for v in reversed(topological_order(h)):
        outs = frozenset(images[w] for w in range(h.n) if h.out[v] >> w & 1)
        images[v] = u.index[outs]
    return certify(images, h, u.graph)
