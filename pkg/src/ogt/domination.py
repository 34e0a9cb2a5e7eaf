"""Dominated sets, domination graphs and their structure."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, exp, lgamma, log1p

from .graphs import (
    OrientedGraph,
    Tournament,
    _require_tournament,
    dominator_of,
    iter_bits,
    levels_from_sinks,
    mask_of,
    power_cycle,
)
from .hom import contains_copy, is_injective_homomorphism
from .randomgraphs import random_tournament, rng_for

ODD_CYCLE = "odd-cycle-with-pendants-and-isolated"
CATERPILLARS = "caterpillar-forest"
OTHER = "other"


def is_dominated(g: OrientedGraph, subset) -> int | None:
    """Least vertex ``v`` with ``subset`` inside N+(v), or None."""
    return dominator_of(g, mask_of(subset))


def all_k_subsets_dominated(t: OrientedGraph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Scan every k-subset; return (True, None) or (False, first undominated subset)."""
    if k < 1:
        raise ValueError("k must be positive")
    out = t.out
    for subset in combinations(range(t.n), k):
        m = mask_of(subset)
        if not any(row & m == m for row in out):
            return False, subset
    return True, None


def domination_graph(t: OrientedGraph) -> OrientedGraph:
    """Spanning subgraph keeping the arcs u -> v with no vertex dominating {u, v}."""
    _require_tournament(t)
    rows = [0] * t.n
    for u in range(t.n):
        for v in iter_bits(t.out[u]):
            m = (1 << u) | (1 << v)
            if dominator_of(t, m) is None:
                rows[u] |= 1 << v
    return OrientedGraph._trusted(t.n, rows)


@dataclass(frozen=True)
class DominationClassification:
    shape: str
    cycle: tuple[int, ...] = ()
    spines: tuple[tuple[int, ...], ...] = ()
    pendants: int = 0
    isolated: int = 0
    reason: str = field(default="", compare=False)

    @property
    def details(self):
        if self.shape == ODD_CYCLE:
            return len(self.cycle)
        if self.shape == CATERPILLARS:
            return [len(s) - 1 for s in self.spines]
        return self.reason


def _weak_components(g: OrientedGraph) -> list[int]:
    adj = [g.out[v] | g.inn[v] for v in range(g.n)]
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1 or not adj[v]:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(comp)
    return comps


def _sub_arcs(g: OrientedGraph, comp: int) -> int:
    return sum((g.out[v] & comp).bit_count() for v in iter_bits(comp))


def _spine(g: OrientedGraph, comp: int, rng: random.Random | None) -> list[int]:
    level = levels_from_sinks(g)
    members = list(iter_bits(comp))
    top = max(level[v] for v in members)
    starts = [v for v in members if level[v] == top]
    v = rng.choice(starts) if rng else starts[0]
    path = [v]
    while level[v] > 0:
        nxt = [u for u in iter_bits(g.out[v]) if level[u] == level[v] - 1]
        v = rng.choice(nxt) if rng else nxt[0]
        path.append(v)
    return path


def _pendants_hang_off(g: OrientedGraph, core: int, comp: int) -> bool:
    """Every vertex of ``comp`` outside ``core`` is a leaf entered from ``core``."""
    for x in iter_bits(comp & ~core):
        if g.out[x] or g.inn[x].bit_count() != 1 or not g.inn[x] & core:
            return False
    return True


def classify_domination(dom: OrientedGraph, rng: random.Random | None = None) -> DominationClassification:
    """Sort a domination graph into the two admissible shapes, or ``other``.

    Caterpillar spines are longest directed paths of each component, ties
    broken by least vertex sequence (or at random when ``rng`` is given).
    """
    comps = _weak_components(dom)
    isolated = dom.n - sum(c.bit_count() for c in comps)
    cyclic, trees = [], []
    for comp in comps:
        arcs = _sub_arcs(dom, comp)
        size = comp.bit_count()
        if arcs == size - 1:
            trees.append(comp)
        elif arcs == size:
            cyclic.append(comp)
        else:
            return DominationClassification(OTHER, reason=f"component {sorted(iter_bits(comp))} has too many arcs")

    if cyclic:
        if len(cyclic) > 1 or trees:
            return DominationClassification(OTHER, reason="a cycle component alongside other components")
        comp = cyclic[0]
        # peel undirected leaves to expose the unique cycle
        core = comp
        adj = [dom.out[v] | dom.inn[v] for v in range(dom.n)]
        changed = True
        while changed:
            changed = False
            for v in iter_bits(core):
                if (adj[v] & core).bit_count() <= 1:
                    core &= ~(1 << v)
                    changed = True
        for v in iter_bits(core):
            if (dom.out[v] & core).bit_count() != 1 or (dom.inn[v] & core).bit_count() != 1:
                return DominationClassification(OTHER, reason="cycle is not directed")
        if core.bit_count() % 2 == 0:
            return DominationClassification(OTHER, reason="even cycle")
        if not _pendants_hang_off(dom, core, comp):
            return DominationClassification(OTHER, reason="cycle carries more than outgoing pendant arcs")
        start = core & -core
        v = start.bit_length() - 1
        cycle = [v]
        while True:
            v = (dom.out[v] & core).bit_length() - 1
            if v == cycle[0]:
                break
            cycle.append(v)
        return DominationClassification(ODD_CYCLE, cycle=tuple(cycle),
                                        pendants=(comp & ~core).bit_count(), isolated=isolated)

    spines = []
    pendants = 0
    for comp in trees:
        spine = _spine(dom, comp, rng)
        smask = mask_of(spine)
        if not _pendants_hang_off(dom, smask, comp):
            return DominationClassification(OTHER, reason=f"component {sorted(iter_bits(comp))} is not a caterpillar")
        spines.append(tuple(spine))
        pendants += (comp & ~smask).bit_count()
    return DominationClassification(CATERPILLARS, spines=tuple(spines), pendants=pendants, isolated=isolated)


def _disjoint_dom_pairs(dom: OrientedGraph):
    arcs = dom.arcs()
    for (v, w), (v2, w2) in combinations(arcs, 2):
        if len({v, w, v2, w2}) == 4:
            yield (v, w), (v2, w2)


def dichotomy_holds(t: OrientedGraph, a, b) -> bool:
    (v, w), (v2, w2) = a, b
    has = t.has_arc
    first = has(v, v2) and has(v2, w) and has(w, w2) and has(w2, v)
    second = has(v, w2) and has(w2, w) and has(w, v2) and has(v2, v)
    return first or second


def dichotomy_violation(t: OrientedGraph):
    dom = domination_graph(t)
    for a, b in _disjoint_dom_pairs(dom):
        if not dichotomy_holds(t, a, b):
            return a, b
    return None


def check_disjoint_arc_dichotomy(t: OrientedGraph) -> bool:
    """Two vertex-disjoint undominated arcs always span one of the two 4-cycles."""
    return dichotomy_violation(t) is None


_C53 = None


def _c53() -> OrientedGraph:
    global _C53
    if _C53 is None:
        _C53 = power_cycle(5, 3)
    return _C53


def forcing_premise(t: OrientedGraph, dom: OrientedGraph | None = None):
    """Two disjoint dom arcs whose sources share no dom arc, or None."""
    dom = dom or domination_graph(t)
    for (v, w), (v2, w2) in _disjoint_dom_pairs(dom):
        if not dom.has_arc(v, v2) and not dom.has_arc(v2, v):
            return (v, w), (v2, w2)
    return None


def check_c53_forcing(t: OrientedGraph) -> bool:
    """Whether 'premise implies a copy of C_5^(3)' holds for ``t``."""
    if forcing_premise(t) is None:
        return True
    return contains_copy(t, _c53()) is not None


def c53_from_dom_arcs(t: OrientedGraph, a, b) -> tuple[int, int, int, int, int] | None:
    """Five vertices spanning C_5^(3) in order, built from two qualifying dom arcs.

    With the arcs named so that ``v2 -> v``, a vertex ``u`` dominating {v2, v}
    completes the copy (v, w, v2, w2, u).  Returns None if the order fails to
    be a copy, which would contradict the forcing observation.
    """
    (v, w), (v2, w2) = a, b
    if not t.has_arc(v2, v):
        (v, w), (v2, w2) = (v2, w2), (v, w)
    u = is_dominated(t, (v, v2))
    if u is None:
        return None
    order = (v, w, v2, w2, u)
    return order if is_injective_homomorphism(order, _c53(), t) else None


def domination_failure_bound(n: int, k: int, exact: bool = False):
    """Union bound C(n,k) (1 - 2^-k)^(n-k) on a random tournament having an undominated k-set."""
    if not n > k >= 1:
        raise ValueError("need n > k >= 1")
    if exact:
        return comb(n, k) * (1 - Fraction(1, 2**k)) ** (n - k)
    logp = lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1) + (n - k) * log1p(-(2.0**-k))
    if logp > 700:
        return float("inf")
    return exp(logp)


def find_k_dominated_tournament(k: int, n: int, trials: int, seed: int | None = None) -> Tournament | None:
    """Sample random tournaments until one has every k-subset dominated."""
    rng = rng_for(seed)
    for _ in range(trials):
        t = random_tournament(n, rng)
        if all_k_subsets_dominated(t, k)[0]:
            return t
    return None
