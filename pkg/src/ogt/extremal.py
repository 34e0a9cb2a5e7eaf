"""Oriented Turán numbers at small n and the matching blow-up constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

from .compressibility import tau
from .enumeration import TOURNAMENT_CAP, tournaments
from .errors import GraphError, SizeCapError
from .graphs import (
    OrientedGraph,
    _from_rows,
    blow_up,
    count_c3,
    induced,
    omega_ro,
    OMEGA_CAP,
    transitive_tournament,
)
from .hom import SearchPlan, contains_copy
from .randomgraphs import random_dk_member, rng_for

EX_CAP = 6


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    value: int
    extremal_witness: OrientedGraph


def turan_density_term(tau_value: int, n: int) -> Fraction:
    """(1 - 1/(tau - 1)) * C(n, 2) as an exact rational."""
    if tau_value < 2:
        raise ValueError("tau must be at least 2")
    return (1 - Fraction(1, tau_value - 1)) * comb(n, 2)


class _Probe:
    """Minimal graph view for the copy search on a partially built orientation."""

    __slots__ = ("n", "out", "inn", "full_mask")

    def __init__(self, n: int, out: list[int], inn: list[int]):
        self.n, self.out, self.inn = n, out, inn
        self.full_mask = (1 << n) - 1


def _anchored_plans(forbidden: Sequence[OrientedGraph], n: int):
    """For each forbidden graph that fits, an injective plan plus its arcs.

    A copy created by adding arc (i, j) must use that arc, so each check pins
    one arc of the forbidden graph onto it.
    """
    plans = []
    for f in forbidden:
        if f.n > n:
            continue
        if f.num_arcs == 0:
            raise GraphError("an arcless forbidden graph fits in every graph on enough vertices")
        plans.append((SearchPlan(f, injective=True), f.arcs()))
    return plans


def exact_ex_oriented(n: int, forbidden: Sequence[OrientedGraph]) -> ExtremalResult:
    """Maximum arcs over labelled oriented graphs on ``n`` vertices with no forbidden copy.

    Depth-first over pair states with copy checks anchored at each new arc and
    an arc-count bound.  The first pass finds the value, trying arcs before
    non-arcs; the second returns the first graph attaining it in the labelled
    stream order (per pair, in lexicographic pair order: none, i -> j, j -> i).
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > EX_CAP:
        raise SizeCapError(f"exact ex is limited to n <= {EX_CAP} (3^C(n,2) orientations)")
    plans = _anchored_plans(forbidden, n)
    pairs = list(combinations(range(n), 2))
    total = len(pairs)
    out = [0] * n
    inn = [0] * n
    probe = _Probe(n, out, inn)

    def creates_copy(a: int, b: int) -> bool:
        for plan, arcs in plans:
            for s, t in arcs:
                if plan.run(probe, {s: a, t: b}) is not None:
                    return True
        return False

    def dfs(idx: int, arcs: int, best: int, states, stop_at: int | None):
        """Return (best arc count, rows) found below this node, or None."""
        if arcs + (total - idx) <= best:
            return None
        if idx == total:
            return arcs, list(out)
        i, j = pairs[idx]
        found = None
        for state in states:
            if state == 0:
                res = dfs(idx + 1, arcs, best, states, stop_at)
            else:
                a, b = (i, j) if state == 1 else (j, i)
                out[a] |= 1 << b
                inn[b] |= 1 << a
                res = None
                if not creates_copy(a, b):
                    res = dfs(idx + 1, arcs + 1, best, states, stop_at)
                out[a] &= ~(1 << b)
                inn[b] &= ~(1 << a)
            if res is not None:
                best, found = res[0], res
                if stop_at is not None and best >= stop_at:
                    return found
        return found

    first = dfs(0, 0, -1, (1, 2, 0), stop_at=total)
    value = first[0]
    witness = dfs(0, 0, value - 1, (0, 1, 2), stop_at=value)
    rows = witness[1]
    g = _from_rows(n, rows)
    assert g.num_arcs == value
    return ExtremalResult(n, value, g)


def balanced_parts(n: int, t: int) -> list[int]:
    q, r = divmod(n, t)
    return [q + 1] * r + [q] * (t - r)


def blowup_construction(n: int, h: OrientedGraph, max_k: int = 9) -> OrientedGraph:
    """Balanced blow-up of the largest tournament receiving no hom from ``h``."""
    res = tau(h, max_k)
    if not res.exact:
        raise SizeCapError(f"tau(H) exceeds the cap {max_k}; no exact witness level")
    t = res.tau - 1
    if t < 1:
        raise GraphError("tau(H) = 1: every graph on one vertex already receives H")
    witness = res.witnesses[t]
    sizes = balanced_parts(n, t)
    keep = [i for i, s in enumerate(sizes) if s > 0]
    if not keep:
        return _from_rows(0, [])
    return blow_up(induced(witness, keep), [sizes[i] for i in keep])


def blowup_lower_bound(n: int, h: OrientedGraph, max_k: int = 9) -> int:
    """Arc count C(n,2) - sum C(n_i,2) of the balanced blow-up on tau(H) - 1 parts."""
    g = blowup_construction(n, h, max_k)
    value = comb(n, 2) - sum(comb(s, 2) for s in balanced_parts(n, tau(h, max_k).tau - 1))
    assert g.num_arcs == value
    return value


class C3BoundReport(NamedTuple):
    holds: bool
    vacuous: bool
    tt_free_members: int
    least_c3: int | None


def verify_c3_count_bound(n: int) -> C3BoundReport:
    """Every TT_n-free tournament on 2n vertices has at least n directed triangles."""
    if n < 1:
        raise GraphError("n must be positive")
    if 2 * n > TOURNAMENT_CAP:
        raise SizeCapError(f"needs the {2 * n}-vertex census (cap {TOURNAMENT_CAP})")
    plan = SearchPlan(transitive_tournament(n), injective=True)
    counts = [count_c3(t) for t in tournaments(2 * n) if plan.run(t) is None]
    least = min(counts) if counts else None
    return C3BoundReport(all(c >= n for c in counts), not counts, len(counts), least)


class DkScan(NamedTuple):
    holds: bool
    samples: int
    largest_omega: int
    counterexample: OrientedGraph | None


def scan_dk_in_rk(
    k: int,
    samples: int,
    seed: int | None = None,
    max_vertices: int = 12,
    bound: int | None = None,
) -> DkScan:
    """Sample acyclic graphs with out-degree <= k and compare omega_ro with ``bound``.

    ``bound`` defaults to k^2 + 1.  Any clique of the reachability-within-2
    graph has a topologically first vertex reaching all others in two steps,
    so k^2 + k + 1 always holds.
    """
    if max_vertices > OMEGA_CAP:
        raise SizeCapError(f"omega is capped at {OMEGA_CAP} vertices")
    rng = rng_for(seed)
    if bound is None:
        bound = k * k + 1
    largest = 0
    for _ in range(samples):
        g = random_dk_member(rng, k, max_vertices)
        w = omega_ro(g)
        largest = max(largest, w)
        if w > bound:
            return DkScan(False, samples, largest, g)
    return DkScan(True, samples, largest, None)


def check_dk_in_rk(
    k: int, samples: int, seed: int | None = None, max_vertices: int = 12, bound: int | None = None
) -> bool:
    return scan_dk_in_rk(k, samples, seed, max_vertices, bound).holds


def is_free_of(g: OrientedGraph, forbidden: Sequence[OrientedGraph]) -> bool:
    return all(contains_copy(g, f) is None for f in forbidden)
