"""Seeded random tournaments and acyclic graphs.

All sampling goes through :class:`random.Random` (Mersenne Twister, MT19937)
seeded with an integer, so a seed fixes every result bit for bit.

Stream contract for :func:`random_tournament`: one call
``rng.getrandbits(C(n, 2))``; bit k (least significant first) orients the
k-th pair (i, j), i < j, in lexicographic order, 1 meaning i -> j.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graphs import OrientedGraph, Tournament, longest_path_order

DEFAULT_SEED = 20240607


def rng_for(seed: int | None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def random_tournament(n: int, rng: random.Random) -> Tournament:
    pairs = n * (n - 1) // 2
    bits = rng.getrandbits(pairs) if pairs else 0
    rows = [0] * n
    for k, (i, j) in enumerate(combinations(range(n), 2)):
        if bits >> k & 1:
            rows[i] |= 1 << j
        else:
            rows[j] |= 1 << i
    return Tournament._trusted(n, rows)


def random_acyclic(n: int, rng: random.Random, max_out: int | None = None, density: float = 0.4,
                   max_p: int | None = None) -> OrientedGraph:
    """Random acyclic oriented graph on ``n`` vertices.

    Vertices get random levels (1..max_p when given, else all distinct) and arcs
    only run from a higher level to a lower one, so ``p`` never exceeds
    ``max_p``.  Each vertex keeps at most ``max_out`` out-neighbours.  Labels
    are shuffled at the end.
    """
    if max_p is None:
        level = list(range(n))
    else:
        level = [rng.randrange(max_p) for _ in range(n)]
    rows = [0] * n
    for v in range(n):
        lower = [u for u in range(n) if level[u] < level[v]]
        chosen = [u for u in lower if rng.random() < density]
        if max_out is not None and len(chosen) > max_out:
            chosen = rng.sample(chosen, max_out)
        for u in chosen:
            rows[v] |= 1 << u
    perm = list(range(n))
    rng.shuffle(perm)
    return OrientedGraph._trusted(n, rows).relabel(perm)


def random_dk_member(rng: random.Random, k: int, max_vertices: int, max_p: int | None = None,
                     min_vertices: int = 1) -> OrientedGraph:
    """Random acyclic graph with out-degree <= k, 1..max_vertices vertices, optionally p <= max_p."""
    n = rng.randint(min_vertices, max_vertices)
    g = random_acyclic(n, rng, max_out=k, density=rng.uniform(0.2, 0.8), max_p=max_p)
    assert max_p is None or longest_path_order(g) <= max_p
    return g
