"""Canonical codes, isomorph-free censuses and the on-disk census cache.

Canonical code
--------------
Vertices are grouped into cells by (out-degree, in-degree), cells ordered by
that key.  Among all orderings that list the cells in key order, the code is
the lexicographically least pair-state sequence read column by column: for
position j = 1, 2, ... and i = 0 .. j-1, the state of pair (i, j).
Tournaments use one bit per pair (1 iff i -> j); general oriented graphs use
two bits (0 none, 1 i -> j, 2 j -> i).  Codes are packed most significant bit
first into ceil(bits / 8) bytes, so byte order equals code order.

Two implementations compute the same function: a level-by-level search that
keeps only the orderings whose prefix is minimal (the default), and a numpy
brute force over all cell-respecting permutations (a cross-check).

Cache
-----
One file per (kind, n) in ``$OGT_CACHE_DIR`` (default ``~/.cache/ogt``):
``tour_{n}.census`` / ``og_{n}.census``, an 8-byte little-endian count
followed by fixed-width code records in increasing order.  A file that fails
validation is ignored and rewritten.
"""

from __future__ import annotations

import logging
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import combinations, permutations, product
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import CacheError, GraphError, SizeCapError
from .graphs import (
    OrientedGraph,
    Tournament,
    iter_bits,
    is_strongly_connected,
    transitive_tournament,
)

log = logging.getLogger(__name__)

CANON_CAP = 12
TOURNAMENT_CAP = 10
ORIENTED_CAP = 5
LABELED_CAP = 6

# Published class counts, used only to validate cache files.
_KNOWN_TOURNAMENTS = {0: 1, 1: 1, 2: 1, 3: 2, 4: 4, 5: 12, 6: 56, 7: 456, 8: 6880, 9: 191536, 10: 9733056}
_KNOWN_ORIENTED = {0: 1, 1: 1, 2: 2, 3: 7, 4: 42, 5: 582}


@total_ordering
@dataclass(frozen=True)
class CanonicalCode:
    n: int
    code: bytes

    def __lt__(self, other: "CanonicalCode") -> bool:
        return (self.n, self.code) < (other.n, other.code)

    def hex(self) -> str:
        return f"{self.n}:{self.code.hex()}"


def _width(n: int, tournament: bool) -> int:
    return comb(n, 2) * (1 if tournament else 2)


def _nbytes(n: int, tournament: bool) -> int:
    return (_width(n, tournament) + 7) // 8


def _rows_inn(out: Sequence[int]) -> list[int]:
    inn = [0] * len(out)
    for v, row in enumerate(out):
        for u in iter_bits(row):
            inn[u] |= 1 << v
    return inn


def _position_cells(out: Sequence[int], inn: Sequence[int]) -> list[int]:
    n = len(out)
    keys = [(out[v].bit_count(), inn[v].bit_count()) for v in range(n)]
    cells: dict[tuple[int, int], int] = {}
    for v, key in enumerate(keys):
        cells[key] = cells.get(key, 0) | (1 << v)
    per_position = []
    for key in sorted(cells):
        per_position.extend([cells[key]] * cells[key].bit_count())
    return per_position


def canon_search(out: Sequence[int], tournament: bool) -> tuple[int, list[int]]:
    """Minimal code as an int plus one ordering achieving it (``order[pos] = vertex``)."""
    n = len(out)
    inn = _rows_inn(out)
    cells = _position_cells(out, inn)
    frontier: list[tuple[list[int], int]] = [([], 0)]
    code = 0
    shift = 1 if tournament else 2
    for j in range(n):
        best = -1
        nxt: list[tuple[list[int], int]] = []
        cell = cells[j]
        for perm, used in frontier:
            cand = cell & ~used
            while cand:
                low = cand & -cand
                cand ^= low
                x = low.bit_length() - 1
                col = 0
                if tournament:
                    for p in perm:
                        col = (col << 1) | (out[p] >> x & 1)
                else:
                    ox = out[x]
                    for p in perm:
                        col = (col << 2) | (out[p] >> x & 1) | ((ox >> p & 1) << 1)
                if best < 0 or col < best:
                    best = col
                    nxt = [(perm + [x], used | low)]
                elif col == best:
                    nxt.append((perm + [x], used | low))
        frontier = nxt
        code = (code << (shift * j)) | best
    return code, frontier[0][0]


def canon_brute(out: Sequence[int], tournament: bool) -> int:
    """Same function as :func:`canon_search`, by exhausting cell-respecting permutations."""
    n = len(out)
    if n < 2:
        return 0
    inn = _rows_inn(out)
    cells = _position_cells(out, inn)
    groups = []
    j = 0
    while j < n:
        cell = cells[j]
        size = cell.bit_count()
        groups.append(list(iter_bits(cell)))
        j += size
    blocks = [np.array(list(permutations(g)), dtype=np.int64) for g in groups]
    perms = blocks[0]
    for blk in blocks[1:]:
        a = np.repeat(perms, len(blk), axis=0)
        b = np.tile(blk, (len(perms), 1))
        perms = np.concatenate([a, b], axis=1)
    adj = np.zeros((n, n), dtype=np.int64)
    for v, row in enumerate(out):
        for u in iter_bits(row):
            adj[v, u] = 1
    pairs = [(i, jj) for jj in range(n) for i in range(jj)]
    shift = 1 if tournament else 2
    total = shift * len(pairs)
    value = np.zeros(len(perms), dtype=np.int64)
    for k, (i, jj) in enumerate(pairs):
        pi, pj = perms[:, i], perms[:, jj]
        state = adj[pi, pj] if tournament else adj[pi, pj] + 2 * adj[pj, pi]
        value |= state << (total - shift * (k + 1))
    return int(value.min())


def _code_bytes(code: int, n: int, tournament: bool) -> bytes:
    width = _width(n, tournament)
    nbytes = (width + 7) // 8
    return (code << (nbytes * 8 - width)).to_bytes(nbytes, "big")


def _decode(n: int, data: bytes, tournament: bool) -> list[int]:
    width = _width(n, tournament)
    nbytes = (width + 7) // 8
    if len(data) != nbytes:
        raise CacheError("code record has the wrong width")
    value = int.from_bytes(data, "big")
    if value & ((1 << (nbytes * 8 - width)) - 1):
        raise CacheError("non-zero padding in code record")
    value >>= nbytes * 8 - width
    rows = [0] * n
    shift = 1 if tournament else 2
    k = width
    for j in range(n):
        for i in range(j):
            k -= shift
            state = (value >> k) & (1 if tournament else 3)
            if tournament:
                if state:
                    rows[i] |= 1 << j
                else:
                    rows[j] |= 1 << i
            elif state == 1:
                rows[i] |= 1 << j
            elif state == 2:
                rows[j] |= 1 << i
            elif state == 3:
                raise CacheError("invalid pair state in code record")
    return rows


def _check_canon_size(g: OrientedGraph) -> None:
    if g.n > CANON_CAP:
        raise SizeCapError(f"canonical codes are limited to {CANON_CAP} vertices")


def canonical_code(g: OrientedGraph, method: str = "search") -> CanonicalCode:
    _check_canon_size(g)
    tour = g.is_tournament
    if method == "search":
        code, _ = canon_search(g.out, tour)
    elif method == "brute":
        code = canon_brute(g.out, tour)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CanonicalCode(g.n, _code_bytes(code, g.n, tour))


def canonical_form(g: OrientedGraph) -> OrientedGraph:
    """The relabelled copy of ``g`` whose pair states spell out its canonical code."""
    _check_canon_size(g)
    _, order = canon_search(g.out, g.is_tournament)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def are_isomorphic(g: OrientedGraph, h: OrientedGraph) -> bool:
    if g.n != h.n or g.num_arcs != h.num_arcs:
        return False
    return canonical_code(g) == canonical_code(h)


def isomorphic_brute(g: OrientedGraph, h: OrientedGraph) -> bool:
    """Permutation oracle: try every bijection.  Intended for n <= 8."""
    if g.n != h.n or g.num_arcs != h.num_arcs:
        return False
    n = g.n
    g_arcs = g.arcs()
    for perm in permutations(range(n)):
        if all(h.out[perm[u]] >> perm[v] & 1 for u, v in g_arcs):
            return True
    return False


def find_isomorphism(g: OrientedGraph, h: OrientedGraph) -> list[int] | None:
    """A bijection ``perm`` with ``u -> v`` in g iff ``perm[u] -> perm[v]`` in h."""
    if g.n != h.n or g.num_arcs != h.num_arcs:
        return None
    _, og = canon_search(g.out, g.is_tournament)
    _, oh = canon_search(h.out, h.is_tournament)
    perm = [0] * g.n
    for a, b in zip(og, oh):
        perm[a] = b
    if g.relabel(perm) != h:
        return None
    return perm


# ---------------------------------------------------------------------------
# censuses


@dataclass(frozen=True)
class Census:
    n: int
    kind: str
    members: tuple[OrientedGraph, ...]
    codes: tuple[bytes, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[OrientedGraph]:
        return iter(self.members)

    def __getitem__(self, i: int) -> OrientedGraph:
        return self.members[i]

    def index_of(self, g: OrientedGraph) -> int:
        """Position of the member isomorphic to ``g``."""
        code = canonical_code(g).code
        lo, hi = 0, len(self.codes)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.codes[mid] < code:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.codes) and self.codes[lo] == code:
            return lo
        raise KeyError("graph is not isomorphic to any census member")


def cache_dir() -> Path:
    env = os.environ.get("OGT_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "ogt"


def default_threads() -> int:
    env = os.environ.get("OGT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer OGT_THREADS=%r", env)
    return os.cpu_count() or 1


def _cache_path(kind: str, n: int) -> Path:
    prefix = "tour" if kind == "tournament" else "og"
    return cache_dir() / f"{prefix}_{n}.census"


def _read_cache(kind: str, n: int) -> list[bytes] | None:
    path = _cache_path(kind, n)
    try:
        blob = path.read_bytes()
    except OSError:
        return None
    try:
        return _parse_cache(blob, kind, n)
    except CacheError as exc:
        log.warning("discarding census cache %s: %s", path, exc)
        return None


def _parse_cache(blob: bytes, kind: str, n: int) -> list[bytes]:
    tour = kind == "tournament"
    if len(blob) < 8:
        raise CacheError("truncated header")
    (count,) = struct.unpack("<Q", blob[:8])
    known = (_KNOWN_TOURNAMENTS if tour else _KNOWN_ORIENTED).get(n)
    if known is not None and count != known:
        raise CacheError(f"count {count} does not match the expected {known}")
    width = _nbytes(n, tour)
    if len(blob) != 8 + count * width:
        raise CacheError("file size does not match the record count")
    codes = [blob[8 + i * width : 8 + (i + 1) * width] for i in range(count)]
    for a, b in zip(codes, codes[1:]):
        if not a < b:
            raise CacheError("records are not strictly increasing")
    for c in codes:
        rows = _decode(n, c, tour)
        got, _ = canon_search(rows, tour)
        if _code_bytes(got, n, tour) != c:
            raise CacheError("record is not in canonical form")
    return codes


def _write_cache(kind: str, n: int, codes: Sequence[bytes]) -> None:
    path = _cache_path(kind, n)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        with open(tmp, "wb") as fh:
            fh.write(struct.pack("<Q", len(codes)))
            for c in codes:
                fh.write(c)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write census cache %s: %s", path, exc)


def _extend_tournaments(parents: Sequence[Sequence[int]], n: int, method: str = "search") -> set[int]:
    """Canonical codes of every one-vertex extension of the given (n-1)-vertex tournaments."""
    new_bit = 1 << (n - 1)
    found: set[int] = set()
    for rows in parents:
        for beaten in range(1 << (n - 1)):
            ext = [row | new_bit if not beaten >> i & 1 else row for i, row in enumerate(rows)]
            ext.append(beaten)
            if method == "search":
                found.add(canon_search(ext, True)[0])
            else:
                found.add(canon_brute(ext, True))
    return found


def _extend_oriented(parents: Sequence[Sequence[int]], n: int) -> set[int]:
    v = n - 1
    new_bit = 1 << v
    found: set[int] = set()
    for rows in parents:
        for states in product(range(3), repeat=n - 1):
            ext = list(rows)
            mine = 0
            for i, s in enumerate(states):
                if s == 1:
                    ext[i] |= new_bit
                elif s == 2:
                    mine |= 1 << i
            ext.append(mine)
            found.add(canon_search(ext, False)[0])
    return found


def _extend_chunk(args):
    parents, n, method = args
    return _extend_tournaments(parents, n, method)


def _generate_tournament_codes(n: int, threads: int, method: str) -> list[bytes]:
    if n == 0:
        return [b""]
    if n == 1:
        return [_code_bytes(0, 1, True)]
    parents = [m.out for m in tournaments(n - 1, use_cache=True, method=method)]
    if threads > 1 and len(parents) >= 2 * threads:
        chunks = [parents[i::threads] for i in range(threads)]
        found: set[int] = set()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_extend_chunk, [(c, n, method) for c in chunks]):
                found |= part
    else:
        found = _extend_tournaments(parents, n, method)
    return [_code_bytes(c, n, True) for c in sorted(found)]


def _members(codes: Sequence[bytes], n: int, tour: bool) -> tuple[OrientedGraph, ...]:
    cls = Tournament if tour and n > 0 else OrientedGraph
    return tuple(cls._trusted(n, _decode(n, c, tour)) for c in codes)


@lru_cache(maxsize=None)
def _tournament_census(n: int, method: str) -> Census:
    codes = None
    if method == "search":
        codes = _read_cache("tournament", n)
    if codes is None:
        log.info("generating tournament census n=%d", n)
        codes = _generate_tournament_codes(n, _threads_for_generation(), method)
        if method == "search":
            _write_cache("tournament", n, codes)
    return Census(n, "tournament", _members(codes, n, True), tuple(codes))


_generation_threads: int | None = None


def _threads_for_generation() -> int:
    return _generation_threads if _generation_threads is not None else default_threads()


def set_threads(threads: int | None) -> None:
    """Cap the worker count used by census generation (None restores the default)."""
    global _generation_threads
    _generation_threads = threads


def tournaments(n: int, cap: int = TOURNAMENT_CAP, use_cache: bool = True, method: str = "search") -> Census:
    """All tournaments on ``n`` vertices up to isomorphism, sorted by canonical code.

    Built by extending each member of the (n-1)-census by a new vertex in all
    2^(n-1) ways and deduplicating canonical codes.  ``method="brute"`` runs the
    whole chain with the brute-force canonical code and no disk cache.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > cap:
        raise SizeCapError(
            f"tournament census capped at n={cap}; n={n} is infeasible at desk scale "
            "(roughly 10^8+ classes for n = 11)"
        )
    if method not in ("search", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if not use_cache and method == "search":
        codes = _generate_tournament_codes(n, _threads_for_generation(), method)
        return Census(n, "tournament", _members(codes, n, True), tuple(codes))
    return _tournament_census(n, method)


def clear_memory_cache() -> None:
    _tournament_census.cache_clear()
    _oriented_census.cache_clear()


# Predicates for tournaments_filtered.


def strongly_connected(t: OrientedGraph) -> bool:
    return is_strongly_connected(t)


def tt_free(k: int) -> Callable[[OrientedGraph], bool]:
    from .hom import SearchPlan

    plan = SearchPlan(transitive_tournament(k), injective=True)

    def pred(t: OrientedGraph) -> bool:
        return t.n < k or plan.run(t) is None

    pred.__name__ = f"tt_free({k})"
    return pred


def all_k_subsets_dominated(k: int) -> Callable[[OrientedGraph], bool]:
    from .domination import all_k_subsets_dominated as check

    def pred(t: OrientedGraph) -> bool:
        return check(t, k)[0]

    pred.__name__ = f"all_k_subsets_dominated({k})"
    return pred


def tournaments_filtered(n: int, predicate: Callable[[OrientedGraph], bool], **kw) -> Iterator[OrientedGraph]:
    for t in tournaments(n, **kw):
        if predicate(t):
            yield t


# ---------------------------------------------------------------------------
# oriented graphs


def labeled_orientations(n: int) -> Iterator[OrientedGraph]:
    """Every labelled oriented graph on ``n`` vertices.

    Pairs (i, j), i < j, are taken in lexicographic order and cycle through
    the states none, i -> j, j -> i, last pair fastest.
    """
    if n > LABELED_CAP:
        raise SizeCapError(f"labelled streaming is limited to n <= {LABELED_CAP}")
    pairs = list(combinations(range(n), 2))
    for states in product(range(3), repeat=len(pairs)):
        rows = [0] * n
        for (i, j), s in zip(pairs, states):
            if s == 1:
                rows[i] |= 1 << j
            elif s == 2:
                rows[j] |= 1 << i
        yield OrientedGraph._trusted(n, rows)


def labeled_tournaments(n: int) -> Iterator[Tournament]:
    """All 2^C(n,2) labelled tournaments; bit k of the index orients the k-th pair i -> j."""
    if n > 7:
        raise SizeCapError("labelled tournament streaming is limited to n <= 7")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        yield Tournament._trusted(n, rows)


@lru_cache(maxsize=None)
def _oriented_census(n: int) -> Census:
    codes = _read_cache("oriented", n)
    if codes is None:
        if n == 0:
            codes = [b""]
        elif n == 1:
            codes = [_code_bytes(0, 1, False)]
        else:
            parents = [m.out for m in _oriented_census(n - 1)]
            codes = [_code_bytes(c, n, False) for c in sorted(_extend_oriented(parents, n))]
        _write_cache("oriented", n, codes)
    return Census(n, "oriented", _members(codes, n, False), tuple(codes))


def oriented_graphs(n: int, cap: int = ORIENTED_CAP) -> Census:
    """All oriented graphs on ``n`` vertices up to isomorphism (n <= 5 by default)."""
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > cap:
        raise SizeCapError(f"isomorph-free oriented census capped at n={cap}; use labeled_orientations")
    return _oriented_census(n)


def orbit_count(graphs: Iterable[OrientedGraph], n: int) -> int:
    """Number of isomorphism classes among labelled graphs, by marking whole orbits.

    Each unseen graph has its full orbit under all n! relabellings marked; no
    canonical code is involved.
    """
    seen: set[tuple[int, ...]] = set()
    perms = list(permutations(range(n)))
    classes = 0
    for g in graphs:
        if g.out in seen:
            continue
        classes += 1
        for perm in perms:
            rows = [0] * n
            for v, row in enumerate(g.out):
                nv = 0
                for u in iter_bits(row):
                    nv |= 1 << perm[u]
                rows[perm[v]] = nv
            seen.add(tuple(rows))
    return classes
