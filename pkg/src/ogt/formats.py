"""Text encodings: digraph6 and the native ``n:HEX`` tournament format.

Native format: the upper-triangle bits b(i, j), i < j, in lexicographic
(i, j) order, 1 iff the arc is i -> j, packed most significant bit first and
zero padded to a whole byte, written as upper-case hex after ``n:``.  Only
tournaments can be written this way.
"""

from __future__ import annotations

from .errors import GraphError, NotTournamentError, SizeCapError
from .graphs import MAX_VERTICES, OrientedGraph, _from_rows


def _pack_bits(bits: list[int]) -> bytes:
    nbytes = (len(bits) + 7) // 8
    value = 0
    for b in bits:
        value = (value << 1) | b
    value <<= nbytes * 8 - len(bits)
    return value.to_bytes(nbytes, "big")


def _unpack_bits(data: bytes, count: int) -> list[int]:
    value = int.from_bytes(data, "big")
    total = len(data) * 8
    return [(value >> (total - 1 - i)) & 1 for i in range(count)]


def to_hex(t: OrientedGraph) -> str:
    if not t.is_tournament:
        raise NotTournamentError("the native hex format only holds tournaments")
    bits = [t.out[i] >> j & 1 for i in range(t.n) for j in range(i + 1, t.n)]
    return f"{t.n}:{_pack_bits(bits).hex().upper()}"


def from_hex(text: str) -> OrientedGraph:
    head, sep, body = text.strip().partition(":")
    if not sep or not head.isdigit():
        raise GraphError(f"not a native hex string: {text!r}")
    n = int(head)
    if n > MAX_VERTICES:
        raise SizeCapError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
    npairs = n * (n - 1) // 2
    try:
        data = bytes.fromhex(body)
    except ValueError as exc:
        raise GraphError(f"bad hex payload in {text!r}") from exc
    if len(data) != (npairs + 7) // 8:
        raise GraphError(f"expected {(npairs + 7) // 8} bytes for n={n}, got {len(data)}")
    bits = _unpack_bits(data, len(data) * 8)
    if any(bits[npairs:]):
        raise GraphError("non-zero padding bits")
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits[k]:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            k += 1
    return _from_rows(n, rows)


def _size_field(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def to_digraph6(g: OrientedGraph) -> str:
    """digraph6 string: '&', the vertex count, then the full adjacency matrix row by row."""
    bits = [g.out[i] >> j & 1 for i in range(g.n) for j in range(g.n)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return "&" + _size_field(g.n) + body


def from_digraph6(text: str) -> OrientedGraph:
    s = text.strip()
    if not s.startswith("&"):
        raise GraphError(f"digraph6 strings start with '&': {text!r}")
    s = s[1:]
    if not s:
        raise GraphError("missing vertex count")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise SizeCapError("vertex counts above 258047 are not supported")
        if len(s) < 4:
            raise GraphError("truncated vertex count")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        s = s[4:]
    else:
        n = ord(s[0]) - 63
        s = s[1:]
    if not 0 <= n:
        raise GraphError("bad vertex count")
    if n > MAX_VERTICES:
        raise SizeCapError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
    need = (n * n + 5) // 6
    if len(s) != need:
        raise GraphError(f"expected {need} data characters for n={n}, got {len(s)}")
    bits = []
    for ch in s:
        v = ord(ch) - 63
        if not 0 <= v < 64:
            raise GraphError(f"invalid digraph6 character {ch!r}")
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if bits[i * n + j]:
                rows[i] |= 1 << j
    return _from_rows(n, rows)


def parse_graph_text(text: str) -> OrientedGraph:
    """Decode either encoding, chosen by its leading character."""
    s = text.strip()
    if s.startswith("&"):
        return from_digraph6(s)
    if ":" in s:
        return from_hex(s)
    raise GraphError(f"unrecognised graph encoding: {text!r}")
