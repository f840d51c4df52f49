"""Graph interchange formats: graph6 and a plain edge-list text format.

graph6 follows the McKay encoding: N(n) header then the upper triangle
packed column-by-column (x[k] runs over pairs (u,v), v>u, ordered by v
then u), six bits per printable byte, offset 63.
"""

from __future__ import annotations

from .graphs import Graph


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes(
            [126, 126]
            + [((n >> (6 * k)) & 63) + 63 for k in range(5, -1, -1)]
        )
    raise ValueError("vertex count too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, bytes consumed)."""
    if not data:
        raise ValueError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise ValueError("truncated graph6 header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        return n, 4
    if len(data) < 8:
        raise ValueError("truncated graph6 header")
    n = 0
    for k in range(2, 8):
        n = (n << 6) | (data[k] - 63)
    return n, 8


def to_graph6(g: Graph) -> str:
    bits = []
    for v in range(g.n):
        for u in range(v):
            bits.append(g.bits[u] >> v & 1)
    # pad to a multiple of 6
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_encode_n(g.n))
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k : k + 6]:
            word = word << 1 | b
        out.append(word + 63)
    return out.decode("ascii")


def from_graph6(s: str) -> Graph:
    data = s.strip().encode("ascii")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    n, used = _decode_n(data)
    body = data[used:]
    need = n * (n - 1) // 2
    bits: list[int] = []
    for byte in body:
        if not 63 <= byte <= 126:
            raise ValueError(f"bad graph6 byte {byte}")
        word = byte - 63
        for k in range(5, -1, -1):
            bits.append(word >> k & 1)
    if len(bits) < need:
        raise ValueError("graph6 body too short")
    if any(bits[need:]):
        raise ValueError("graph6 padding bits not zero")
    g = Graph(n)
    k = 0
    for v in range(n):
        for u in range(v):
            if bits[k]:
                g.add_edge(u, v)
            k += 1
    return g


def to_edgelist(g: Graph) -> str:
    """'p <n> <m>' header then one 'u v' line per edge, u < v, sorted."""
    lines = [f"p {g.n} {g.edge_count()}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("p "):
        raise ValueError("edge list must start with a 'p <n> <m>' line")
    parts = lines[0].split()
    if len(parts) != 3:
        raise ValueError(f"malformed header {lines[0]!r}")
    n, m = int(parts[1]), int(parts[2])
    g = Graph(n)
    for ln in lines[1:]:
        us, vs = ln.split()
        g.add_edge(int(us), int(vs))
    if g.edge_count() != m:
        raise ValueError(f"header claims {m} edges, file has {g.edge_count()}")
    return g
