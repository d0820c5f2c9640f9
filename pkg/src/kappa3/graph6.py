"""graph6 encoding and decoding (short form, n <= 62)."""

from __future__ import annotations

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def encode(g: Graph) -> str:
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    line = text.strip()
    if line.startswith(HEADER):
        line = line[len(HEADER):]
    if not line:
        raise Graph6Error("empty graph6 line")
    codes = []
    for pos, ch in enumerate(line):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise Graph6Error(f"invalid graph6 character {ch!r} at position {pos}")
        codes.append(c)
    if codes[0] == 63:
        # long forms only encode n >= 63
        raise Graph6Error(f"graph6 order exceeds capacity {MAX_VERTICES}")
    n = codes[0]
    if n > MAX_VERTICES:
        raise Graph6Error(f"graph6 order {n} exceeds capacity {MAX_VERTICES}")
    body = codes[1:]
    need = n * (n - 1) // 2
    if len(body) * 6 < need:
        raise Graph6Error(f"truncated graph6 body: {len(body) * 6} bits for {need}")
    if len(body) != (need + 5) // 6:
        raise Graph6Error("graph6 body longer than expected")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))
