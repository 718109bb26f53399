"""Immutable CSR graph with SNAP edge-list ingestion and exact densities."""
from __future__ import annotations

import gzip
import hashlib
import io
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from pathlib import Path

import numpy as np


class GraphFormatError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(ValueError):
    """No edges survive preprocessing."""


class CacheMismatchError(ValueError):
    """Binary cache does not belong to the given text file."""


@total_ordering
@dataclass(frozen=True)
class Density:
    """Edge/vertex ratio kept as an unreduced integer pair.

    Ordering uses cross-multiplication so two densities never compare
    through floating point.
    """

    edges: int
    verts: int

    def __post_init__(self):
        if self.verts < 1:
            raise ValueError("density needs at least one vertex")

    def __eq__(self, other):
        if not isinstance(other, Density):
            return NotImplemented
        return self.edges * other.verts == other.edges * self.verts

    def __lt__(self, other):
        if not isinstance(other, Density):
            return NotImplemented
        return self.edges * other.verts < other.edges * self.verts

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self):
        return self.edges / self.verts

    def as_fraction(self) -> Fraction:
        return Fraction(self.edges, self.verts)

    def __str__(self):
        return f"{self.edges}/{self.verts}"


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    degree_histogram: np.ndarray | None = None


class Graph:
    """Undirected simple graph in compressed adjacency form.

    ``offsets`` has length n+1 and ``neighbors`` length 2m; neighbor lists are
    sorted.  ``orig_ids[v]`` is the input id of dense vertex ``v``.  Instances
    are treated as read-only once built.
    """

    __slots__ = ("offsets", "neighbors", "orig_ids", "_degrees")

    def __init__(self, offsets, neighbors, orig_ids):
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        self.neighbors = np.ascontiguousarray(neighbors, dtype=np.int64)
        self.orig_ids = np.ascontiguousarray(orig_ids, dtype=np.int64)
        if len(self.offsets) != len(self.orig_ids) + 1:
            raise ValueError("offsets must have length n + 1")
        self._degrees = np.diff(self.offsets)
        for arr in (self.offsets, self.neighbors, self.orig_ids, self._degrees):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.orig_ids)

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max()) if self.n else 0

    def adj(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def density(self) -> Density:
        return Density(self.m, self.n)

    def edges(self) -> np.ndarray:
        """(m, 2) array of dense-id pairs with u < v, ascending."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self._degrees)
        keep = src < self.neighbors
        return np.column_stack((src[keep], self.neighbors[keep]))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
            and np.array_equal(self.orig_ids, other.orig_ids)
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(pairs, orig_ids=None, *, allow_empty: bool = False) -> Graph:
    """Build a cleaned graph from an (k, 2) array of non-negative ids.

    Self-loops are dropped and repeated edges in either direction collapse.
    Ids left without an edge disappear.  Dense ids follow ascending
    input id.  When ``orig_ids`` is given, ``pairs`` are indices into it and
    are relabelled through it.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    u, v = pairs[:, 0], pairs[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]
    if len(u) == 0:
        if allow_empty:
            return Graph(np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64),
                         np.zeros(0, dtype=np.int64))
        raise EmptyGraphError("graph has no edges after removing self-loops")
    if orig_ids is not None:
        orig_ids = np.asarray(orig_ids, dtype=np.int64)
        u, v = orig_ids[u], orig_ids[v]
    ids = np.unique(np.concatenate((u, v)))
    du = np.searchsorted(ids, u)
    dv = np.searchsorted(ids, v)
    src = np.concatenate((du, dv))
    dst = np.concatenate((dv, du))
    n = len(ids)
    key = np.unique(src * n + dst)
    src, dst = np.divmod(key, n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return Graph(offsets, dst, ids)


def _open_bytes(source) -> bytes:
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    return data


def parse_edge_list(source, comment: str = "#", zero_index: bool = True,
                    strict_pairs: bool = False) -> Graph:
    """Parse a whitespace edge list (SNAP style) into a cleaned Graph.

    ``source`` may be a path, raw bytes, or a binary/text stream; gzip input
    is detected by magic bytes.  Columns after the first two are ignored
    unless ``strict_pairs`` is set (SNAP files such as as-Caida carry a
    relationship column).  With ``zero_index=False`` ids are taken as
    1-based and shifted down by one.
    """
    data = _open_bytes(source)
    prefix = comment.encode()
    us: list[bytes] = []
    vs: list[bytes] = []
    for lineno, line in enumerate(data.splitlines(), 1):
        parts = line.split()
        if not parts or (prefix and parts[0].startswith(prefix)):
            continue
        if len(parts) < 2 or (strict_pairs and len(parts) != 2):
            raise GraphFormatError(f"expected 2 ids, got {len(parts)} tokens", lineno)
        us.append(parts[0])
        vs.append(parts[1])
    if not us:
        raise EmptyGraphError("edge list contains no edges")
    try:
        pairs = np.column_stack((np.array(us).astype(np.int64),
                                 np.array(vs).astype(np.int64)))
        bad = np.flatnonzero((pairs < 0).any(axis=1))
    except (ValueError, OverflowError):
        bad = None
    if bad is None or len(bad):
        _raise_first_bad_line(data, prefix)
    if not zero_index:
        if (pairs == 0).any():
            raise GraphFormatError("id 0 in a 1-indexed edge list")
        pairs -= 1
    return from_edges(pairs)


def _raise_first_bad_line(data: bytes, prefix: bytes):
    for lineno, line in enumerate(data.splitlines(), 1):
        parts = line.split()
        if not parts or (prefix and parts[0].startswith(prefix)):
            continue
        for tok in parts[:2]:
            if not tok.isdigit():
                raise GraphFormatError(f"bad vertex id {tok.decode(errors='replace')!r}",
                                       lineno)
    raise GraphFormatError("unparseable edge list")


def induced_subgraph(g: Graph, keep) -> Graph:
    """Subgraph on vertices where ``keep`` is true, relabelled densely.

    Relative vertex order is preserved and ``orig_ids`` composes, so the
    result still reports the ids of the original input.
    """
    keep = np.asarray(keep, dtype=bool)
    if keep.shape != (g.n,):
        raise ValueError(f"mask length {keep.shape} does not match n={g.n}")
    new_id = np.cumsum(keep, dtype=np.int64) - 1
    src = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    sel = keep[src] & keep[g.neighbors]
    k = int(keep.sum())
    offsets = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(np.bincount(new_id[src[sel]], minlength=k), out=offsets[1:])
    return Graph(offsets, new_id[g.neighbors[sel]], g.orig_ids[keep])


def stats(g: Graph, histogram: bool = False) -> GraphStats:
    hist = np.bincount(g.degrees) if histogram and g.n else None
    return GraphStats(g.n, g.m, g.max_degree, hist)


def write_edge_list(g: Graph, dest=None) -> bytes:
    """Canonical text form: one ``u v`` per line in original ids, u < v, ascending."""
    e = g.orig_ids[g.edges()]
    e.sort(axis=1)
    e = e[np.lexsort((e[:, 1], e[:, 0]))]
    buf = io.StringIO()
    np.savetxt(buf, e, fmt="%d", delimiter=" ")
    out = buf.getvalue().encode()
    if dest is not None:
        Path(dest).write_bytes(out)
    return out


# Binary cache: little-endian 64-bit throughout.
#   magic(8) | n | m | sha256 of source text (32 bytes)
#   | offsets[n+1] | neighbors[2m] | orig_ids[n]
CACHE_MAGIC = b"PRDCSR01"
_HEADER = struct.Struct("<8sQQ32s")


def content_hash(source) -> bytes:
    return hashlib.sha256(_open_bytes(source)).digest()


def save_cache(g: Graph, dest, source_hash: bytes = b"\0" * 32) -> None:
    with open(dest, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, g.n, g.m, source_hash))
        for arr in (g.offsets, g.neighbors, g.orig_ids):
            fh.write(arr.astype("<i8").tobytes())


def is_cache(path) -> bool:
    with open(path, "rb") as fh:
        return fh.read(8) == CACHE_MAGIC


def load_cache(path, expect_hash: bytes | None = None) -> Graph:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise GraphFormatError("truncated cache header")
    magic, n, m, digest = _HEADER.unpack_from(raw)
    if magic != CACHE_MAGIC:
        raise GraphFormatError("not a graph cache file")
    if expect_hash is not None and digest != expect_hash:
        raise CacheMismatchError(f"{path} was built from different input")
    body = np.frombuffer(raw, dtype="<i8", offset=_HEADER.size)
    if len(body) != (n + 1) + 2 * m + n:
        raise GraphFormatError("cache length does not match header")
    offsets = body[:n + 1]
    neighbors = body[n + 1:n + 1 + 2 * m]
    orig_ids = body[n + 1 + 2 * m:]
    return Graph(offsets.astype(np.int64), neighbors.astype(np.int64), orig_ids.astype(np.int64))


def cache_hash(path) -> bytes:
    with open(path, "rb") as fh:
        return _HEADER.unpack(fh.read(_HEADER.size))[3]


def load_graph(path, cache=None) -> Graph:
    """Load text or binary input; ``cache`` names an optional binary sidecar.

    A missing cache is written after parsing.  An existing cache whose stored
    hash differs from the text file raises :class:`CacheMismatchError`.
    """
    path = Path(path)
    if is_cache(path):
        return load_cache(path)
    if cache is None:
        return parse_edge_list(path)
    data = path.read_bytes()
    digest = hashlib.sha256(_open_bytes(data)).digest()
    cache = Path(cache)
    if cache.exists():
        return load_cache(cache, expect_hash=digest)
    g = parse_edge_list(data)
    save_cache(g, cache, digest)
    return g
