"""Balanced hypercube topologies: construction, edge dimensions, partitions.

BH_n has 4^n vertices labelled by n radix-4 digits (a0, ..., a_{n-1}); a0 is the
inner index and its parity gives the bipartition color. Vertex codes pack the
digits two bits each with digit 0 in the low bits, so a code doubles as a dense
array index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .errors import PreconditionError

MAX_DIMENSION = 8  # memory is Theta(n * 4^n)


class Color(Enum):
    WHITE = 0  # a0 even
    BLACK = 1  # a0 odd


@dataclass(frozen=True, order=True)
class Vertex:
    """One vertex of BH_n; digits packed into `code`, 2 bits per digit."""

    n: int
    code: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("vertex dimension must be >= 1")
        if not 0 <= self.code < 4**self.n:
            raise PreconditionError(f"code {self.code} out of range for n={self.n}")

    @classmethod
    def from_digits(cls, digits: Iterable[int]) -> "Vertex":
        digits = tuple(digits)
        if any(d not in (0, 1, 2, 3) for d in digits):
            raise PreconditionError(f"digits must be in 0..3, got {digits}")
        code = 0
        for i, d in enumerate(digits):
            code |= d << (2 * i)
        return cls(len(digits), code)

    def digit(self, i: int) -> int:
        return (self.code >> (2 * i)) & 3

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple((self.code >> (2 * i)) & 3 for i in range(self.n))

    @property
    def color(self) -> Color:
        return Color.BLACK if self.code & 1 else Color.WHITE

    def __repr__(self):
        return "V(" + ",".join(str(d) for d in self.digits) + ")"


def color(v: Vertex) -> Color:
    """Bipartition class of a vertex: BLACK iff the inner index is odd."""
    return v.color


def pack_edge(a: int, b: int) -> int:
    """Canonical packed form of an (unordered) code pair: smaller code first."""
    if a > b:
        a, b = b, a
    return (a << 16) | b


def unpack_edge(packed: int) -> tuple[int, int]:
    return packed >> 16, packed & 0xFFFF


@dataclass(frozen=True)
class Edge:
    """Unordered adjacent vertex pair with its cached dimension tag."""

    u: Vertex
    v: Vertex
    dim: int

    @property
    def packed(self) -> int:
        return pack_edge(self.u.code, self.v.code)

    def endpoints(self) -> tuple[Vertex, Vertex]:
        return self.u, self.v

    def other(self, x: Vertex) -> Vertex:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise PreconditionError(f"{x} is not an endpoint of {self}")

    def __repr__(self):
        return f"E({self.u!r}-{self.v!r},d{self.dim})"


def _neighbor_codes_def1(n: int, code: int) -> list[int]:
    a0 = code & 3
    rest = code & ~3
    up = rest | ((a0 + 1) & 3)
    dn = rest | ((a0 - 1) & 3)
    nbrs = [up, dn]
    delta = 1 if a0 % 2 == 0 else -1  # (-1)**a0
    for i in range(1, n):
        shift = 2 * i
        ai = (code >> shift) & 3
        changed = (code & ~(3 << shift)) | (((ai + delta) & 3) << shift)
        base = changed & ~3
        nbrs.append(base | ((a0 + 1) & 3))
        nbrs.append(base | ((a0 - 1) & 3))
    return nbrs


def _dimension_of(n: int, a: int, b: int) -> int:
    """Dimension tag of an edge given by endpoint codes (assumes adjacency)."""
    for i in range(1, n):
        if ((a >> (2 * i)) & 3) != ((b >> (2 * i)) & 3):
            return i
    return 0


class Topology:
    """Immutable BH_n graph: adjacency, edge set grouped by dimension."""

    def __init__(self, n: int, adjacency: list[list[int]]):
        self.n = n
        self.degree = 2 * n
        self.vertex_count = 4**n
        adj = []
        for c, nbrs in enumerate(adjacency):
            uniq = sorted(set(nbrs))
            if c in uniq:
                raise PreconditionError("self-loop in adjacency")
            if len(uniq) != len(nbrs):
                raise PreconditionError("parallel edge in adjacency")
            adj.append(tuple(uniq))
        self.adj: tuple[tuple[int, ...], ...] = tuple(adj)
        by_dim: list[set[int]] = [set() for _ in range(n)]
        masks = [0] * self.vertex_count
        for c, nbrs in enumerate(self.adj):
            m = 0
            for b in nbrs:
                m |= 1 << b
                if c < b:
                    by_dim[_dimension_of(n, c, b)].add(pack_edge(c, b))
            masks[c] = m
        self.neighbor_masks: tuple[int, ...] = tuple(masks)
        self.edges_by_dim: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in by_dim)
        self.edge_set: frozenset[int] = frozenset().union(*by_dim) if n else frozenset()
        self.edge_count = len(self.edge_set)
        self._dim_of: dict[int, int] = {}
        for d, s in enumerate(self.edges_by_dim):
            for p in s:
                self._dim_of[p] = d
        self._partitions: dict[int, "Partition"] = {}

    # -- vertices ----------------------------------------------------------
    def vertex(self, code: int) -> Vertex:
        return Vertex(self.n, code)

    def vertices(self) -> Iterator[Vertex]:
        return (Vertex(self.n, c) for c in range(self.vertex_count))

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return tuple(Vertex(self.n, c) for c in self.adj[v.code])

    # -- edges -------------------------------------------------------------
    def has_edge_codes(self, a: int, b: int) -> bool:
        return pack_edge(a, b) in self._dim_of

    def dim_of_packed(self, packed: int) -> int:
        return self._dim_of[packed]

    def edge_from_packed(self, packed: int) -> Edge:
        a, b = unpack_edge(packed)
        return Edge(Vertex(self.n, a), Vertex(self.n, b), self._dim_of[packed])

    def edge(self, u: Vertex, v: Vertex) -> Edge:
        p = pack_edge(u.code, v.code)
        if p not in self._dim_of:
            raise PreconditionError(f"{u!r} and {v!r} are not adjacent")
        return self.edge_from_packed(p)

    def edges(self) -> Iterator[Edge]:
        for p in sorted(self.edge_set):
            yield self.edge_from_packed(p)

    def cross_neighbors(self, code: int, d: int) -> tuple[int, ...]:
        """The two d-dimension neighbors of a vertex, by code."""
        return tuple(b for b in self.adj[code] if pack_edge(code, b) in self.edges_by_dim[d])

    # -- partition ---------------------------------------------------------
    def partition(self, j: int) -> "Partition":
        if j not in self._partitions:
            self._partitions[j] = Partition(self, j)
        return self._partitions[j]

    # -- export --------------------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "vertices": [list(Vertex(self.n, c).digits) for c in range(self.vertex_count)],
            "edges": [
                {
                    "u": list(self.edge_from_packed(p).u.digits),
                    "v": list(self.edge_from_packed(p).v.digits),
                    "dim": self._dim_of[p],
                }
                for p in sorted(self.edge_set)
            ],
        }
        return json.dumps(doc, sort_keys=True)

    def to_dot(self) -> str:
        def name(c: int) -> str:
            return '"' + "".join(str(d) for d in Vertex(self.n, c).digits) + '"'

        lines = ["graph bh {"]
        for c in range(self.vertex_count):
            col = "black" if c & 1 else "white"
            lines.append(f"  {name(c)} [color={col}];")
        for p in sorted(self.edge_set):
            a, b = unpack_edge(p)
            lines.append(f"  {name(a)} -- {name(b)} [dim={self._dim_of[p]}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Topology(BH_{self.n}: {self.vertex_count} vertices, {self.edge_count} edges)"


def _validate_n(n: int):
    if not isinstance(n, int) or not 1 <= n <= MAX_DIMENSION:
        raise PreconditionError(f"dimension must be an integer in 1..{MAX_DIMENSION}, got {n}")


@lru_cache(maxsize=None)
def build_def1(n: int) -> Topology:
    """Build BH_n from the direct neighbor formula."""
    _validate_n(n)
    adjacency = [_neighbor_codes_def1(n, c) for c in range(4**n)]
    return Topology(n, adjacency)


@lru_cache(maxsize=None)
def build_def2(n: int) -> Topology:
    """Build BH_n by the four-copy recursion with two extra cross neighbors."""
    _validate_n(n)
    if n == 1:
        return Topology(1, [[(c - 1) & 3, (c + 1) & 3] for c in range(4)])
    sub = build_def2(n - 1)
    shift = 2 * (n - 1)
    adjacency: list[set[int]] = [set() for _ in range(4**n)]
    for i in range(4):
        off = i << shift
        for c, nbrs in enumerate(sub.adj):
            adjacency[off | c].update(off | b for b in nbrs)
    for code in range(4**n):
        a0 = code & 3
        i = (code >> shift) & 3
        low = code & ~(3 << shift)
        rest = low & ~3
        if a0 % 2 == 0:
            target = ((i + 1) & 3) << shift
        else:
            target = ((i - 1) & 3) << shift
        for b0 in ((a0 + 1) & 3, (a0 - 1) & 3):
            other = target | rest | b0
            adjacency[code].add(other)
            adjacency[other].add(code)
    return Topology(n, [sorted(s) for s in adjacency])


def edge_dimension(u: Vertex, v: Vertex) -> int:
    """Dimension tag of the edge (u, v); raises if the pair is not adjacent."""
    if u.n != v.n:
        raise PreconditionError("vertices of different dimension")
    if v.code not in _neighbor_codes_def1(u.n, u.code):
        raise PreconditionError(f"{u!r} and {v!r} are not adjacent")
    return _dimension_of(u.n, u.code, v.code)


# ---------------------------------------------------------------------------
# Partition along one dimension
# ---------------------------------------------------------------------------


def _component_label(n: int, j: int, code: int) -> int:
    if j >= 1:
        return (code >> (2 * j)) & 3
    # Removing the 0-dimension edges separates the graph by the invariant
    # ((a0 odd) - sum of the outer digits) mod 4; every remaining edge adds 1
    # to exactly one outer digit while flipping the parity of a0.
    s = code & 1
    c = code >> 2
    while c:
        s -= c & 3
        c >>= 2
    return s % 4


def _digit_sum(code: int) -> int:
    s = 0
    while code:
        s += code & 3
        code >>= 2
    return s


@dataclass(frozen=True)
class ComponentView:
    """One of the four components of BH_n - dD_j, with its relabelling to BH_{n-1}.

    `to_sub`/`from_sub` realize the digit-deletion isomorphism onto build_def1(n-1):
    for j >= 1 digit j is deleted; for j = 0 digit 1 is deleted and reconstructed
    from the component invariant.
    """

    label: int
    member_codes: tuple[int, ...]
    member_set: frozenset[int]
    sub: Topology
    to_sub: Callable[[int], int]
    from_sub: Callable[[int], int]

    def contains(self, v: Vertex) -> bool:
        return v.code in self.member_set

    def sub_vertex(self, v: Vertex) -> Vertex:
        return Vertex(self.sub.n, self.to_sub(v.code))

    def parent_vertex(self, sv: Vertex) -> Vertex:
        return Vertex(self.sub.n + 1, self.from_sub(sv.code))


def _make_maps(n: int, j: int, label: int) -> tuple[Callable[[int], int], Callable[[int], int]]:
    del_digit = j if j >= 1 else 1
    shift = 2 * del_digit
    low_mask = (1 << shift) - 1

    def to_sub(code: int) -> int:
        return (code & low_mask) | ((code >> (shift + 2)) << shift)

    if j >= 1:
        def from_sub(sub_code: int) -> int:
            return (
                (sub_code & low_mask)
                | (label << shift)
                | ((sub_code >> shift) << (shift + 2))
            )
    else:
        def from_sub(sub_code: int) -> int:
            a0 = sub_code & 3
            outer_sum = _digit_sum(sub_code) - a0
            a1 = ((a0 & 1) - label - outer_sum) % 4
            return (sub_code & 3) | (a1 << 2) | ((sub_code >> 2) << 4)

    return to_sub, from_sub


class Partition:
    """The four BH_{n-1} components of BH_n - dD_j plus the cross-edge map.

    Component labels are cyclic: every cross edge joins components i and i+1,
    with the WHITE endpoint in component i (never i and i+2). Component 0
    contains the all-zero vertex.
    """

    def __init__(self, host: Topology, j: int):
        if host.n < 2:
            raise PreconditionError("partition requires n >= 2")
        if not 0 <= j < host.n:
            raise PreconditionError(f"split dimension {j} out of range for n={host.n}")
        self.host = host
        self.j = j
        n = host.n
        sub = build_def1(n - 1)
        members: list[list[int]] = [[], [], [], []]
        labels = [0] * host.vertex_count
        for code in range(host.vertex_count):
            lab = _component_label(n, j, code)
            labels[code] = lab
            members[lab].append(code)
        self.label_of: tuple[int, ...] = tuple(labels)
        comps = []
        for lab in range(4):
            to_sub, from_sub = _make_maps(n, j, lab)
            codes = tuple(members[lab])
            if len(codes) != 4 ** (n - 1):
                raise PreconditionError("component sizes are not equal")
            comps.append(
                ComponentView(lab, codes, frozenset(codes), sub, to_sub, from_sub)
            )
        self.components: tuple[ComponentView, ...] = tuple(comps)
        self.cross_edges: frozenset[int] = host.edges_by_dim[j]
        cross_nbrs: dict[int, tuple[int, ...]] = {}
        for p in self.cross_edges:
            a, b = unpack_edge(p)
            cross_nbrs.setdefault(a, ())
            cross_nbrs.setdefault(b, ())
            cross_nbrs[a] = cross_nbrs[a] + (b,)
            cross_nbrs[b] = cross_nbrs[b] + (a,)
        self.cross_nbrs: dict[int, tuple[int, ...]] = {
            c: tuple(sorted(v)) for c, v in cross_nbrs.items()
        }

    def component_of_code(self, code: int) -> ComponentView:
        return self.components[self.label_of[code]]

    def component_of(self, v: Vertex) -> ComponentView:
        return self.components[self.label_of[v.code]]

    def in_component_neighbors(self, code: int) -> tuple[int, ...]:
        lab = self.label_of[code]
        return tuple(b for b in self.host.adj[code] if self.label_of[b] == lab)

    def cross_neighbors_of(self, code: int) -> tuple[int, ...]:
        return self.cross_nbrs.get(code, ())

    def cross_edges_between(self, lab_a: int, lab_b: int) -> list[int]:
        out = []
        for p in self.cross_edges:
            a, b = unpack_edge(p)
            la, lb = self.label_of[a], self.label_of[b]
            if {la, lb} == {lab_a, lab_b}:
                out.append(p)
        return sorted(out)


def partition_by_dimension(t: Topology, j: int) -> Partition:
    """Split BH_n along dimension j into four BH_{n-1} components (cached)."""
    return t.partition(j)
