"""Faulty edge sets, the conditional fault model, and split-dimension selection."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InternalInvariantError, PreconditionError
from .topology import (
    Edge,
    Partition,
    Topology,
    Vertex,
    _component_label,
    pack_edge,
    unpack_edge,
)

CASE1 = "CASE1"
CASE2 = "CASE2"


class FaultSet:
    """A set of faulty edges with cached per-dimension and per-vertex summaries."""

    def __init__(self, t: Topology, edges: Iterable[int | Edge]):
        packed = set()
        for e in edges:
            p = e.packed if isinstance(e, Edge) else e
            if p not in t.edge_set:
                raise PreconditionError(f"fault {unpack_edge(p)} is not an edge of the host")
            packed.add(p)
        self.n = t.n
        self.faulty: frozenset[int] = frozenset(packed)
        per_dim = [0] * t.n
        per_vertex: dict[int, int] = {}
        for p in packed:
            per_dim[t.dim_of_packed(p)] += 1
            a, b = unpack_edge(p)
            per_vertex[a] = per_vertex.get(a, 0) + 1
            per_vertex[b] = per_vertex.get(b, 0) + 1
        self.per_dimension_count: tuple[int, ...] = tuple(per_dim)
        self.per_vertex_fault_degree: dict[int, int] = per_vertex

    @classmethod
    def from_edges(cls, t: Topology, edges: Iterable[Edge]) -> "FaultSet":
        return cls(t, edges)

    def __len__(self):
        return len(self.faulty)

    def __contains__(self, e: int | Edge) -> bool:
        p = e.packed if isinstance(e, Edge) else e
        return p in self.faulty

    def is_faulty_codes(self, a: int, b: int) -> bool:
        return pack_edge(a, b) in self.faulty

    def fault_degree_code(self, code: int) -> int:
        return self.per_vertex_fault_degree.get(code, 0)

    def edges(self, t: Topology) -> Iterator[Edge]:
        for p in sorted(self.faulty):
            yield t.edge_from_packed(p)

    def without(self, t: Topology, drop: Iterable[int | Edge]) -> "FaultSet":
        drop_p = {e.packed if isinstance(e, Edge) else e for e in drop}
        return FaultSet(t, self.faulty - drop_p)

    def with_added(self, t: Topology, extra: Iterable[int | Edge]) -> "FaultSet":
        extra_p = {e.packed if isinstance(e, Edge) else e for e in extra}
        return FaultSet(t, set(self.faulty) | extra_p)

    def to_json(self, t: Topology, seed: int | None = None) -> str:
        doc = {
            "n": self.n,
            "faults": [
                {"u": list(e.u.digits), "v": list(e.v.digits)} for e in self.edges(t)
            ],
            "seed": seed,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, t: Topology, text: str) -> "FaultSet":
        doc = json.loads(text)
        if doc["n"] != t.n:
            raise PreconditionError(f"fault set is for n={doc['n']}, host is n={t.n}")
        edges = []
        for item in doc["faults"]:
            u = Vertex.from_digits(item["u"])
            v = Vertex.from_digits(item["v"])
            edges.append(t.edge(u, v))
        return cls(t, edges)

    def __repr__(self):
        return f"FaultSet(n={self.n}, |F|={len(self.faulty)})"


def is_conditional(t: Topology, f: FaultSet) -> bool:
    """True iff every vertex keeps at least two fault-free incident edges."""
    limit = t.degree - 2
    return all(d <= limit for d in f.per_vertex_fault_degree.values())


def rescuability(t: Topology, f: FaultSet, u: Vertex, restricted_to=None) -> int:
    """Number of fault-free neighbors of u, optionally within one partition component."""
    code = u.code
    if restricted_to is None:
        nbrs = t.adj[code]
    else:
        if not restricted_to.contains(u):
            raise PreconditionError(f"{u!r} is not in the given component")
        member = restricted_to.member_set
        nbrs = [b for b in t.adj[code] if b in member]
    return sum(1 for b in nbrs if not f.is_faulty_codes(code, b))


# ---------------------------------------------------------------------------
# Split-dimension selection
# ---------------------------------------------------------------------------


def _in_component_free_degrees(t: Topology, f: FaultSet, m: int) -> dict[int, int]:
    """Fault-free in-component degree for every vertex touched by a fault.

    Untouched vertices keep the full in-component degree 2n-2; only the touched
    ones can fall below it, so only they are returned.
    """
    base = t.degree - 2
    deg: dict[int, int] = {}
    for code in f.per_vertex_fault_degree:
        deg[code] = base
    for p in f.faulty:
        if t.dim_of_packed(p) == m:
            continue
        a, b = unpack_edge(p)
        deg[a] -= 1
        deg[b] -= 1
    return deg


def _isolation_profile(t: Topology, f: FaultSet, m: int) -> tuple[int, int]:
    """(minimum in-component free degree, number of 1-rescuable vertices) for dD_m."""
    deg = _in_component_free_degrees(t, f, m)
    if not deg:
        return t.degree - 2, 0
    lo = min(deg.values())
    ones = sum(1 for d in deg.values() if d == 1)
    return lo, ones


@dataclass(frozen=True)
class SplitChoice:
    """Outcome of split-dimension selection; self-verifies before being returned."""

    kind: str  # CASE1 | CASE2
    m: int
    m_prime: int | None = None
    padded: bool = False

    def verify(self, t: Topology, f: FaultSet) -> bool:
        if self.kind == CASE1:
            lo, _ = _isolation_profile(t, f, self.m)
            return f.per_dimension_count[self.m] >= 3 and lo >= 2
        if self.kind != CASE2 or self.m_prime is None or self.m_prime == self.m:
            return False
        for d in (self.m, self.m_prime):
            lo, ones = _isolation_profile(t, f, d)
            if lo < 1 or ones > 1:
                return False
            if not self.padded and f.per_dimension_count[d] < 2:
                return False
        return True


def select_split_dimension(t: Topology, f: FaultSet) -> SplitChoice:
    """Pick a partition dimension whose components stay safe for the construction.

    CASE1 (some dimension holds >= 3 faults and no vertex drops below 2 fault-free
    in-component edges) is preferred, smallest qualifying dimension first. Otherwise
    CASE2 returns two dimensions, each with >= 2 faults, no isolated vertex and at
    most one 1-rescuable vertex in its component graph. For fault sets smaller than
    4n-5 the CASE2 fault-count requirement is relaxed (padding convention).
    """
    n = t.n
    if n < 3:
        raise PreconditionError("split selection requires n >= 3")
    if len(f) > 4 * n - 5:
        raise PreconditionError(f"|F|={len(f)} exceeds 4n-5={4 * n - 5}")
    if not is_conditional(t, f):
        raise PreconditionError("fault set is not conditional (some vertex keeps < 2 edges)")

    profiles = {m: _isolation_profile(t, f, m) for m in range(n)}

    for m in range(n):
        lo, _ = profiles[m]
        if f.per_dimension_count[m] >= 3 and lo >= 2:
            choice = SplitChoice(CASE1, m)
            if not choice.verify(t, f):
                raise InternalInvariantError("CASE1 self-verification failed")
            return choice

    def case2_ok(d: int, relaxed: bool) -> bool:
        lo, ones = profiles[d]
        if lo < 1 or ones > 1:
            return False
        return relaxed or f.per_dimension_count[d] >= 2

    def heaviest_component_load(d: int) -> int:
        loads = [0, 0, 0, 0]
        for pk in f.faulty:
            if t.dim_of_packed(pk) != d:
                a, _ = unpack_edge(pk)
                loads[_component_label(t.n, d, a)] += 1
        return max(loads)

    for relaxed in (False, True):
        if relaxed and len(f) >= 4 * n - 5:
            break  # padding only applies below the theorem-maximum size
        good = [d for d in range(n) if case2_ok(d, relaxed)]
        if len(good) >= 2:
            if relaxed:
                # keep the heaviest component load inside the dispatch tree
                good.sort(key=lambda d: (heaviest_component_load(d), d))
            choice = SplitChoice(CASE2, good[0], m_prime=good[1], padded=relaxed)
            if not choice.verify(t, f):
                raise InternalInvariantError("CASE2 self-verification failed")
            return choice

    raise InternalInvariantError(
        "no qualifying split dimension; selection guarantee violated"
    )


@dataclass(frozen=True)
class RescueEdge:
    """A fault-free cross edge (v, w) with (u, v) inside u's component."""

    v: Vertex
    w: Vertex
    used_faulty_uv: bool


def find_rescue_cross_edge(
    t: Topology,
    f: FaultSet,
    p: Partition,
    u: Vertex,
    prefer_faulty_uv: bool = False,
) -> RescueEdge:
    """Find a fault-free split-dimension edge (v, w) with v an in-component neighbor of u.

    When `prefer_faulty_uv` is set and u is 1-rescuable inside its component, a
    candidate with (u, v) faulty is preferred (it always exists in that situation).
    """
    code = u.code
    candidates: list[tuple[bool, int, int]] = []
    for v_code in sorted(p.in_component_neighbors(code)):
        uv_faulty = f.is_faulty_codes(code, v_code)
        for w_code in p.cross_neighbors_of(v_code):
            if not f.is_faulty_codes(v_code, w_code):
                candidates.append((uv_faulty, v_code, w_code))
    if not candidates:
        raise InternalInvariantError(
            f"no rescue cross edge at {u!r}; existence guarantee violated"
        )
    want_faulty = False
    if prefer_faulty_uv:
        comp = p.component_of(u)
        if rescuability(t, f, u, restricted_to=comp) == 1:
            want_faulty = True
    ordered = sorted(candidates, key=lambda c: (c[0] != want_faulty, c[1], c[2]))
    uv_faulty, v_code, w_code = ordered[0]
    return RescueEdge(Vertex(t.n, v_code), Vertex(t.n, w_code), uv_faulty)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

_REJECTION_BUDGET = 100_000


def random_conditional_faults(t: Topology, size: int, seed: int) -> FaultSet:
    """Uniform random fault set of the given size, rejection-sampled to stay conditional."""
    if size < 0 or size > t.edge_count:
        raise PreconditionError(f"fault size {size} out of range")
    rng = random.Random(seed)
    edges = sorted(t.edge_set)
    for _ in range(_REJECTION_BUDGET):
        sample = rng.sample(edges, size)
        fs = FaultSet(t, sample)
        if is_conditional(t, fs):
            return fs
    raise InternalInvariantError("rejection sampling budget exhausted")


def build_optimality_counterexample(
    t: Topology,
) -> tuple[FaultSet, Vertex, Vertex, Vertex, Vertex]:
    """The size-(4n-4) conditional fault set that kills every Hamiltonian cycle.

    All edges at u = (0,...,0) and v = (2,...,0) are faulted except those to
    x = (1,0,...,0) and y = (3,0,...,0); u and v then share the fault-free
    neighborhood {x, y}, and any Hamiltonian cycle would need the 4-cycle
    u-x-v-y, which cannot cover 4^n > 4 vertices.
    """
    if t.n < 2:
        raise PreconditionError("counterexample requires n >= 2")
    u = Vertex(t.n, 0)
    v = Vertex(t.n, 2)
    x = Vertex(t.n, 1)
    y = Vertex(t.n, 3)
    keep = {x.code, y.code}
    faults = []
    for end in (u, v):
        for b in t.adj[end.code]:
            if b not in keep:
                faults.append(pack_edge(end.code, b))
    fs = FaultSet(t, faults)
    if len(fs) != 4 * t.n - 4:
        raise InternalInvariantError("counterexample has the wrong size")
    return fs, u, v, x, y


# ---------------------------------------------------------------------------
# Targeted fault generators for rare construction cases
# ---------------------------------------------------------------------------


def concentrated_fault_set(
    t: Topology,
    at: Vertex,
    in_component_faults: int,
    avoid_dim: int,
    extra_cross: int,
    seed: int = 0,
) -> FaultSet:
    """Faults concentrated at one vertex inside a component of BH_n - dD_avoid_dim.

    Places `in_component_faults` faulty edges at `at` with dimension != avoid_dim,
    then `extra_cross` additional dD_avoid_dim faults elsewhere; rejects placements
    that violate the conditional model. Deterministic given the seed.
    """
    rng = random.Random(seed)
    incomp = [
        pack_edge(at.code, b)
        for b in t.adj[at.code]
        if t.dim_of_packed(pack_edge(at.code, b)) != avoid_dim
    ]
    if in_component_faults > len(incomp):
        raise PreconditionError("too many in-component faults requested")
    cross_pool = sorted(
        p
        for p in t.edges_by_dim[avoid_dim]
        if at.code not in unpack_edge(p)
    )
    for _ in range(_REJECTION_BUDGET):
        chosen = rng.sample(incomp, in_component_faults) + rng.sample(
            cross_pool, extra_cross
        )
        fs = FaultSet(t, chosen)
        if is_conditional(t, fs):
            return fs
    raise InternalInvariantError("could not place concentrated faults conditionally")
