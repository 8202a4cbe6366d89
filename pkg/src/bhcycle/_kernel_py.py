"""Pure-Python search engine: vertex-disjoint path covers on bitmask graphs.

Searches for an ordered list of vertex-disjoint paths with prescribed endpoints
that together cover every vertex (one segment = Hamiltonian path; a cycle
through an edge is a path search between its endpoints). Masks are Python ints,
so hosts of any size work; the compiled twin in ``_kernel.pyx`` mirrors this
module's algorithm and expansion order exactly but caps hosts at 64 vertices.

Pruning rules (each individually sound: they never discard a completable state):
  * parity: remaining black minus white count must equal the sum over pending
    segments of their endpoint-color imbalance;
  * degree: an unvisited vertex needs 2 available neighbors (1 if it is a
    pending endpoint); a non-endpoint with exactly 2, one being the current
    head, forces the next step;
  * connectivity: each component of the unvisited graph must hold a pending
    endpoint, pending pairs may not straddle components, the active target's
    component must touch the head, and components cannot outnumber segments.
"""

from __future__ import annotations

import time

FOUND = 0
NOT_FOUND = 1
BUDGET_EXCEEDED = 2

FLAG_NO_PARITY = 1
FLAG_NO_CONNECTIVITY = 2
FLAG_NO_DEGREE = 4

IS_COMPILED = False
MAX_VERTICES = None  # unbounded


class _Budget(Exception):
    pass


def solve(nv, adj, black_mask, segments, cycle_mask, node_limit, time_limit, flags=0):
    """Run the cover search.

    nv: vertex count; adj: per-vertex neighbor bitmasks (faults pre-removed);
    black_mask: bit i set iff vertex i is in the odd color class;
    segments: list of (start, target) pairs, in cover order; for a cycle search
    pass one segment (start, -1) and a nonzero cycle_mask of admissible final
    vertices (the cycle closes from the final vertex back to the start).

    Returns (status, path, seg_lens, stats) where path is the concatenation of
    the segment vertex sequences and stats is a dict of search counters.
    """
    full = (1 << nv) - 1
    cycle_mode = cycle_mask != 0
    nseg = len(segments)
    starts = [s for s, _ in segments]
    targets = [t for _, t in segments]
    stats = {
        "nodes": 0,
        "prune_parity": 0,
        "prune_conn": 0,
        "prune_degree": 0,
        "forced": 0,
    }
    deadline = time.monotonic() + time_limit if time_limit else None
    no_parity = flags & FLAG_NO_PARITY
    no_conn = flags & FLAG_NO_CONNECTIVITY
    no_degree = flags & FLAG_NO_DEGREE

    path = [starts[0]]
    bounds = []

    def check(cur, seg_idx, visited, U):
        """Prune tests; returns (alive, forced_vertex_or_minus_1)."""
        t_act = targets[seg_idx]
        anchor_mask = 0
        if not cycle_mode:
            anchor_mask = 1 << t_act
            for k in range(seg_idx + 1, nseg):
                anchor_mask |= (1 << starts[k]) | (1 << targets[k])

        forced = -1
        if not no_degree:
            av1_final = 0
            mm = U
            while mm:
                b = mm & -mm
                v = b.bit_length() - 1
                mm ^= b
                k = (adj[v] & U).bit_count()
                cur_adj = (adj[v] >> cur) & 1
                k += cur_adj
                if cycle_mode:
                    is_final_candidate = (cycle_mask >> v) & 1
                    need = 1 if is_final_candidate else 2
                else:
                    is_final_candidate = 0
                    need = 1 if (anchor_mask >> v) & 1 else 2
                if k < need:
                    stats["prune_degree"] += 1
                    return False, -1
                if k == 1 and is_final_candidate:
                    av1_final += 1
                    if av1_final > 1:
                        stats["prune_degree"] += 1
                        return False, -1
                if (
                    k == 2
                    and cur_adj
                    and need == 2
                    and not is_final_candidate
                    and not ((anchor_mask >> v) & 1)
                ):
                    if forced >= 0 and forced != v:
                        stats["prune_degree"] += 1
                        return False, -1
                    forced = v
            if forced >= 0:
                stats["forced"] += 1

        if not no_parity:
            rB = (U & black_mask).bit_count()
            rW = U.bit_count() - rB
            diff = rB - rW
            cb = (black_mask >> cur) & 1
            if cycle_mode:
                fin = cycle_mask & U
                allowed = set()
                if fin & black_mask:
                    allowed.add(1 if not cb else 0)
                if fin & ~black_mask & full:
                    allowed.add(-1 if cb else 0)
                if diff not in allowed:
                    stats["prune_parity"] += 1
                    return False, -1
            else:
                tb = (black_mask >> t_act) & 1
                want = 1 if (not cb and tb) else (-1 if (cb and not tb) else 0)
                for k in range(seg_idx + 1, nseg):
                    sb = (black_mask >> starts[k]) & 1
                    kb = (black_mask >> targets[k]) & 1
                    want += 1 if (sb and kb) else (-1 if (not sb and not kb) else 0)
                if diff != want:
                    stats["prune_parity"] += 1
                    return False, -1

        if not no_conn:
            comps = []
            rem = U
            while rem:
                comp = rem & -rem
                frontier = comp
                while frontier:
                    nxt = 0
                    mm = frontier
                    while mm:
                        b = mm & -mm
                        nxt |= adj[b.bit_length() - 1]
                        mm ^= b
                    frontier = nxt & rem & ~comp
                    comp |= frontier
                comps.append(comp)
                rem &= ~comp
            ncur = adj[cur]
            if cycle_mode:
                if len(comps) > 1 or (comps and not (comps[0] & ncur)) or not (cycle_mask & U):
                    stats["prune_conn"] += 1
                    return False, -1
            else:
                if len(comps) > nseg - seg_idx:
                    stats["prune_conn"] += 1
                    return False, -1
                for comp in comps:
                    if not (comp & anchor_mask):
                        stats["prune_conn"] += 1
                        return False, -1
                    if (comp >> t_act) & 1 and not (comp & ncur):
                        stats["prune_conn"] += 1
                        return False, -1
                for k in range(seg_idx + 1, nseg):
                    for comp in comps:
                        if (comp >> starts[k]) & 1:
                            if not ((comp >> targets[k]) & 1):
                                stats["prune_conn"] += 1
                                return False, -1
                            break
        return True, forced

    def dfs(cur, seg_idx, visited):
        stats["nodes"] += 1
        if stats["nodes"] > node_limit:
            raise _Budget
        if deadline is not None and stats["nodes"] % 2048 == 0:
            if time.monotonic() > deadline:
                raise _Budget
        U = full & ~visited
        alive, forced = check(cur, seg_idx, visited, U)
        if not alive:
            return False
        t_act = targets[seg_idx]
        base = adj[cur] & U
        if cycle_mode:
            normal = base
        else:
            reserved = 1 << t_act
            for k in range(seg_idx + 1, nseg):
                reserved |= (1 << starts[k]) | (1 << targets[k])
            normal = base & ~reserved
        if forced >= 0:
            cand = [forced] if (normal >> forced) & 1 else []
        else:
            cand = []
            mm = normal
            while mm:
                b = mm & -mm
                w = b.bit_length() - 1
                mm ^= b
                onward = (adj[w] & (U ^ b)).bit_count()
                cand.append((onward, w))
            cand.sort()
            cand = [w for _, w in cand]
        for w in cand:
            bit = 1 << w
            if cycle_mode and U == bit:
                if (cycle_mask >> w) & 1:
                    path.append(w)
                    return True
                continue
            if U == bit:
                continue  # last unvisited vertex but not the target
            path.append(w)
            if dfs(w, seg_idx, visited | bit):
                return True
            path.pop()
        if not cycle_mode and (base >> t_act) & 1 and forced < 0:
            rest = U & ~(1 << t_act)
            if seg_idx == nseg - 1:
                if rest == 0:
                    path.append(t_act)
                    return True
            else:
                s_next = starts[seg_idx + 1]
                path.append(t_act)
                bounds.append(len(path))
                path.append(s_next)
                vis2 = visited | (1 << t_act) | (1 << s_next)
                if dfs(s_next, seg_idx + 1, vis2):
                    return True
                path.pop()
                bounds.pop()
                path.pop()
        return False

    try:
        ok = dfs(starts[0], 0, 1 << starts[0])
    except _Budget:
        return BUDGET_EXCEEDED, [], [], stats
    if not ok:
        return NOT_FOUND, [], [], stats
    cuts = bounds + [len(path)]
    seg_lens = []
    prev = 0
    for c in cuts:
        seg_lens.append(c - prev)
        prev = c
    return FOUND, path, seg_lens, stats
