"""Per-slot load-aware channel assignment with capacity-capped relay routing.

Relays carry no compute and no storage: whatever enters a relay in a slot
leaves it over inter-satellite links the same slot.  Ground stations buffer
whatever could not be granted and offer it again in later slots.

All slot-level accounting is in integer bits so conservation checks are exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .geometry import ContactTable
from .link_budget import IslSpec


@dataclass
class Demand:
    gs_id: int
    offered_rate_bits_per_s: float
    buffered_bits: int = 0

    def __post_init__(self):
        if self.offered_rate_bits_per_s < 0 or self.buffered_bits < 0:
            raise ValueError("demand must be nonnegative")


@dataclass(frozen=True)
class ChannelAssignment:
    gs_id: int
    channel: int
    sat_id: int
    granted_bits: int
    rate_bps: float
    range_km: float
    # Satellite path the grant takes, entry satellite first, platform last.
    path: tuple[int, ...]

    @property
    def hops(self) -> int:
        return len(self.path) - 1


@dataclass
class SlotAllocation:
    slot: int
    assignments: list[ChannelAssignment]
    # Directed relay-to-relay flows in bits for this slot.
    isl_flow_bits: dict[tuple[int, int], int]
    delivered_bits: dict[int, int]
    sat_load_bits: dict[int, int]
    slot_s: float

    def isl_flows_bps(self) -> dict[tuple[int, int], float]:
        return {k: v / self.slot_s for k, v in self.isl_flow_bits.items()}


@dataclass
class RunReport:
    allocations: list[SlotAllocation]
    offered_bits: int
    initial_backlog_bits: int
    delivered_bits: int
    final_backlog: dict[int, int]
    delivered_fraction: float
    mean_scheduled_range_km: float | None


@dataclass
class SlotGraph:
    """Topology for one slot: GS uplink edges plus the retained ISL subgraph."""

    sdc_id: int
    sat_ids: list[int]
    gs_edges: dict[int, dict[int, float]]  # gs_id -> {sat_id: range_km}
    isl_edges: dict[tuple[int, int], float]  # (a, b) a < b -> range_km

    def neighbors(self, sat: int) -> list[int]:
        out = []
        for a, b in self.isl_edges:
            if a == sat:
                out.append(b)
            elif b == sat:
                out.append(a)
        return sorted(out)


def build_topology(
    contacts: ContactTable,
    slot: int,
    isl_spec: IslSpec,
    sdc_id: int,
    n_sats: int,
) -> SlotGraph:
    """Select the per-slot ISL subgraph under the per-satellite degree cap.

    Candidate edges are admitted greedily: platform-incident links first
    (nearest first), then the remaining pairs nearest first, ties broken by
    lowest satellite ids.  An edge is kept only while both endpoints have
    spare degree.
    """
    candidates = []
    for (a, b), rng in contacts.isl_contacts[slot].items():
        if isl_spec.max_range_km is not None and rng > isl_spec.max_range_km:
            continue
        sdc_incident = a == sdc_id or b == sdc_id
        candidates.append((0 if sdc_incident else 1, rng, a, b))
    candidates.sort()

    degree = {s: 0 for s in range(n_sats)}
    kept: dict[tuple[int, int], float] = {}
    for _, rng, a, b in candidates:
        if degree[a] < isl_spec.max_links_per_sat and degree[b] < isl_spec.max_links_per_sat:
            kept[(a, b)] = rng
            degree[a] += 1
            degree[b] += 1

    gs_edges = {gs: dict(vis) for gs, vis in contacts.gs_contacts[slot].items()}
    return SlotGraph(sdc_id=sdc_id, sat_ids=list(range(n_sats)), gs_edges=gs_edges, isl_edges=kept)


def _adjacency(graph: SlotGraph) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {s: [] for s in graph.sat_ids}
    for a, b in graph.isl_edges:
        adj[a].append(b)
        adj[b].append(a)
    for s in adj:
        adj[s].sort()
    return adj


def _best_path(
    adj: dict[int, list[int]],
    committed: dict[tuple[int, int], int],
    cap_bits: int,
    entry: int,
    sdc_id: int,
    max_hops: int | None,
) -> tuple[tuple[int, ...], int] | None:
    """Least-loaded available path from an entry satellite to the platform.

    Path cost is the maximum link utilization along the path; ties fall to hop
    count, then to the lexicographically smallest id sequence.  Returns the
    path and its bottleneck residual in bits, or None when no link-capacity
    remains on any route.
    """
    if entry == sdc_id:
        return (sdc_id,), -1  # direct uplink: no ISL constraint

    # Label-setting search: extending a path can only grow its key, so the
    # first arrival at the platform carries the minimal key.
    start = (0.0, 0, (entry,))
    heap = [start]
    settled: set = set()
    while heap:
        util, hops, path = heapq.heappop(heap)
        node = path[-1]
        state = node if max_hops is None else (node, hops)
        if state in settled:
            continue
        settled.add(state)
        if node == sdc_id:
            bottleneck = min(
                cap_bits - committed.get(_ukey(path[i], path[i + 1]), 0)
                for i in range(len(path) - 1)
            )
            return path, bottleneck
        if max_hops is not None and hops >= max_hops:
            continue
        for nbr in adj[node]:
            if nbr in path:
                continue
            used = committed.get(_ukey(node, nbr), 0)
            residual = cap_bits - used
            if residual <= 0:
                continue
            heapq.heappush(heap, (max(util, used / cap_bits), hops + 1, path + (nbr,)))
    return None


def _ukey(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def allocate_slot(
    graph: SlotGraph,
    demands: list[Demand],
    isl_spec: IslSpec,
    channel_cap_bps: float,
    slot_s: float = 1.0,
    max_channels_per_gs: int = 2,
    max_hops: int | None = None,
    slot: int = 0,
) -> SlotAllocation:
    """Greedy allocation: GSs in ascending id, each opening up to two channels
    toward the least-loaded visible satellites, each grant routed along the
    least-loaded available path to the platform."""
    cap_bits = int(round(isl_spec.capacity_bits_per_s * slot_s))
    chan_bits = int(round(channel_cap_bps * slot_s))
    adj = _adjacency(graph)

    committed: dict[tuple[int, int], int] = {}
    flows: dict[tuple[int, int], int] = {}
    load = {s: 0 for s in graph.sat_ids}
    delivered: dict[int, int] = {}
    assignments: list[ChannelAssignment] = []

    for demand in sorted(demands, key=lambda d: d.gs_id):
        gs = demand.gs_id
        avail = demand.buffered_bits + int(round(demand.offered_rate_bits_per_s * slot_s))
        delivered.setdefault(gs, 0)
        visible = graph.gs_edges.get(gs, {})
        if not visible:
            continue
        for channel in range(max_channels_per_gs):
            if avail <= 0:
                break
            granted_here = False
            for sat in sorted(visible, key=lambda s: (load[s], s)):
                found = _best_path(adj, committed, cap_bits, sat, graph.sdc_id, max_hops)
                if found is None:
                    continue
                path, bottleneck = found
                grant = min(avail, chan_bits) if bottleneck < 0 else min(avail, chan_bits, bottleneck)
                if grant <= 0:
                    continue
                for i in range(len(path) - 1):
                    committed[_ukey(path[i], path[i + 1])] = (
                        committed.get(_ukey(path[i], path[i + 1]), 0) + grant
                    )
                    flows[(path[i], path[i + 1])] = flows.get((path[i], path[i + 1]), 0) + grant
                for node in path:
                    load[node] += grant
                avail -= grant
                delivered[gs] += grant
                assignments.append(
                    ChannelAssignment(
                        gs_id=gs,
                        channel=channel,
                        sat_id=sat,
                        granted_bits=grant,
                        rate_bps=grant / slot_s,
                        range_km=visible[sat],
                        path=path,
                    )
                )
                granted_here = True
                break
            if not granted_here:
                break  # nothing routable remains for this GS this slot

    return SlotAllocation(
        slot=slot,
        assignments=assignments,
        isl_flow_bits=flows,
        delivered_bits=delivered,
        sat_load_bits=load,
        slot_s=slot_s,
    )


def run(
    contacts: ContactTable,
    sdc_id: int,
    n_sats: int,
    gs_ids: list[int],
    offered_rate_bps,
    isl_spec: IslSpec,
    channel_cap_bps: float = 1.0e11,
    max_channels_per_gs: int = 2,
    max_hops: int | None = None,
    initial_backlog: dict[int, int] | None = None,
) -> RunReport:
    """Run the allocator over every slot, carrying GS buffers forward.

    offered_rate_bps is either a single per-GS rate or a {gs_id: rate} map,
    applied uniformly across slots.
    """
    if isinstance(offered_rate_bps, dict):
        rate_of = dict(offered_rate_bps)
    else:
        rate_of = {gs: float(offered_rate_bps) for gs in gs_ids}

    backlog = {gs: 0 for gs in gs_ids}
    if initial_backlog:
        for gs, bits in initial_backlog.items():
            backlog[gs] = int(bits)
    initial_total = sum(backlog.values())

    slot_s = contacts.slot_s
    offered_total = 0
    delivered_total = 0
    allocations: list[SlotAllocation] = []
    range_sum = 0.0
    range_count = 0

    for slot in range(contacts.n_slots):
        graph = build_topology(contacts, slot, isl_spec, sdc_id, n_sats)
        demands = [
            Demand(gs, rate_of.get(gs, 0.0), buffered_bits=backlog[gs]) for gs in sorted(gs_ids)
        ]
        alloc = allocate_slot(
            graph,
            demands,
            isl_spec,
            channel_cap_bps,
            slot_s=slot_s,
            max_channels_per_gs=max_channels_per_gs,
            max_hops=max_hops,
            slot=slot,
        )
        for demand in demands:
            offered = int(round(demand.offered_rate_bits_per_s * slot_s))
            offered_total += offered
            sent = alloc.delivered_bits.get(demand.gs_id, 0)
            backlog[demand.gs_id] = demand.buffered_bits + offered - sent
            delivered_total += sent
        for asg in alloc.assignments:
            range_sum += asg.range_km
            range_count += 1
        allocations.append(alloc)

    denom = offered_total + initial_total
    fraction = delivered_total / denom if denom > 0 else 1.0
    return RunReport(
        allocations=allocations,
        offered_bits=offered_total,
        initial_backlog_bits=initial_total,
        delivered_bits=delivered_total,
        final_backlog=backlog,
        delivered_fraction=fraction,
        mean_scheduled_range_km=(range_sum / range_count) if range_count else None,
    )
