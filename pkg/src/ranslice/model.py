"""Substrate/slice graphs, mapping plans and the feasibility checker.

Ids are zero-based throughout. A VNF is addressed globally by the pair
``(slice_index, local_id)``; node ids are dense ``0..n-1``. Resource and
bandwidth amounts are non-negative integers, so every check here is exact.

Two adjacent VNFs placed on the same substrate node are "co-located": that
satisfies connectivity and uses no substrate bandwidth. Otherwise their
hosts must share a substrate link, which carries the virtual link's
bandwidth (one hop, no path routing).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

VnfId = tuple[int, int]
Pair = tuple[int, int]


def norm(a: int, b: int) -> Pair:
    return (a, b) if a <= b else (b, a)


class InfeasiblePlan(ValueError):
    """A plan would drive some residual resource or bandwidth below zero."""


@dataclass(frozen=True)
class SubstrateNode:
    id: int
    capacity: int


@dataclass(frozen=True, eq=False)
class SubstrateNetwork:
    nodes: tuple[SubstrateNode, ...]
    links: tuple[Pair, ...] = ()
    link_capacity: Mapping[Pair, int] = field(default_factory=dict)

    @classmethod
    def build(cls, capacities: Iterable[int],
              links: Iterable[tuple[int, int, int]] = ()) -> "SubstrateNetwork":
        """Convenience constructor from a capacity list and ``(a, b, cap)`` triples."""
        nodes = tuple(SubstrateNode(i, int(c)) for i, c in enumerate(capacities))
        pairs, caps = [], {}
        for a, b, c in links:
            pairs.append(norm(a, b))
            caps[norm(a, b)] = int(c)
        return cls(nodes, tuple(pairs), caps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubstrateNetwork):
            return NotImplemented
        return (self.nodes == other.nodes and self.links == other.links
                and dict(self.link_capacity) == dict(other.link_capacity))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = defaultdict(set)
        for a, b in self.links:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return {s: frozenset(adj.get(s, ())) for s in range(self.n_nodes)}

    def neighbors(self, s: int) -> frozenset[int]:
        return self.adjacency.get(s, frozenset())

    def has_link(self, s: int, t: int) -> bool:
        return t in self.neighbors(s)

    def capacity(self, s: int, t: int) -> int:
        return self.link_capacity[norm(s, t)]

    def total_capacity(self) -> int:
        return sum(n.capacity for n in self.nodes)


@dataclass(frozen=True)
class Vnf:
    id: int
    demand: int


@dataclass(frozen=True, eq=False)
class Slice:
    vnfs: tuple[Vnf, ...]
    links: tuple[Pair, ...] = ()
    bandwidth: Mapping[Pair, int] = field(default_factory=dict)

    @classmethod
    def build(cls, demands: Iterable[int],
              links: Iterable[tuple[int, int, int]] = ()) -> "Slice":
        vnfs = tuple(Vnf(i, int(d)) for i, d in enumerate(demands))
        pairs, bw = [], {}
        for a, b, w in links:
            pairs.append(norm(a, b))
            bw[norm(a, b)] = int(w)
        return cls(vnfs, tuple(pairs), bw)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Slice):
            return NotImplemented
        return (self.vnfs == other.vnfs and self.links == other.links
                and dict(self.bandwidth) == dict(other.bandwidth))

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = defaultdict(set)
        for a, b in self.links:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return {v.id: frozenset(adj.get(v.id, ())) for v in self.vnfs}

    def neighbors(self, local: int) -> frozenset[int]:
        return self.adjacency.get(local, frozenset())

    def demand(self, local: int) -> int:
        return self.vnfs[local].demand


@dataclass(frozen=True)
class SliceSet:
    slices: tuple[Slice, ...] = ()

    def __len__(self) -> int:
        return len(self.slices)

    def __iter__(self) -> Iterator[Slice]:
        return iter(self.slices)

    def vnf_ids(self) -> list[VnfId]:
        return [(i, v.id) for i, sl in enumerate(self.slices) for v in sl.vnfs]

    @property
    def n_vnfs(self) -> int:
        return sum(len(sl.vnfs) for sl in self.slices)

    def demand(self, u: VnfId) -> int:
        return self.slices[u[0]].vnfs[u[1]].demand

    def neighbors(self, u: VnfId) -> list[VnfId]:
        i, local = u
        return [(i, w) for w in sorted(self.slices[i].neighbors(local))]

    def bandwidth(self, u: VnfId, v: VnfId) -> int:
        return self.slices[u[0]].bandwidth[norm(u[1], v[1])]

    def total_demand(self) -> int:
        return sum(v.demand for sl in self.slices for v in sl.vnfs)


@dataclass(frozen=True)
class Instance:
    substrate: SubstrateNetwork
    slices: SliceSet


@dataclass(frozen=True, eq=False)
class MappingPlan:
    """Partial VNF -> node assignment. A dict key cannot repeat, so a VNF
    is never mapped twice; edge mappings are always derived, never stored."""

    assignments: Mapping[VnfId, int] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MappingPlan):
            return NotImplemented
        return dict(self.assignments) == dict(other.assignments)

    def __len__(self) -> int:
        return len(self.assignments)

    def host(self, u: VnfId) -> int | None:
        return self.assignments.get(u)

    def edge_mappings(self, slices: SliceSet) -> list[tuple[tuple[VnfId, VnfId], Pair]]:
        """``((u, v), (s, t))`` for every virtual link with both ends placed."""
        out = []
        for i, sl in enumerate(slices.slices):
            for a, b in sl.links:
                u, v = (i, a), (i, b)
                s, t = self.assignments.get(u), self.assignments.get(v)
                if s is not None and t is not None:
                    out.append(((u, v), (s, t)))
        return out


@dataclass
class ResidualState:
    node_residual: list[int]
    link_residual: dict[Pair, int]

    @classmethod
    def full(cls, substrate: SubstrateNetwork) -> "ResidualState":
        return cls([n.capacity for n in substrate.nodes],
                   {norm(*l): substrate.capacity(*l) for l in substrate.links})

    def total(self) -> int:
        return sum(self.node_residual)


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: object = None

    def __str__(self) -> str:
        return self.kind if self.subject is None else f"{self.kind}: {self.subject}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(map(str, self.violations))


def _check_links(pairs, weights, n, prefix, weight_name, out):
    seen = set()
    for a, b in pairs:
        key = norm(a, b)
        if a == b:
            out.append(Violation(f"{prefix}self-loop", key))
        if key in seen:
            out.append(Violation(f"duplicate {prefix}link", key))
        seen.add(key)
        if not (0 <= a < n and 0 <= b < n):
            out.append(Violation(f"dangling {prefix}link endpoint", key))
        if key not in weights:
            out.append(Violation(f"missing {weight_name}", key))
    for key, w in weights.items():
        if norm(*key) not in seen:
            out.append(Violation(f"{weight_name} without link", key))
        if w < 0:
            out.append(Violation(f"negative {weight_name}", key))


def validate_instance(substrate: SubstrateNetwork, slices: SliceSet) -> ValidationReport:
    out: list[Violation] = []
    for pos, node in enumerate(substrate.nodes):
        if node.id != pos:
            out.append(Violation("node ids not dense", node.id))
        if node.capacity < 0:
            out.append(Violation("negative node capacity", node.id))
    _check_links(substrate.links, substrate.link_capacity, substrate.n_nodes,
                 "", "link capacity", out)
    for i, sl in enumerate(slices.slices):
        for pos, vnf in enumerate(sl.vnfs):
            if vnf.id != pos:
                out.append(Violation("vnf ids not dense", (i, vnf.id)))
            if vnf.demand < 0:
                out.append(Violation("negative demand", (i, vnf.id)))
        # virtual links carry slice-local ids, so they cannot leave their slice
        _check_links(sl.links, sl.bandwidth, len(sl.vnfs), "virtual ",
                     "bandwidth demand", out)
    return ValidationReport(tuple(out))


def validate_plan(substrate: SubstrateNetwork, slices: SliceSet,
                  plan: MappingPlan) -> ValidationReport:
    """List every violated capacity, bandwidth and connectivity constraint."""
    out: list[Violation] = []
    n = substrate.n_nodes
    load = [0] * n
    for u, s in plan.assignments.items():
        i, local = u
        if not (0 <= i < len(slices) and 0 <= local < len(slices.slices[i].vnfs)):
            out.append(Violation("unknown vnf", u))
            continue
        if not 0 <= s < n:
            out.append(Violation("unknown node", (u, s)))
            continue
        load[s] += slices.demand(u)
    for s in range(n):
        if load[s] > substrate.nodes[s].capacity:
            out.append(Violation("node capacity violated", s))

    link_load: dict[Pair, int] = defaultdict(int)
    for (u, v), (s, t) in plan.edge_mappings(slices):
        if not (0 <= s < n and 0 <= t < n) or s == t:
            continue
        if not substrate.has_link(s, t):
            out.append(Violation("connectivity violated", (u, v, (s, t))))
            continue
        link_load[norm(s, t)] += slices.bandwidth(u, v)
    for key in sorted(link_load):
        if link_load[key] > substrate.capacity(*key):
            out.append(Violation("link capacity violated", key))
    return ValidationReport(tuple(out))


def residual_after(substrate: SubstrateNetwork, slices: SliceSet,
                   plan: MappingPlan) -> ResidualState:
    state = ResidualState.full(substrate)
    for u, s in plan.assignments.items():
        state.node_residual[s] -= slices.demand(u)
    for (u, v), (s, t) in plan.edge_mappings(slices):
        if s != t:
            if norm(s, t) not in state.link_residual:
                raise InfeasiblePlan(f"virtual link {u}-{v} on unlinked nodes {s}, {t}")
            state.link_residual[norm(s, t)] -= slices.bandwidth(u, v)
    if any(r < 0 for r in state.node_residual):
        raise InfeasiblePlan("node resources overdrawn")
    if any(r < 0 for r in state.link_residual.values()):
        raise InfeasiblePlan("link bandwidth overdrawn")
    return state


def objective(plan: MappingPlan) -> int:
    return len(plan.assignments)
