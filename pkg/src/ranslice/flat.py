"""CSR-style integer arrays for an instance, shared by both kernel backends.

Global VNF index ``g`` enumerates VNFs slice by slice, so ascending ``g``
is ascending ``(slice, local)``. Neighbour lists are sorted ascending.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .model import Instance, MappingPlan, Pair, ResidualState, SliceSet, SubstrateNetwork, VnfId, norm

I64 = np.int64


def _csr(n: int, pairs: list[Pair], weights: list[int]):
    deg = np.zeros(n + 1, dtype=I64)
    for a, b in pairs:
        deg[a + 1] += 1
        deg[b + 1] += 1
    ptr = np.cumsum(deg).astype(I64)
    rows: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (a, b) in enumerate(pairs):
        rows[a].append((b, weights[k]))
        rows[b].append((a, weights[k]))
    adj = np.empty(ptr[-1], dtype=I64)
    val = np.empty(ptr[-1], dtype=I64)
    for s in range(n):
        row = sorted(rows[s])
        lo = ptr[s]
        for j, (t, w) in enumerate(row):
            adj[lo + j] = t
            val[lo + j] = w
    return ptr, adj, val


@dataclass(frozen=True, eq=False)
class FlatInstance:
    substrate: SubstrateNetwork
    slices: SliceSet
    node_cap: np.ndarray
    link_pairs: list[Pair]
    link_cap: np.ndarray
    sub_ptr: np.ndarray
    sub_adj: np.ndarray
    sub_lnk: np.ndarray
    vnf_ids: list[VnfId]
    vnf_demand: np.ndarray
    vnf_cum: np.ndarray
    vnf_ptr: np.ndarray
    vnf_adj: np.ndarray
    vnf_bw: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.node_cap)

    @property
    def n_vnfs(self) -> int:
        return len(self.vnf_demand)

    @cached_property
    def index(self) -> dict[VnfId, int]:
        return {u: g for g, u in enumerate(self.vnf_ids)}

    def problem_arrays(self) -> tuple[np.ndarray, ...]:
        """The read-only argument block every kernel takes, in kernel order."""
        return (self.sub_ptr, self.sub_adj, self.sub_lnk, self.vnf_demand,
                self.vnf_cum, self.vnf_ptr, self.vnf_adj, self.vnf_bw)

    @cached_property
    def problem_lists(self) -> tuple[list[int], ...]:
        return tuple(a.tolist() for a in self.problem_arrays())

    def degree(self) -> np.ndarray:
        return np.diff(self.vnf_ptr)


def flatten(inst: Instance) -> FlatInstance:
    sub, slices = inst.substrate, inst.slices
    n = sub.n_nodes
    link_pairs = [norm(a, b) for a, b in sub.links]
    link_ids = list(range(len(link_pairs)))
    sub_ptr, sub_adj, sub_lnk = _csr(n, link_pairs, link_ids)
    link_cap = np.array([sub.link_capacity[p] for p in link_pairs], dtype=I64)

    vnf_ids = slices.vnf_ids()
    offsets, off = [], 0
    for sl in slices:
        offsets.append(off)
        off += len(sl.vnfs)
    vpairs, vbw = [], []
    for i, sl in enumerate(slices):
        for a, b in sl.links:
            vpairs.append((offsets[i] + a, offsets[i] + b))
            vbw.append(sl.bandwidth[norm(a, b)])
    vnf_ptr, vnf_adj, vnf_bw = _csr(len(vnf_ids), vpairs, vbw)
    demand = np.array([slices.demand(u) for u in vnf_ids], dtype=I64)
    # own demand plus every slice neighbour's demand
    cum = demand.copy()
    for g in range(len(vnf_ids)):
        cum[g] += demand[vnf_adj[vnf_ptr[g]:vnf_ptr[g + 1]]].sum()
    return FlatInstance(
        substrate=sub, slices=slices,
        node_cap=np.array([nd.capacity for nd in sub.nodes], dtype=I64),
        link_pairs=link_pairs, link_cap=link_cap,
        sub_ptr=sub_ptr, sub_adj=sub_adj, sub_lnk=sub_lnk,
        vnf_ids=vnf_ids, vnf_demand=demand, vnf_cum=cum,
        vnf_ptr=vnf_ptr, vnf_adj=vnf_adj, vnf_bw=vnf_bw,
    )


class EmbeddingState:
    """Mutable residuals and hosts for one solver run (one writer only)."""

    def __init__(self, flat: FlatInstance):
        self.flat = flat
        self.node_res = flat.node_cap.copy()
        self.link_res = flat.link_cap.copy()
        self.host = np.full(flat.n_vnfs, -1, dtype=I64)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.node_res, self.link_res, self.host

    @property
    def embedded(self) -> int:
        return int((self.host >= 0).sum())

    def plan(self) -> MappingPlan:
        ids = self.flat.vnf_ids
        return MappingPlan({ids[g]: int(s) for g, s in enumerate(self.host.tolist()) if s >= 0})

    def residual(self) -> ResidualState:
        return ResidualState(self.node_res.tolist(),
                             dict(zip(self.flat.link_pairs, self.link_res.tolist())))
