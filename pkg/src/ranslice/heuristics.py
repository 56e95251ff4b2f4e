"""Single-VNF greedy solvers: resource-ordered (RBA) and degree-ordered (CBA).

Both walk a fixed VNF order once and hand each VNF to ``embed_vnf``; a VNF
that cannot be placed is dropped for good. ``embed_vnf`` works in two cases:

* no neighbour placed yet: try the node with the most residual resources;
* otherwise: candidates are the hosts of placed neighbours plus the nodes
  adjacent to all of those hosts, tried by residual descending. The first
  one with room whose links to every neighbour host carry the needed
  bandwidth wins (a shared host needs no link).
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from . import kernels
from .flat import EmbeddingState, FlatInstance, flatten
from .model import Instance, MappingPlan, ResidualState, SliceSet, SubstrateNetwork, VnfId


class VnfOrderKey(Enum):
    BY_DEMAND_DESC = "demand"
    BY_DEGREE_DESC = "degree"


def order_indices(flat: FlatInstance, key: VnfOrderKey) -> np.ndarray:
    """Global VNF indices sorted by key descending, lower index first on ties."""
    values = flat.vnf_demand if key is VnfOrderKey.BY_DEMAND_DESC else flat.degree()
    return np.argsort(-values, kind="stable").astype(np.int64)


def vnf_order(slices: SliceSet, key: VnfOrderKey) -> list[VnfId]:
    flat = flatten(Instance(SubstrateNetwork(()), slices))
    return [flat.vnf_ids[g] for g in order_indices(flat, key)]


def node_order(node_residual) -> list[int]:
    """Node ids by live residual descending, ascending id on ties."""
    return sorted(range(len(node_residual)), key=lambda s: (-node_residual[s], s))


def embed_vnf(state: EmbeddingState, u: VnfId, backend=None) -> int | None:
    """Place one VNF into ``state``; return its host, or None to skip it."""
    backend = backend or kernels.backend
    g = state.flat.index[u]
    if state.host[g] >= 0:
        raise ValueError(f"{u} is already placed")
    t = backend.embed_vnf(state.flat, g, state)
    return None if t < 0 else int(t)


def run_ordered(flat: FlatInstance, key: VnfOrderKey, backend=None) -> EmbeddingState:
    backend = backend or kernels.backend
    state = EmbeddingState(flat)
    backend.run_vnf_order(flat, order_indices(flat, key), state)
    return state


def run_rba(flat: FlatInstance, backend=None) -> EmbeddingState:
    return run_ordered(flat, VnfOrderKey.BY_DEMAND_DESC, backend)


def run_cba(flat: FlatInstance, backend=None) -> EmbeddingState:
    return run_ordered(flat, VnfOrderKey.BY_DEGREE_DESC, backend)


def solve_rba(substrate: SubstrateNetwork, slices: SliceSet,
              backend=None) -> tuple[MappingPlan, ResidualState]:
    state = run_rba(flatten(Instance(substrate, slices)), backend)
    return state.plan(), state.residual()


def solve_cba(substrate: SubstrateNetwork, slices: SliceSet,
              backend=None) -> tuple[MappingPlan, ResidualState]:
    state = run_cba(flatten(Instance(substrate, slices)), backend)
    return state.plan(), state.residual()
