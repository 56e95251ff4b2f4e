"""Cluster-based solvers: GCBA (clusters by size) and GBA (clusters by the
head's neighbourhood demand).

A VNF's cumulative score is its demand plus its slice neighbours' demands;
a node's is its live residual plus its substrate neighbours' residuals.
``embed_group`` places a VNF on the feasible node whose score exceeds the
VNF's by the least; when every node falls short, on the one that falls
short by the least (``most_negative=True`` flips that to the largest).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .flat import EmbeddingState, FlatInstance, flatten
from .model import Instance, MappingPlan, ResidualState, SliceSet, SubstrateNetwork, VnfId


class ClusterKey(Enum):
    BY_SIZE_DESC = kernels.SIZE_KEY
    BY_HEAD_CUMULATIVE_DESC = kernels.CUMULATIVE_KEY


class CumulativeScore(NamedTuple):
    subject: object
    score: int


@dataclass(frozen=True)
class Cluster:
    head: VnfId
    members: tuple[VnfId, ...]  # head first, then neighbours ascending
    key: int


def cumulative_vnf(v: VnfId, slices: SliceSet) -> CumulativeScore:
    score = slices.demand(v) + sum(slices.demand(w) for w in slices.neighbors(v))
    return CumulativeScore(v, score)


def cumulative_node(s: int, node_residual: Sequence[int],
                    substrate: SubstrateNetwork) -> CumulativeScore:
    score = node_residual[s] + sum(node_residual[t] for t in substrate.neighbors(s))
    return CumulativeScore(s, int(score))


def _substrate_only(substrate: SubstrateNetwork) -> FlatInstance:
    return flatten(Instance(substrate, SliceSet()))


def select_by_difference(candidates: Sequence[int], target: int, node_residual: Sequence[int],
                         substrate: SubstrateNetwork, most_negative: bool = False,
                         backend=None) -> int | None:
    if not candidates:
        return None
    backend = backend or kernels.backend
    res = np.asarray(node_residual, dtype=np.int64)
    t = backend.select_by_difference(_substrate_only(substrate), candidates, int(target), res,
                                     most_negative)
    return None if t < 0 else int(t)


def cluster_visit_order(flat: FlatInstance, key: ClusterKey, backend=None):
    """``(visit, cluster_ptr, keys)`` arrays from the greedy cluster build."""
    backend = backend or kernels.backend
    return backend.build_clusters(flat, key.value)


def build_clusters(slices: SliceSet, key: ClusterKey, backend=None) -> list[Cluster]:
    flat = flatten(Instance(SubstrateNetwork(()), slices))
    visit, ptr, keys = cluster_visit_order(flat, key, backend)
    ids = flat.vnf_ids
    out = []
    for c in range(len(keys)):
        members = tuple(ids[g] for g in visit[ptr[c]:ptr[c + 1]])
        out.append(Cluster(members[0], members, int(keys[c])))
    return out


def embed_group(state: EmbeddingState, u: VnfId, most_negative: bool = False,
                backend=None) -> int | None:
    backend = backend or kernels.backend
    g = state.flat.index[u]
    if state.host[g] >= 0:
        raise ValueError(f"{u} is already placed")
    t = backend.embed_group(state.flat, g, state, most_negative)
    return None if t < 0 else int(t)


def run_clustered(flat: FlatInstance, key: ClusterKey, most_negative: bool = False,
                  backend=None) -> EmbeddingState:
    backend = backend or kernels.backend
    visit, _, _ = cluster_visit_order(flat, key, backend)
    state = EmbeddingState(flat)
    backend.run_group_order(flat, visit, state, most_negative)
    return state


def run_gcba(flat: FlatInstance, backend=None, most_negative: bool = False) -> EmbeddingState:
    return run_clustered(flat, ClusterKey.BY_SIZE_DESC, most_negative, backend)


def run_gba(flat: FlatInstance, backend=None, most_negative: bool = False) -> EmbeddingState:
    return run_clustered(flat, ClusterKey.BY_HEAD_CUMULATIVE_DESC, most_negative, backend)


def solve_gcba(substrate: SubstrateNetwork, slices: SliceSet, backend=None,
               most_negative: bool = False) -> tuple[MappingPlan, ResidualState]:
    state = run_gcba(flatten(Instance(substrate, slices)), backend, most_negative)
    return state.plan(), state.residual()


def solve_gba(substrate: SubstrateNetwork, slices: SliceSet, backend=None,
              most_negative: bool = False) -> tuple[MappingPlan, ResidualState]:
    state = run_gba(flatten(Instance(substrate, slices)), backend, most_negative)
    return state.plan(), state.residual()
