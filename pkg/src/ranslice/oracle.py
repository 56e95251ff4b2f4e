"""Exact maximum-embedding search for small instances.

The problem is NP-hard, so ``solve_exact`` refuses instances beyond its
budget. The search is a depth-first branch and bound over VNFs in index
order with the cardinality bound; only the count is guaranteed, the plan
is just the first optimum found.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .flat import EmbeddingState, FlatInstance, flatten
from .model import Instance, MappingPlan, SliceSet, SubstrateNetwork


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vnfs: int = 10
    max_nodes: int = 6
    max_expansions: int = 10**7

    def __post_init__(self):
        if min(self.max_vnfs, self.max_nodes, self.max_expansions) <= 0:
            raise ValueError("budget limits must be positive")

    def admits(self, n_vnfs: int, n_nodes: int) -> bool:
        return n_vnfs <= self.max_vnfs and n_nodes <= self.max_nodes


@dataclass(frozen=True)
class ExactResult:
    plan: MappingPlan
    optimal: bool
    expansions: int

    @property
    def count(self) -> int:
        return len(self.plan)


def run_exact(flat: FlatInstance, budget: OracleBudget = OracleBudget(),
              backend=None) -> tuple[EmbeddingState, bool, int]:
    if not budget.admits(flat.n_vnfs, flat.n_nodes):
        raise BudgetExceeded(
            f"instance has {flat.n_vnfs} VNFs / {flat.n_nodes} nodes; exact search is "
            f"limited to {budget.max_vnfs} VNFs / {budget.max_nodes} nodes")
    backend = backend or kernels.backend
    work = EmbeddingState(flat)
    best_host = np.full(flat.n_vnfs, -1, dtype=np.int64)
    _, expansions, done = backend.exact_search(flat, work, best_host, budget.max_expansions)
    # replay the witness onto a fresh state so residuals match the plan
    out = EmbeddingState(flat)
    out.host[:] = best_host
    for g, s in enumerate(best_host.tolist()):
        if s >= 0:
            out.node_res[s] -= flat.vnf_demand[g]
            for e in range(flat.vnf_ptr[g], flat.vnf_ptr[g + 1]):
                h = best_host[flat.vnf_adj[e]]
                # count each virtual link once, from its lower endpoint
                if h >= 0 and h != s and flat.vnf_adj[e] > g:
                    _debit_link(flat, out, s, int(h), int(flat.vnf_bw[e]))
    return out, done, int(expansions)


def _debit_link(flat: FlatInstance, state: EmbeddingState, s: int, t: int, bw: int) -> None:
    lo, hi = flat.sub_ptr[s], flat.sub_ptr[s + 1]
    k = lo + int(np.searchsorted(flat.sub_adj[lo:hi], t))
    state.link_res[flat.sub_lnk[k]] -= bw


def solve_exact(substrate: SubstrateNetwork, slices: SliceSet,
                budget: OracleBudget = OracleBudget(), backend=None) -> ExactResult:
    state, done, expansions = run_exact(flatten(Instance(substrate, slices)), budget, backend)
    return ExactResult(state.plan(), done, expansions)
