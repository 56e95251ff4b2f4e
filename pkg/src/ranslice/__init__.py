"""VNF embedding for RAN slicing: greedy and cluster-based heuristics, an
exact small-instance oracle, a seeded instance generator and a sweep harness.
"""
from .generator import GeneratorConfig, InfeasibleConfig, Regime, generate, preset
from .group_heuristics import (ClusterKey, build_clusters, cumulative_node, cumulative_vnf,
                               select_by_difference, solve_gba, solve_gcba)
from .harness import Axis, SweepResult, SweepSpec, emit_report, load_report, run_sweep
from .heuristics import VnfOrderKey, node_order, solve_cba, solve_rba, vnf_order
from .kernels import backend
from .model import (Instance, InfeasiblePlan, MappingPlan, ResidualState, Slice, SliceSet,
                    SubstrateNetwork, ValidationReport, objective, residual_after,
                    validate_instance, validate_plan)
from .oracle import BudgetExceeded, ExactResult, OracleBudget, solve_exact

__version__ = "0.1.0"

__all__ = [
    "Axis", "BudgetExceeded", "ClusterKey", "ExactResult", "GeneratorConfig", "InfeasibleConfig",
    "InfeasiblePlan", "Instance", "MappingPlan", "OracleBudget", "Regime", "ResidualState",
    "Slice", "SliceSet", "SubstrateNetwork", "SweepResult", "SweepSpec", "ValidationReport",
    "VnfOrderKey", "backend", "build_clusters", "cumulative_node", "cumulative_vnf",
    "emit_report", "generate", "load_report", "node_order", "objective", "preset",
    "residual_after", "run_sweep", "select_by_difference", "solve_cba", "solve_exact",
    "solve_gba", "solve_gcba", "solve_rba", "validate_instance", "validate_plan", "vnf_order",
]
