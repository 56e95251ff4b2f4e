"""The compiled kernels must agree with the pure-Python reference exactly."""
import os

import pytest
from _support import random_micro

from ranslice import kernels
from ranslice.flat import EmbeddingState, flatten
from ranslice.generator import GeneratorConfig, Regime, generate, preset
from ranslice.group_heuristics import ClusterKey, run_gba, run_gcba
from ranslice.heuristics import run_cba, run_rba
from ranslice.oracle import run_exact

pytestmark = pytest.mark.skipif("compiled" not in kernels.BACKENDS,
                                reason="compiled extension not built")

RUNS = {"rba": run_rba, "cba": run_cba, "gcba": run_gcba, "gba": run_gba,
        "gba-most-negative": lambda f, b: run_gba(f, b, most_negative=True)}


def same_state(a: EmbeddingState, b: EmbeddingState):
    assert a.host.tolist() == b.host.tolist()
    assert a.node_res.tolist() == b.node_res.tolist()
    assert a.link_res.tolist() == b.link_res.tolist()


def configs():
    for seed in range(12):
        yield preset(Regime.NORMAL, seed=seed, n_substrate=(20, 40), vnfs_per_slice=(5, 30))
        yield preset(Regime.SHORTAGE, seed=seed, n_substrate=(20, 40))
        yield GeneratorConfig(seed=seed, n_substrate=(15, 15), substrate_degree=3, vnf_degree=2,
                              vnfs_per_slice=(4, 20))


@pytest.mark.parametrize("name", list(RUNS))
def test_heuristics_agree(name):
    py, c = kernels.BACKENDS["python"], kernels.BACKENDS["compiled"]
    for cfg in configs():
        flat = flatten(generate(cfg))
        same_state(RUNS[name](flat, py), RUNS[name](flat, c))


@pytest.mark.parametrize("key", list(ClusterKey))
def test_clusters_agree(key):
    py, c = kernels.BACKENDS["python"], kernels.BACKENDS["compiled"]
    for cfg in configs():
        flat = flatten(generate(cfg))
        a, b = py.build_clusters(flat, key.value), c.build_clusters(flat, key.value)
        assert all(x.tolist() == y.tolist() for x, y in zip(a, b))


def test_exact_agrees():
    py, c = kernels.BACKENDS["python"], kernels.BACKENDS["compiled"]
    for seed in range(80):
        flat = flatten(random_micro(seed, max_vnfs=8, max_nodes=5))
        a, b = run_exact(flat, backend=py), run_exact(flat, backend=c)
        same_state(a[0], b[0])
        assert a[1:] == b[1:]


def test_default_backend_prefers_compiled():
    if "RANSLICE_BACKEND" not in os.environ:
        assert kernels.backend.name == "compiled"
