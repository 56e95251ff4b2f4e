"""Seeded random instances for the normal and shortage regimes.

Randomness comes from two ``numpy.random.Generator`` (PCG64) streams spawned
from ``SeedSequence(config.seed)``: one for the substrate, one for the
slices. Draws happen in a fixed order, so a (seed, config) pair always
yields the same instance on the same build. Because the streams are
separate, two configs that differ only in substrate shape (say the degree
k) get identical slices from the same seed, which keeps degree sweeps
paired. Regular topologies with ``k >= 3`` are drawn by networkx from an
integer seed taken from the owning stream.

Ranges are inclusive ``(lo, hi)`` integer pairs.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import numpy as np

from .model import Instance, Slice, SliceSet, SubstrateNetwork

Range = tuple[int, int]


class InfeasibleConfig(ValueError):
    pass


class Regime(Enum):
    NORMAL = "normal"
    SHORTAGE = "shortage"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    regime: Regime = Regime.NORMAL
    n_substrate: Range = (60, 100)
    node_capacity: Range = (4, 8)
    n_slices: Range = (2, 10)
    vnfs_per_slice: Range = (10, 100)
    vnf_demand: Range = (1, 3)
    # None means a connected random graph with the given mean degree
    substrate_degree: int | None = None
    vnf_degree: int | None = None
    substrate_mean_degree: float = 4.0
    vnf_mean_degree: float = 2.5
    link_capacity: Range = (4, 8)
    bandwidth_demand: Range = (1, 2)
    # overrides vnfs_per_slice: this many VNFs split evenly over the slices
    total_vnfs: int | None = None

    def __post_init__(self):
        for f in ("n_substrate", "node_capacity", "n_slices", "vnfs_per_slice", "vnf_demand",
                  "link_capacity", "bandwidth_demand"):
            lo, hi = getattr(self, f)
            if lo < 0 or hi < lo:
                raise InfeasibleConfig(f"{f}={lo, hi} is not a non-empty non-negative range")
        if self.n_substrate[0] < 1 or self.n_slices[0] < 1:
            raise InfeasibleConfig("need at least one substrate node and one slice")
        k = self.substrate_degree
        if k is not None and not 1 <= k < self.n_substrate[0]:
            raise InfeasibleConfig(f"substrate degree {k} needs 1 <= k < {self.n_substrate[0]}")
        kp = self.vnf_degree
        if kp is not None:
            smallest = self.vnfs_per_slice[0]
            if self.total_vnfs is not None:
                smallest = self.total_vnfs // self.n_slices[1]
            if not 1 <= kp < smallest:
                raise InfeasibleConfig(f"vnf degree {kp} needs 1 <= k' < smallest slice ({smallest})")
        if self.total_vnfs is not None and self.total_vnfs < self.n_slices[1]:
            raise InfeasibleConfig("total_vnfs must leave every slice at least one VNF")

    def replace(self, **changes) -> "GeneratorConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["regime"] = self.regime.value
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        d = dict(d)
        regime = Regime(d.pop("regime", "custom"))
        base = preset(regime) if regime is not Regime.CUSTOM else cls(regime=regime)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown generator fields: {sorted(unknown)}")
        for k, v in d.items():
            if isinstance(v, list):
                d[k] = tuple(v)
        return base.replace(**d)


def preset(regime: Regime | str, **overrides) -> GeneratorConfig:
    regime = Regime(regime)
    if regime is Regime.NORMAL:
        cfg = GeneratorConfig(regime=regime)
    elif regime is Regime.SHORTAGE:
        cfg = GeneratorConfig(regime=regime, node_capacity=(2, 4), vnfs_per_slice=(1, 10),
                              link_capacity=(2, 4))
    else:
        cfg = GeneratorConfig(regime=regime)
    return cfg.replace(**overrides) if overrides else cfg


def _draw(rng: np.random.Generator, r: Range, size=None):
    return rng.integers(r[0], r[1] + 1, size=size)


def _edges_from_graph(g: nx.Graph) -> list[tuple[int, int]]:
    return sorted((min(a, b), max(a, b)) for a, b in g.edges())


def regular_graph(n: int, k: int, rng: np.random.Generator,
                  attempts: int = 100) -> list[tuple[int, int]]:
    """Connected random k-regular graph on n nodes, as sorted ``(a, b)`` pairs.

    When ``n * k`` is odd one node gets degree ``k - 1`` instead.
    """
    if n == 1 and k == 0:
        return []
    if not 1 <= k < n:
        raise InfeasibleConfig(f"no connected {k}-regular graph on {n} nodes")
    if k == 1:
        if n != 2:
            raise InfeasibleConfig(f"a 1-regular graph on {n} nodes is disconnected")
        return [(0, 1)]
    if k == 2:
        # the only connected 2-regular graph is a cycle
        order = rng.permutation(n).tolist()
        return sorted(tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n))
    degrees = [k] * n
    if (n * k) % 2:
        degrees[-1] = k - 1
    for _ in range(attempts):
        seed = int(rng.integers(2**32))
        try:
            if (n * k) % 2 == 0:
                g = nx.random_regular_graph(k, n, seed=seed)
            else:
                g = nx.random_degree_sequence_graph(degrees, seed=seed, tries=20)
        except (nx.NetworkXError, nx.NetworkXUnfeasible):
            continue
        if nx.is_connected(g):
            return _edges_from_graph(g)
    raise InfeasibleConfig(f"could not draw a connected {k}-regular graph on {n} nodes")


def random_connected_graph(n: int, mean_degree: float,
                           rng: np.random.Generator) -> list[tuple[int, int]]:
    """Random spanning tree plus independent extra edges up to ``mean_degree``."""
    if n <= 1:
        return []
    order = rng.permutation(n)
    parents = rng.integers(0, np.arange(1, n))
    edges = {tuple(sorted((int(order[i]), int(order[parents[i - 1]])))) for i in range(1, n)}
    tree_degree = 2 * (n - 1) / n
    p = max(0.0, (mean_degree - tree_degree) / max(n - 1 - tree_degree, 1e-9))
    iu, ju = np.triu_indices(n, 1)
    hits = rng.random(len(iu)) < min(p, 1.0)
    for a, b in zip(iu[hits].tolist(), ju[hits].tolist()):
        edges.add((a, b))
    return sorted(edges)


def _topology(n, k, mean_degree, rng):
    return regular_graph(n, k, rng) if k is not None else random_connected_graph(n, mean_degree, rng)


def generate(config: GeneratorConfig) -> Instance:
    sub_seq, slice_seq = np.random.SeedSequence(config.seed).spawn(2)
    rng = np.random.default_rng(sub_seq)
    n = int(_draw(rng, config.n_substrate))
    if config.substrate_degree is not None and config.substrate_degree >= n:
        raise InfeasibleConfig(f"substrate degree {config.substrate_degree} >= {n} nodes")
    caps = _draw(rng, config.node_capacity, n).tolist()
    edges = _topology(n, config.substrate_degree, config.substrate_mean_degree, rng)
    link_caps = _draw(rng, config.link_capacity, len(edges)).tolist()
    substrate = SubstrateNetwork.build(caps, [(a, b, c) for (a, b), c in zip(edges, link_caps)])

    rng = np.random.default_rng(slice_seq)
    n_slices = int(_draw(rng, config.n_slices))
    if config.total_vnfs is not None:
        q, r = divmod(config.total_vnfs, n_slices)
        sizes = [q + (1 if i < r else 0) for i in range(n_slices)]
    else:
        sizes = _draw(rng, config.vnfs_per_slice, n_slices).tolist()
    slices = []
    for size in sizes:
        if config.vnf_degree is not None and config.vnf_degree >= size:
            raise InfeasibleConfig(f"vnf degree {config.vnf_degree} >= slice size {size}")
        demands = _draw(rng, config.vnf_demand, size).tolist()
        vedges = _topology(size, config.vnf_degree, config.vnf_mean_degree, rng)
        bws = _draw(rng, config.bandwidth_demand, len(vedges)).tolist()
        slices.append(Slice.build(demands, [(a, b, w) for (a, b), w in zip(vedges, bws)]))
    return Instance(substrate, SliceSet(tuple(slices)))
