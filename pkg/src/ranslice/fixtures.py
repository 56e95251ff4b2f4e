"""Small hand-built instances used by tests, docs and the CLI."""
from __future__ import annotations

from .model import Instance, Slice, SliceSet, SubstrateNetwork


def fig2() -> Instance:
    """Five-node ring, capacity 4 each, link capacity 2.

    Slice 0 is the chain u1 (demand 2) - u2 (demand 1); slice 1 is the
    triangle p1, p2, p3 with demand 1 each. Every virtual link asks for 1.
    """
    ring = [(s, (s + 1) % 5, 2) for s in range(5)]
    substrate = SubstrateNetwork.build([4] * 5, ring)
    chain = Slice.build([2, 1], [(0, 1, 1)])
    triangle = Slice.build([1, 1, 1], [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
    return Instance(substrate, SliceSet((chain, triangle)))


def single_node_knapsack() -> Instance:
    """One node of capacity 4 and three isolated VNFs asking 3, 2, 2."""
    return Instance(SubstrateNetwork.build([4]),
                    SliceSet((Slice.build([3, 2, 2]),)))


def shortage_path() -> Instance:
    """Two linked nodes of capacity 2; a 3-VNF path slice, demand 2 each."""
    substrate = SubstrateNetwork.build([2, 2], [(0, 1, 4)])
    path = Slice.build([2, 2, 2], [(0, 1, 1), (1, 2, 1)])
    return Instance(substrate, SliceSet((path,)))


FIXTURES = {
    "fig2": fig2,
    "knapsack": single_node_knapsack,
    "shortage-path": shortage_path,
}
