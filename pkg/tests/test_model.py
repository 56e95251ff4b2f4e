import pytest

from ranslice.fixtures import fig2
from ranslice.model import (InfeasiblePlan, MappingPlan, ResidualState, Slice, SliceSet,
                            SubstrateNetwork, SubstrateNode, objective, residual_after,
                            validate_instance, validate_plan)


def ring5():
    return SubstrateNetwork.build([4] * 5, [(s, (s + 1) % 5, 2) for s in range(5)])


def test_well_formed_instance_is_ok():
    inst = fig2()
    assert validate_instance(inst.substrate, inst.slices).ok


def test_dangling_link_endpoint():
    sub = SubstrateNetwork.build([4] * 5, [(0, 9, 2)])
    assert "dangling link endpoint" in validate_instance(sub, SliceSet()).kinds()


def test_missing_bandwidth_demand():
    sl = Slice((Slice.build([1, 1]).vnfs), links=((0, 1),), bandwidth={})
    assert "missing bandwidth demand" in validate_instance(ring5(), SliceSet((sl,))).kinds()


@pytest.mark.parametrize("sub, kind", [
    (SubstrateNetwork.build([4, 4], [(0, 0, 1)]), "self-loop"),
    (SubstrateNetwork.build([4, 4], [(0, 1, 1), (1, 0, 1)]), "duplicate link"),
    (SubstrateNetwork((SubstrateNode(0, 1), SubstrateNode(2, 1))), "node ids not dense"),
    (SubstrateNetwork.build([-1]), "negative node capacity"),
    (SubstrateNetwork(SubstrateNetwork.build([1, 1]).nodes, (), {(0, 1): 3}),
     "link capacity without link"),
])
def test_substrate_invariants(sub, kind):
    assert kind in validate_instance(sub, SliceSet()).kinds()


def test_virtual_link_out_of_slice_is_dangling():
    sl = Slice.build([1, 1], [(0, 5, 1)])
    assert "dangling virtual link endpoint" in validate_instance(ring5(), SliceSet((sl,))).kinds()


def test_empty_plan_is_feasible():
    inst = fig2()
    assert validate_plan(inst.substrate, inst.slices, MappingPlan()).ok


def test_node_capacity_violated():
    sub = SubstrateNetwork.build([2])
    slices = SliceSet((Slice.build([2, 1], [(0, 1, 1)]),))
    report = validate_plan(sub, slices, MappingPlan({(0, 0): 0, (0, 1): 0}))
    assert report.kinds() == {"node capacity violated"}


def test_connectivity_violated():
    inst = fig2()
    # nodes 0 and 2 are not adjacent on the ring
    report = validate_plan(inst.substrate, inst.slices, MappingPlan({(0, 0): 0, (0, 1): 2}))
    assert report.kinds() == {"connectivity violated"}


def test_link_capacity_is_aggregated():
    inst = fig2()
    # all three triangle links use substrate link (0, 1) of capacity 2
    plan = MappingPlan({(1, 0): 0, (1, 1): 1, (1, 2): 1, (0, 0): 0, (0, 1): 1})
    assert "link capacity violated" in validate_plan(inst.substrate, inst.slices, plan).kinds()
    ok = MappingPlan({(1, 0): 0, (1, 1): 1, (1, 2): 1})
    assert validate_plan(inst.substrate, inst.slices, ok).ok


def test_colocation_needs_no_link():
    sub = SubstrateNetwork.build([4])
    slices = SliceSet((Slice.build([1, 1], [(0, 1, 9)]),))
    assert validate_plan(sub, slices, MappingPlan({(0, 0): 0, (0, 1): 0})).ok


def test_unknown_vnf_and_node():
    inst = fig2()
    report = validate_plan(inst.substrate, inst.slices, MappingPlan({(5, 0): 0, (0, 0): 7}))
    assert report.kinds() == {"unknown vnf", "unknown node"}


def test_residual_after_empty_plan_is_full():
    inst = fig2()
    assert residual_after(inst.substrate, inst.slices, MappingPlan()) == ResidualState.full(inst.substrate)


def test_residual_after_single_vnf():
    inst = fig2()
    r = residual_after(inst.substrate, inst.slices, MappingPlan({(0, 0): 3}))
    assert r.node_residual == [4, 4, 4, 2, 4]
    assert r.link_residual == ResidualState.full(inst.substrate).link_residual


def test_residual_after_debits_link():
    sub = SubstrateNetwork.build([4, 4], [(0, 1, 3)])
    slices = SliceSet((Slice.build([1, 1], [(0, 1, 1)]),))
    r = residual_after(sub, slices, MappingPlan({(0, 0): 0, (0, 1): 1}))
    assert r.link_residual == {(0, 1): 2}


def test_residual_after_rejects_overdraw():
    sub = SubstrateNetwork.build([1])
    with pytest.raises(InfeasiblePlan):
        residual_after(sub, SliceSet((Slice.build([2]),)), MappingPlan({(0, 0): 0}))


def test_objective_counts_assignments():
    assert objective(MappingPlan()) == 0
    assert objective(MappingPlan({(0, i): 0 for i in range(5)})) == 5


def test_edge_mappings_are_derived():
    inst = fig2()
    plan = MappingPlan({(0, 0): 0, (0, 1): 1, (1, 0): 2})
    assert plan.edge_mappings(inst.slices) == [(((0, 0), (0, 1)), (0, 1))]
