import json

import pytest

from ranslice import serialize
from ranslice.fixtures import FIXTURES
from ranslice.generator import GeneratorConfig, generate
from ranslice.model import MappingPlan


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_round_trip(name):
    inst = FIXTURES[name]()
    text = serialize.dumps_instance(inst)
    back = serialize.loads_instance(text)
    assert back == inst
    assert serialize.dumps_instance(back) == text


def test_generated_round_trip():
    inst = generate(GeneratorConfig(seed=3))
    assert serialize.loads_instance(serialize.dumps_instance(inst)) == inst


def test_plan_round_trip_is_sorted():
    plan = MappingPlan({(1, 0): 2, (0, 1): 0, (0, 0): 4})
    text = serialize.dumps_plan(plan)
    assert [e["vnf"] for e in json.loads(text)] == [0, 1, 0]
    assert serialize.loads_plan(text) == plan


def test_duplicate_vnf_in_plan_rejected():
    doc = json.dumps([{"slice": 0, "vnf": 0, "node": 1}, {"slice": 0, "vnf": 0, "node": 2}])
    with pytest.raises(serialize.FormatError):
        serialize.loads_plan(doc)


@pytest.mark.parametrize("text", ["not json", "[1, 2]", '{"substrate": {}}'])
def test_malformed_instance(text):
    with pytest.raises(serialize.FormatError):
        serialize.loads_instance(text)
