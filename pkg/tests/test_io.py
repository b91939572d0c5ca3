import json

import pytest

from conftest import shift_ca, two_track_ca, xor_ca
from surjunct import io as sio
from surjunct.analysis import classify, decide_injectivity
from surjunct.group import cyclic, dihedral, direct_product, from_table, integers, symmetric
from surjunct.groupring import GroupRingElement
from surjunct.symbolic import FiniteConfig, Pattern, SftDescriptor, ZConfig, make_ca


@pytest.mark.parametrize(
    "g",
    [integers(), cyclic(5), dihedral(3), symmetric(3), direct_product(cyclic(2), symmetric(3)), from_table(cyclic(3).table)],
    ids=repr,
)
def test_group_roundtrip(g):
    data = json.loads(json.dumps(sio.group_to_json(g)))
    assert sio.group_from_json(data) == g


def test_group_spec_strings():
    assert sio.parse_group_spec("Z") == integers()
    assert sio.parse_group_spec("cyclic:3") == cyclic(3)
    assert sio.parse_group_spec("product:cyclic:2,cyclic:2") == direct_product(cyclic(2), cyclic(2))
    with pytest.raises(sio.ParseError):
        sio.parse_group_spec("torus:3")


def test_bad_group_descriptors():
    with pytest.raises(sio.ParseError):
        sio.group_from_json({"type": "finite", "table": [[0, 1], [1, 1]]})
    with pytest.raises(sio.ParseError):
        sio.group_from_json({"type": "builder", "name": "cyclic", "args": ["3"]})
    with pytest.raises(sio.ParseError):
        sio.group_from_json({"type": "lattice"})


@pytest.mark.parametrize("T", [xor_ca(), two_track_ca(), make_ca(symmetric(3), 2, [0, 1, 4], list(range(8)) and [0, 1] * 4)])
def test_ca_roundtrip(T):
    assert sio.ca_from_json(json.loads(json.dumps(sio.ca_to_json(T)))) == T


def test_ca_schema_messages():
    good = sio.ca_to_json(xor_ca())
    with pytest.raises(sio.ParseError, match="length 3"):
        sio.ca_from_json({**good, "rule": [0, 1, 1]})
    with pytest.raises(sio.ParseError, match="alphabet"):
        sio.ca_from_json({**good, "alphabet": 1})
    with pytest.raises(sio.ParseError, match="rule"):
        sio.ca_from_json({k: v for k, v in good.items() if k != "rule"})
    with pytest.raises(sio.ParseError, match="sorted"):
        sio.ca_from_json({**good, "memory": [1, 0]})


def test_sft_goe_ring_roundtrip():
    S = SftDescriptor(integers(), 2, (0, 1), ((1, 1),))
    assert sio.sft_from_json(sio.sft_to_json(S)) == S
    pats = [Pattern((0, 1, 2), (1, 0, 1))]
    assert sio.goe_from_json(sio.goe_to_json((0, 1, 2), pats)) == pats
    f = GroupRingElement.from_dict(symmetric(3), 3, {1: 2, 4: 1})
    assert sio.ring_from_json(sio.ring_to_json(f)) == f


def test_config_roundtrip():
    for x in [ZConfig((0,), (1, 1), (0, 1), 4), FiniteConfig((0, 1, 1))]:
        assert sio.config_from_json(sio.config_to_json(x)) == x


def test_to_json_results():
    c = sio.to_json(classify(xor_ca()))
    assert c["kind"] == "Classification"
    assert c["injective"] is False
    w = c["results"]["injective"]["witness"]
    assert w == [{"left": [0], "center": [], "right": [0], "offset": 0}, {"left": [1], "center": [], "right": [1], "offset": 0}]
    inj = sio.to_json(decide_injectivity(shift_ca()))
    assert inj["certificate"]["set"] == [-1]
    json.dumps(c)
