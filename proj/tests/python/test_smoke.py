import json

import pytest

import autostack


def test_entries():
    assert set(autostack.entries()) >= {"free2", "z2", "s3", "klein"}


def test_normal_forms():
    z2 = autostack.Group("z2")
    assert z2.letters == ["a", "A", "b", "B"]
    assert z2.normal_form("ba") == "ab"
    assert z2.is_identity("baBA")
    assert not z2.is_identity("ab")
    assert z2.phi("b", "a") == "Bab"
    assert z2.reduce_trace("ba")[0] == ("ba", "bBab")
    assert autostack.Group("s3").is_identity("ababab")


def test_ball():
    stats = autostack.Group("free2").ball(2)
    assert stats["vertices"] == 17
    assert stats["recursive"] == 0
    assert stats["tree_spans"]
    assert stats["fellow_traveler"] == 1
    z2 = autostack.Group("z2").ball(4)
    assert z2["descent_acyclic"]
    assert z2["vertices"] == 1 + 4 + 8 + 12 + 16


def test_diagram():
    d = autostack.Group("z2").diagram("bbaBBA")
    assert d["problems"] == []
    assert len(d["faces"]) == 2
    assert d["vertices"] - d["edges"] + len(d["faces"]) == 1
    assert json.loads(d["json"])["boundary"] == "bbaBBA"


def test_bundle_round_trip():
    g = autostack.Group("klein")
    h = autostack.Group.from_bundle(g.bundle())
    assert h.bundle() == g.bundle()
    assert h.normal_form("ba") == g.normal_form("ba")


def test_errors():
    with pytest.raises(autostack.Error, match="usage"):
        autostack.Group("nosuchgroup")
    with pytest.raises(autostack.Error, match="validation"):
        autostack.Group("z2").diagram("ab")
    with pytest.raises(autostack.Error, match="parse"):
        autostack.Group("z2").normal_form("aq")
