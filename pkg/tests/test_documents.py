import json
from pathlib import Path

import pytest

from flatbundles.basespace import format_id, torus
from flatbundles.documents import (
    complex_from_doc,
    complex_to_doc,
    covering_to_doc,
    load_covering,
    load_local_system,
    load_space,
    load_tower,
    local_system_to_doc,
)
from flatbundles.errors import ParseError
from flatbundles.exactfield import field_make

DATA = Path(__file__).parent / "data"


def test_complex_roundtrip():
    X = torus()
    assert complex_from_doc(complex_to_doc(X)) == X
    assert load_space("torus.json", DATA) == X
    assert load_space("T2rel") == X
    inline = {"vertices": ["v0"], "edges": {"a": ["v0", "v0"], "b": ["v0", "v0"]}, "faces": [["a", "b", "a^-1", "b^-1"]]}
    assert load_space(inline) == X


def test_local_system_roundtrip(tmp_path):
    E = load_local_system("fib2.json", DATA)
    assert E.ctx == field_make("F(2)") and E.rank == 2
    path = tmp_path / "e.json"
    path.write_text(json.dumps(local_system_to_doc(E, "C1")))
    assert load_local_system(path) == E


def test_field_override_only_when_absent():
    doc = {"space": "C1", "rank": 1, "rep": {"a": [["2"]]}}
    assert load_local_system(doc, field="F(3)").ctx == field_make("F(3)")
    with pytest.raises(ParseError):
        load_local_system(doc)


def test_covering_documents():
    c = load_covering("z3_cover.json", DATA)
    assert c.degree == 3 and c.is_galois and c.group.order == 3
    s3 = load_covering("s3_cover.json", DATA)
    assert s3.degree == 6 and s3.group.order == 6 and s3.is_galois
    act = load_covering("transposition_action.json", DATA)
    assert act.degree == 3 and len(act.orbits) == 2
    lists = load_covering({"base": "C1", "mode": "action", "degree": 3, "rho": {"a": [1, 0, 2]}})
    assert lists.perms == act.perms
    doc = covering_to_doc(c)
    assert doc["degree"] == 3 and set(doc["projection"].values()) == {"v0"}


def test_cover_total_reference():
    E = load_local_system("trivial_on_z3.json", DATA)
    assert {format_id(g) for g in E.generators} == {"a#1"}
    comp = load_space({"cover_component": "transposition_action.json", "lift": 2}, DATA)
    assert len(comp.vertices) == 1


def test_tower_document():
    t = load_tower("dyadic.json", DATA)
    assert t.indices == [1, 2, 4, 8]


@pytest.mark.parametrize(
    "ref",
    [
        "malformed.json",
        "missing.json",
        {"vertices": ["v0"]},
        {"vertices": ["v0"], "edges": [{"id": "a", "src": "v0"}]},
        {"vertices": ["v0"], "edges": [{"id": "a", "src": "v0", "dst": "v0"}, {"id": "a", "src": "v0", "dst": "v0"}]},
    ],
)
def test_malformed_spaces(ref):
    with pytest.raises(ParseError):
        load_space(ref, DATA)


@pytest.mark.parametrize(
    "doc",
    [
        {"space": "C1", "field": "Q", "rank": 2, "rep": {"a": [["1"]]}},
        {"space": "C1", "field": "Q", "rank": 1, "rep": {"z": [["1"]]}},
        {"space": "C1", "field": "Q", "rank": "one", "rep": {}},
        {"space": "C1", "field": "Q", "rank": 1, "rep": {"a": [["1/0"]]}},
    ],
)
def test_malformed_local_systems(doc):
    with pytest.raises(ParseError):
        load_local_system(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {"base": "C1", "mode": "sideways"},
        {"base": "C1", "mode": "action", "rho": {"a": [0]}},
        {"base": "C1", "rho": {"q": 1}, "group": {"cyclic": 2}},
        {"base": "C1", "rho": {"a": "(1 2)"}},
    ],
)
def test_malformed_coverings(doc):
    with pytest.raises(ParseError):
        load_covering(doc)
