import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgwalk.errors import GraphSyntaxError, UnknownParameter, ValidationError
from qgwalk.graphspec import (
    Edge,
    GraphSpec,
    Site,
    build_hamiltonian,
    builtin,
    builtin_braess4,
    builtin_braess10,
    parse_graph_spec,
    serialize_graph_spec,
)

TABLE1_DOC = {
    "sites": [{"id": i, "potential": 0} for i in range(4)],
    "edges": [
        {"a": 0, "b": 1, "coupling": "b"},
        {"a": 1, "b": 2, "coupling": "s"},
        {"a": 2, "b": 3, "coupling": "b"},
        {"a": 0, "b": 3, "coupling": "s"},
        {"a": 1, "b": 3, "coupling": "c"},
    ],
    "parameters": {"b": 0.01, "s": 0.01, "c": 0.1},
}


def h_num(b, s, c, V0=0.0):
    return np.array([
        [V0, b, 0, s],
        [b, V0, s, c],
        [0, s, V0, b],
        [s, c, b, V0],
    ])


def test_parse_table1_document():
    spec = parse_graph_spec(json.dumps(TABLE1_DOC))
    assert spec.n == 4
    assert len(spec.edges) == 5
    np.testing.assert_array_equal(build_hamiltonian(spec), h_num(0.01, 0.01, 0.1))


def test_parse_single_site():
    spec = parse_graph_spec('{"sites": [{"id": 0, "potential": 0}], "edges": [], "parameters": {}}')
    assert spec.n == 1
    np.testing.assert_array_equal(build_hamiltonian(spec), [[0.0]])


def _doc_with(**changes):
    doc = json.loads(json.dumps(TABLE1_DOC))
    doc.update(changes)
    return json.dumps(doc)


def test_self_loop_rejected():
    edges = TABLE1_DOC["edges"] + [{"a": 2, "b": 2, "coupling": 0.1}]
    with pytest.raises(ValidationError, match="self-loop") as info:
        parse_graph_spec(_doc_with(edges=edges))
    assert "(2,2)" in info.value.locus


@pytest.mark.parametrize(
    "changes, match",
    [
        ({"edges": TABLE1_DOC["edges"] + [{"a": 3, "b": 1, "coupling": 0.2}]}, "duplicate edge"),
        ({"edges": [{"a": 0, "b": 1, "coupling": "nope"}]}, "unknown parameter"),
        ({"edges": [{"a": 0, "b": 7, "coupling": 0.1}]}, "outside"),
        ({"sites": [{"id": 0, "potential": 0}, {"id": 0, "potential": 1}]}, "duplicate site"),
        ({"sites": [{"id": 0, "potential": 0}, {"id": 2, "potential": 0}]}, "dense"),
    ],
)
def test_invariant_violations(changes, match):
    with pytest.raises(ValidationError, match=match):
        parse_graph_spec(_doc_with(**changes))


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        '{"sites": [], "edges": []}',
        '{"sites": [], "edges": [], "parameters": {}, "extra": 1}',
        '{"sites": [{"id": 0, "potential": 0, "spin": 1}], "edges": [], "parameters": {}}',
        '{"sites": [{"id": -1, "potential": 0}], "edges": [], "parameters": {}}',
        '{"sites": [{"id": true, "potential": 0}], "edges": [], "parameters": {}}',
        '{"sites": [], "edges": [], "parameters": {"c": "x"}}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(GraphSyntaxError):
        parse_graph_spec(text)


def test_unknown_parameter_is_validation_error():
    assert issubclass(UnknownParameter, ValidationError)


def test_braess4_entry_pattern():
    H = build_hamiltonian(builtin_braess4(0.01, 0.01, 0.1, 0.0))
    assert H[1, 3] == 0.1
    assert H[0, 2] == 0.0


def test_zero_parameters_give_zero_matrix():
    H = build_hamiltonian(builtin_braess4(0, 0, 0, 0, cross_edge=True))
    np.testing.assert_array_equal(H, np.zeros((4, 4)))


def test_override_precedence():
    spec = builtin_braess4(0.01, 0.01, 0.01, 0)
    assert build_hamiltonian(spec, {"c": 0.05})[1, 3] == 0.05
    assert build_hamiltonian(spec)[1, 3] == 0.01


def test_override_of_unknown_parameter():
    with pytest.raises(UnknownParameter):
        build_hamiltonian(builtin_braess4(0.01, 0.01, 0.1), {"q": 1.0})


def test_hamiltonian_is_read_only():
    H = build_hamiltonian(builtin_braess4(0.01, 0.01, 0.1))
    with pytest.raises(ValueError):
        H[0, 0] = 1.0


def test_braess4_diagonal_only():
    np.testing.assert_array_equal(build_hamiltonian(builtin_braess4(0, 0, 0, 5)), 5 * np.eye(4))


def test_braess4_without_cross_edge_is_c4_ring():
    spec = builtin_braess4(0.01, 0.01, 0, 0)
    assert len(spec.edges) == 4
    ring = 0.01 * (np.roll(np.eye(4), 1, axis=1) + np.roll(np.eye(4), -1, axis=1))
    np.testing.assert_array_equal(build_hamiltonian(spec), ring)


TABLE2 = dict(l=0.1, h=0.2, s=0.25, c=0.3, V1=0.5, V2=0.5, Eu=0.5, Ed=0.5, Vu=0.5, Vd=0.5)
TABLE3 = dict(l=0.04, h=0.05, s=0.25, c=0.3, V1=0, V2=0, Eu=0, Ed=0, Vu=0, Vd=0)


def test_braess10_table2():
    spec = builtin_braess10(**TABLE2)
    assert spec.n == 10
    # 4 intra-DQD + 3 upper + 3 lower + cross edge
    assert len(spec.edges) == 11
    H = build_hamiltonian(spec)
    np.testing.assert_array_equal(np.diag(H), 0.5)
    assert H[4, 7] == H[7, 4] == 0.3
    assert H[0, 1] == H[2, 3] == H[5, 6] == H[8, 9] == 0.25
    assert H[1, 2] == H[3, 4] == H[4, 8] == 0.2
    assert H[1, 5] == H[6, 7] == H[7, 8] == 0.1


def test_braess10_two_paths():
    spec = builtin_braess10(**{**TABLE2, "c": 0})
    assert len(spec.edges) == 10
    assert not any(e.key == frozenset((4, 7)) for e in spec.edges)


def test_braess10_table3():
    H = build_hamiltonian(builtin_braess10(**TABLE3))
    np.testing.assert_array_equal(np.diag(H), 0.0)
    assert H[1, 5] == 0.04 and H[1, 2] == 0.05


def test_presets():
    assert builtin("braess10", "table3").parameters["l"] == 0.04
    assert builtin("braess4").parameters["c"] == 0.1
    with pytest.raises(ValidationError):
        builtin("braess4", "table2")
    with pytest.raises(UnknownParameter):
        builtin("braess4", zz=1.0)


def test_with_parameters():
    spec = builtin_braess4(0.01, 0.01, 0.1)
    assert spec.with_parameters({"c": 0.2}).parameters["c"] == 0.2
    assert spec.parameters["c"] == 0.1
    with pytest.raises(UnknownParameter):
        spec.with_parameters({"nope": 1})


def test_spec_parameters_are_immutable():
    spec = builtin_braess4(0.01, 0.01, 0.1)
    with pytest.raises(TypeError):
        spec.parameters["c"] = 1.0


@st.composite
def graph_specs(draw):
    n = draw(st.integers(1, 8))
    names = ["p0", "p1", "p2"]
    params = {k: draw(st.floats(-2, 2, allow_nan=False)) for k in names}
    value = st.one_of(st.floats(-2, 2, allow_nan=False).filter(lambda x: x != 0),
                      st.sampled_from(names))
    sites = [Site(i, draw(value)) for i in range(n)]
    all_pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(all_pairs), unique=True)) if all_pairs else []
    edges = [Edge(a, b, draw(value)) for a, b in chosen]
    return GraphSpec(tuple(sites), tuple(edges), params)


@settings(max_examples=200, deadline=None)
@given(graph_specs())
def test_round_trip(spec):
    assert parse_graph_spec(serialize_graph_spec(spec)) == spec


@settings(max_examples=200, deadline=None)
@given(graph_specs(), st.dictionaries(st.sampled_from(["p0", "p1", "p2"]),
                                      st.floats(0.1, 2)))
def test_hamiltonian_symmetric_with_edge_sparsity(spec, overrides):
    H = build_hamiltonian(spec, overrides)
    np.testing.assert_array_equal(H, H.T)
    allowed = np.eye(spec.n, dtype=bool)
    for e in spec.edges:
        allowed[e.a, e.b] = allowed[e.b, e.a] = True
    assert not np.any(H[~allowed])
    for e in spec.edges:
        assert H[e.a, e.b] == spec.resolve(e.coupling, overrides)


@settings(max_examples=200, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_braess4_matches_h_num(b, s, c, V0):
    H = build_hamiltonian(builtin_braess4(b, s, c, V0, cross_edge=True))
    np.testing.assert_array_equal(H, h_num(b, s, c, V0))
