import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmatch.errors import InputError
from qmatch.graph import (GENERATOR_KINDS, generate, make_graph,
                          parse_edge_list, serialize_edge_list, total_weight)


def test_make_graph_canonicalizes_orientation_and_order():
    g = make_graph(4, [(3, 2, 1.0), (1, 0, 2.0)])
    assert g.edges == ((0, 1, 2.0), (2, 3, 1.0))


def test_make_graph_rejects_bad_edges():
    with pytest.raises(InputError):
        make_graph(3, [(0, 0, 1.0)])
    with pytest.raises(InputError):
        make_graph(3, [(0, 1, 1.0), (1, 0, 2.0)])
    with pytest.raises(InputError):
        make_graph(3, [(0, 3, 1.0)])
    with pytest.raises(InputError):
        make_graph(3, [(0, 1, 0.0)])
    with pytest.raises(InputError):
        make_graph(3, [(0, 1, -2.0)])


def test_neighbors_and_edge_index(path3):
    assert sorted(path3.neighbors(1)) == [0, 2]
    assert path3.edge_index() == {(0, 1): 1.0, (1, 2): 1.0}


def test_parse_edge_list_with_header_and_comments():
    text = "# weighted path\nn 3\n0 1 1.5\n1 2 2.5\n"
    g = parse_edge_list(text)
    assert g.n == 3
    assert g.edges == ((0, 1, 1.5), (1, 2, 2.5))
    assert total_weight(g) == 4.0


def test_parse_edge_list_without_header_infers_n():
    g = parse_edge_list("0 2 1.0\n")
    assert g.n == 3


def test_parse_edge_list_reports_line_numbers():
    with pytest.raises(InputError, match="line 2"):
        parse_edge_list("0 1 1.0\n0 1 oops\n")


def test_serialize_round_trip_exact():
    g = generate("random", 9, seed=5, weight_mode="uniform", p=0.7)
    g2 = parse_edge_list(serialize_edge_list(g))
    assert g2.n == g.n
    assert g2.edges == g.edges


def test_generate_shapes():
    assert len(generate("path", 5).edges) == 4
    assert len(generate("cycle", 5).edges) == 5
    assert len(generate("complete", 5).edges) == 10
    assert len(generate("star", 5).edges) == 4
    with pytest.raises(InputError):
        generate("cycle", 2)
    with pytest.raises(InputError):
        generate("path", 1)
    with pytest.raises(InputError):
        generate("banana", 4)


def test_generate_deterministic_and_seed_sensitive():
    a = generate("random", 8, seed=3, weight_mode="uniform")
    b = generate("random", 8, seed=3, weight_mode="uniform")
    c = generate("random", 8, seed=4, weight_mode="uniform")
    assert a.edges == b.edges
    assert a.edges != c.edges


@settings(max_examples=40, deadline=None)
@given(kind=st.sampled_from([k for k in GENERATOR_KINDS if k != "random"]),
       n=st.integers(min_value=3, max_value=9),
       seed=st.integers(min_value=0, max_value=50))
def test_generated_weights_positive(kind, n, seed):
    g = generate(kind, n, seed=seed, weight_mode="uniform")
    assert all(w > 0 for (_, _, w) in g.edges)
    assert all(0 <= u < v < g.n for (u, v, _) in g.edges)
