import pytest
from hypothesis import given, strategies as st

from flatbundles.basespace import (
    CORPUS,
    TwoComplex,
    circle,
    cycle_graph,
    free_reduce,
    parse_word,
    projective_plane,
    torus,
    triangle,
    wedge,
)
from flatbundles.errors import Disconnected, MissingBasepoint, NotAtBasepoint, NotClosed, OpenFaceWord, UnknownEdge


def test_validate_examples():
    assert circle().validate() == []
    two_points = TwoComplex(["v0", "v1"], {}, [], "v0")
    (err,) = two_points.validate()
    assert isinstance(err, Disconnected)
    assert TwoComplex(["v0"], {"a": ("v0", "v0")}, [["a"]], "v0").validate() == []


def test_validate_error_order_is_deterministic():
    X = TwoComplex(["v0", "v1", "v2"], {"e": ("v0", "v1")}, [["e"]], "v0")
    errs = X.validate()
    assert [type(e) for e in errs] == [OpenFaceWord, Disconnected]
    assert isinstance(TwoComplex(["v0"], {}, [], "zz").validate()[0], MissingBasepoint)
    assert isinstance(TwoComplex(["v0"], {"a": ("v0", "v9")}, [], "v0").validate()[0], UnknownEdge)
    assert isinstance(TwoComplex(["v0"], {"a": ("v0", "v0")}, [["b"]], "v0").validate()[0], UnknownEdge)


def test_presentations():
    assert circle().presentation.generators == ("a",) and circle().presentation.relators == ()
    assert wedge().presentation.generators == ("a", "b")
    T = torus().presentation
    assert T.generators == ("a", "b")
    assert T.relators == (parse_word("a b a^-1 b^-1"),)
    assert projective_plane().presentation.relators == ((("a", 1), ("a", 1)),)
    assert str(T) == "< a, b | a b a^-1 b^-1 >"


def test_triangle_tree_and_loop_word():
    X = triangle()
    assert X.tree_edges == {"e1", "e2"}
    assert X.presentation.generators == ("e3",)
    assert X.loop_word(["e1", "e3", "e2^-1"]) == (("e3", 1),)


def test_loop_word_examples_and_errors():
    X = circle()
    assert X.loop_word(["a"]) == (("a", 1),)
    assert X.loop_word(["a", "a^-1"]) == ()
    T = triangle()
    with pytest.raises(NotAtBasepoint):
        T.loop_word(["e3", "e2^-1", "e1"])
    with pytest.raises(NotClosed):
        T.loop_word(["e1", "e3"])
    with pytest.raises(NotClosed):
        T.loop_word(["e1", "e2"])


def test_generator_count_is_euler_rank_on_corpus():
    for make in CORPUS.values():
        X = make()
        assert len(X.presentation.generators) == len(X.edges) - len(X.vertices) + 1


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(1, 6))
    edges = {}
    for i in range(1, n):  # random spanning tree keeps the graph connected
        j = draw(st.integers(0, i - 1))
        edges[f"t{i}"] = (f"v{j}", f"v{i}") if draw(st.booleans()) else (f"v{i}", f"v{j}")
    extra = draw(st.integers(0, 5))
    for k in range(extra):
        s, t = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        edges[f"x{k}"] = (f"v{s}", f"v{t}")
    return TwoComplex([f"v{i}" for i in range(n)], edges, [], "v0")


@given(connected_graphs())
def test_euler_identity_random_graphs(X):
    assert X.validate() == []
    assert len(X.presentation.generators) == len(X.edges) - len(X.vertices) + 1


@given(connected_graphs(), st.data())
def test_loop_word_of_concatenation(X, data):
    gens = X.presentation.generators
    if not gens:
        return
    picks = data.draw(st.lists(st.sampled_from(gens), min_size=1, max_size=4))
    loops = [X.generator_loop(g) for g in picks]
    words = [X.loop_word(l) for l in loops]
    joined = tuple(x for l in loops for x in l)
    assert X.loop_word(joined) == free_reduce(tuple(x for w in words for x in w))
    for g, w in zip(picks, words):
        assert w == ((g, 1),)


def test_presentation_is_deterministic():
    a, b = cycle_graph(5), cycle_graph(5)
    assert a.presentation == b.presentation
    assert a.tree_words == b.tree_words
