import pytest
from hypothesis import given, strategies as st

from flatbundles.basespace import circle, torus, triangle, wedge
from flatbundles.errors import CapExceeded, CtxMismatch, FaceProductNotIdentity, RelatorViolation, ShapeMismatch, SpaceMismatch
from flatbundles.exactfield import field_make
from flatbundles.localsystem import (
    DISTINCT,
    INCONCLUSIVE,
    ISOMORPHIC,
    CechCocycle,
    LocalSystem,
    direct_sum,
    dual,
    from_cocycle,
    global_sections,
    hom,
    iso_test,
    is_trivial,
    max_trivial_sub,
    monodromy_image,
    tensor,
    to_cocycle,
)
from flatbundles.matrixgroup import Matrix

from conftest import random_invertible, rng_for

Q = field_make("Q")
F2 = field_make("F(2)")
F5 = field_make("F(5)")


def test_relators_checked():
    with pytest.raises(RelatorViolation):
        LocalSystem(torus(), Q, 2, {"a": [[1, 1], [0, 1]], "b": [[1, 0], [1, 1]]})
    E = LocalSystem(torus(), Q, 2, {"a": [[1, 1], [0, 1]], "b": [[1, 5], [0, 1]]})
    assert E.rank == 2
    with pytest.raises(ShapeMismatch):
        LocalSystem(circle(), Q, 2, {})


def test_from_cocycle_examples():
    E = from_cocycle(CechCocycle(circle(), F5, 1, {"a": [[2]]}))
    assert E.rep["a"] == Matrix.of(F5, [[2]])
    X = triangle()
    A = Matrix.of(Q, [[1, 2], [0, 1]])
    B = Matrix.of(Q, [[0, 1], [-1, 0]])
    labels = {"e1": A, "e2": A.inverse() * B, "e3": Matrix.identity(Q, 2)}
    E = from_cocycle(CechCocycle(X, Q, 2, labels))
    # based loop of e3 is e1 e3 e2^-1
    assert E.rep["e3"] == labels["e1"] * labels["e3"] * labels["e2"].inverse()
    assert E.holonomy(["e1", "e3", "e2^-1"]) == E.rep["e3"]
    ident = {e: Matrix.identity(Q, 2) for e in X.edges}
    assert is_trivial(from_cocycle(CechCocycle(X, Q, 2, ident)))


def test_cocycle_face_condition():
    with pytest.raises(FaceProductNotIdentity):
        CechCocycle(torus(), Q, 2, {"a": [[1, 1], [0, 1]], "b": [[1, 0], [1, 1]]})
    assert CechCocycle(torus(), Q, 1, {"a": [[2]], "b": [[3]]}).rank == 1


@given(st.integers(0, 10**6))
def test_cocycle_roundtrip(seed):
    rng = rng_for(seed)
    E = LocalSystem(wedge(), F5, 2, {"a": random_invertible(F5, 2, rng), "b": random_invertible(F5, 2, rng)})
    assert from_cocycle(to_cocycle(E)) == E
    c = to_cocycle(E)
    assert c.labels["a"] == E.rep["a"] and c.labels["b"] == E.rep["b"]


def test_triviality_examples():
    assert is_trivial(LocalSystem.trivial(circle(), Q, 3))
    assert not is_trivial(LocalSystem(circle(), F5, 1, {"a": [[2]]}))
    assert is_trivial(LocalSystem(torus(), Q, 1, {"a": [[1]], "b": [[1]]}))


def test_tensor_operations():
    E = LocalSystem(circle(), F5, 1, {"a": [[2]]})
    assert dual(E).rep["a"] == Matrix.of(F5, [[3]])
    assert is_trivial(tensor(E, dual(E)))
    assert is_trivial(hom(E, E))
    E2 = LocalSystem(circle(), Q, 2, {"a": [[0, -1], [1, 0]]})
    E3 = LocalSystem(circle(), Q, 3, {"a": [[0, 1, 0], [0, 0, 1], [1, 0, 0]]})
    s = direct_sum(E2, E3)
    assert s.rank == 5 and s.rep["a"][0, 1] == -1 and s.rep["a"][2, 3] == 1
    with pytest.raises(CtxMismatch):
        direct_sum(E, E2)
    with pytest.raises(SpaceMismatch):
        direct_sum(E2, LocalSystem.trivial(wedge(), Q, 1))


@given(st.integers(0, 10**6))
def test_tensor_properties(seed):
    rng = rng_for(seed)
    E = LocalSystem(wedge(), Q, 2, {g: random_invertible(Q, 2, rng) for g in "ab"})
    F = LocalSystem(wedge(), Q, 3, {g: random_invertible(Q, 3, rng) for g in "ab"})
    assert dual(dual(E)) == E
    assert direct_sum(E, F).rank == 5 and tensor(E, F).rank == 6
    for g in "ab":
        d = tensor(E, F).rep[g].det()
        assert d == E.rep[g].det() ** 3 * F.rep[g].det() ** 2


def test_monodromy_examples():
    assert monodromy_image(LocalSystem(circle(), Q, 2, {"a": [[0, -1], [1, 0]]})).order == 4
    assert monodromy_image(LocalSystem(circle(), F2, 2, {"a": [[0, 1], [1, 1]]})).order == 3
    with pytest.raises(CapExceeded):
        monodromy_image(LocalSystem(circle(), Q, 2, {"a": [[1, 1], [0, 1]]}))


def test_iso_examples():
    E = LocalSystem(circle(), Q, 2, {"a": [[1, 1], [0, 1]]})
    F = LocalSystem(circle(), Q, 2, {"a": [[1, 2], [0, 1]]})
    res = iso_test(E, F)
    assert res.status == ISOMORPHIC
    T = res.witness
    assert T * E.rep["a"] * T.inverse() == F.rep["a"]
    assert iso_test(E, LocalSystem.trivial(circle(), Q, 1)).status == DISTINCT
    same = iso_test(E, E)
    assert same.status == ISOMORPHIC and same.witness.is_identity()
    assert iso_test(E, LocalSystem.trivial(circle(), Q, 2)).status == DISTINCT


@given(st.sampled_from(["Q", "F(3)", "F(2, x^2+x+1)"]), st.integers(0, 10**6))
def test_iso_on_random_conjugates(spec, seed):
    k = field_make(spec)
    rng = rng_for(seed)
    E = LocalSystem(wedge(), k, 3, {g: random_invertible(k, 3, rng) for g in "ab"})
    T = random_invertible(k, 3, rng)
    F = LocalSystem(wedge(), k, 3, {g: T * m * T.inverse() for g, m in E.rep.items()})
    res = iso_test(E, F, seed=seed)
    assert res.status in (ISOMORPHIC, INCONCLUSIVE)
    if k.is_finite:
        assert res.status == ISOMORPHIC
    if res.status == ISOMORPHIC:
        W = res.witness
        assert all(W * E.rep[g] * W.inverse() == F.rep[g] for g in "ab")


def test_global_sections_examples():
    assert len(global_sections(LocalSystem.trivial(circle(), Q, 3))) == 3
    basis = global_sections(LocalSystem(circle(), Q, 2, {"a": [[1, 1], [0, 1]]}))
    assert len(basis) == 1 and basis[0][1] == 0 and basis[0][0] != 0
    assert global_sections(LocalSystem(circle(), F5, 1, {"a": [[2]]})) == []


def test_max_trivial_sub_examples():
    assert max_trivial_sub(LocalSystem.trivial(torus(), Q, 4)).rank == 4
    sub = max_trivial_sub(LocalSystem(circle(), Q, 2, {"a": [[1, 1], [0, 1]]}))
    assert sub.rank == 1 and is_trivial(sub.system)
    assert max_trivial_sub(LocalSystem(circle(), F5, 1, {"a": [[2]]})).rank == 0
