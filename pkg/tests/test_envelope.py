from itertools import product
from math import prod

import pytest
from hypothesis import given, strategies as st

from biprops.biprop import (check_bicategory, check_biprop, compose_morphisms, identity_morphism,
                            morphism_difference, permute_blocks, unit_insertion, validate_morphism)
from biprops.envelope import (EnvelopeBiprop, EnvelopeError, build_envelope, check_functoriality, env_coherence,
                              env_compose, env_hom, env_hom_count, env_morphism, env_tensor, env_unit)
from biprops.fincat import CapExceeded, Tagged
from biprops.finord import FinMap, all_bijections, identity
from biprops.multicat import (finite_set_multicat, identity_multifunctor, reverse_multifunctor,
                              twist_comparison)

from conftest import TINY

N = 2


def hom_count_oracle(I, J, n=N):
    """Sum over phi: I -> J of prod_j n ** (n ** |phi^-1 j|), by direct counting."""
    total = 0
    for image in product(range(J), repeat=I):
        total += prod(n ** (n ** image.count(j)) for j in range(J))
    return total


def as_function(cell):
    """A 1-cell of the finite-set envelope as a tuple-valued function of its inputs."""
    phi, comps = cell.tag, cell.value

    def run(args):
        out = []
        for j, c in enumerate(comps):
            r, scale = 0, 1
            for i in phi.fiber(j):
                r += args[i] * scale
                scale *= N
            out.append(c.table[r])
        return tuple(out)
    return run


@st.composite
def cells(draw, env, I, J):
    H = env.hom(("X",) * I, ("X",) * J)
    return H.object_at(draw(st.integers(0, H.n_objects - 1)))


@pytest.mark.parametrize("I,J", [(I, J) for I in range(4) for J in range(4)])
def test_hom_cardinality(fs2, I, J):
    A, B = ("X",) * I, ("X",) * J
    want = hom_count_oracle(I, J)
    assert env_hom_count(fs2, A, B) == want
    assert env_hom(fs2, A, B).n_objects == want


def test_frozen_hom_sizes(fs2):
    # values from hom_count_oracle, frozen
    assert env_hom(fs2, ("X", "X"), ("X", "X")).n_objects == 96
    assert env_hom(fs2, ("X",), ("X", "X")).n_objects == 16
    assert env_hom(fs2, ("X", "X"), ()).n_objects == 0
    assert env_hom(fs2, (), ()).n_objects == 1


def test_hom_beyond_arity_cap(fs2):
    with pytest.raises(CapExceeded):
        env_hom(fs2, ("X",) * 4, ("X",))


@given(st.data())
def test_composition_is_function_composition(data):
    env = ENV
    I, J, K = (data.draw(st.integers(1, 3)) for _ in range(3))
    x = data.draw(cells(env, I, J))
    y = data.draw(cells(env, J, K))
    xy = env.m(("X",) * I, ("X",) * J, ("X",) * K, x, y)
    fx, fy, fxy = as_function(x), as_function(y), as_function(xy)
    for args in product(range(N), repeat=I):
        assert fxy(args) == fy(fx(args))


@given(st.data())
def test_tensor_over_identity_cospan_is_juxtaposition(data):
    env = ENV
    sizes = [(data.draw(st.integers(0, 2)), data.draw(st.integers(1, 2))) for _ in range(2)]
    xs = tuple(data.draw(cells(env, a, b)) for a, b in sizes)
    As = tuple(("X",) * a for a, _ in sizes)
    Bs = tuple(("X",) * b for _, b in sizes)
    t = env_tensor(identity(2), identity(2), As, Bs, xs)
    ft = as_function(t)
    for args in product(range(N), repeat=sum(a for a, _ in sizes)):
        a0 = sizes[0][0]
        assert ft(args) == as_function(xs[0])(args[:a0]) + as_function(xs[1])(args[a0:])


def test_units_are_neutral(fs2):
    for I in range(3):
        for J in range(3):
            H = env_hom(fs2, ("X",) * I, ("X",) * J)
            for x in H.sample_objects(6):
                assert env_compose(fs2, env_unit(fs2, ("X",) * I), x) == x
                assert env_compose(fs2, x, env_unit(fs2, ("X",) * J)) == x


def test_coherence_cells_of_strict_family_are_identities(fs2, env_fs2):
    a, l, r = env_coherence(fs2)
    X, XX = ("X",), ("X", "X")
    for x in env_hom(fs2, XX, X).sample_objects(4):
        for y in env_hom(fs2, X, XX).sample_objects(4):
            for z in env_hom(fs2, XX, X).sample_objects(4):
                xyz = env_fs2.m(XX, XX, X, env_fs2.m(XX, X, XX, x, y), z)
                assert a(x, y, z) == env_fs2.hom(XX, X).identity(xyz)
        assert l(x) == r(x) == env_fs2.hom(XX, X).identity(x)


def test_unit_insertion_is_a_permutation_cell(env_fs2):
    for n in range(4):
        Ys = (("X",),) * n
        for beta in all_bijections(n):
            e = unit_insertion(env_fs2, beta, Ys)
            assert isinstance(e, Tagged) and e.tag == beta
            assert all(c == env_fs2.C.unit("X") for c in e.value)
            assert permute_blocks(beta, Ys) == Ys
    assert unit_insertion(env_fs2, identity(2), (("X",), ("X",))) == env_fs2.unit(("X", "X"))


def test_envelope_suites_pass_on_twisted(env_twisted):
    rep = check_biprop(env_twisted, TINY)
    assert rep.passed, rep.text()
    assert not env_twisted.C.strict


def test_build_envelope_rejects_corrupted_multicategory():
    f, g = FinMap(2, 2, (0, 1)), FinMap(2, 1, (0, 0))
    C = finite_set_multicat({"X": 2}, grading=2, nu_defects={(f, g): 1}, name="corrupt")
    with pytest.raises(EnvelopeError, match="nu pentagon"):
        build_envelope(C, TINY)
    rep = check_bicategory(EnvelopeBiprop(C), TINY)
    assert rep.failures() == ["pentagon"]


def test_envelope_of_multifunctor_is_a_morphism():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")
    S = finite_set_multicat({"X": 2}, grading=3, name="graded")
    rep = validate_morphism(env_morphism(twist_comparison(W, S)), TINY)
    assert rep.passed, rep.text()


def test_envelope_functor_laws():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")
    S = finite_set_multicat({"X": 2}, grading=3, name="graded")
    rep = check_functoriality(twist_comparison(W, S), reverse_multifunctor(S), TINY)
    assert rep.passed, rep.text()
    P = EnvelopeBiprop(S)
    assert morphism_difference(env_morphism(identity_multifunctor(S), P, P), identity_morphism(P), TINY) is None


def test_morphism_algebra():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")
    S = finite_set_multicat({"X": 2}, grading=3, name="graded")
    P, Q = EnvelopeBiprop(W), EnvelopeBiprop(S)
    F = env_morphism(twist_comparison(W, S), P, Q)
    G = env_morphism(reverse_multifunctor(S), Q, Q)
    H = env_morphism(reverse_multifunctor(S), Q, Q)
    left = compose_morphisms(compose_morphisms(F, G), H)
    right = compose_morphisms(F, compose_morphisms(G, H))
    assert morphism_difference(left, right, TINY) is None
    assert morphism_difference(compose_morphisms(identity_morphism(P), F), F, TINY) is None
    assert morphism_difference(compose_morphisms(F, identity_morphism(Q)), F, TINY) is None
    # reversing twice gives back the identity
    assert morphism_difference(compose_morphisms(G, H), identity_morphism(Q), TINY) is None
    assert morphism_difference(G, identity_morphism(Q), TINY) is not None


ENV = EnvelopeBiprop(finite_set_multicat({"X": 2}, max_arity=3))
