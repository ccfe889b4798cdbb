import copy
from itertools import product

import pytest
from hypothesis import given, strategies as st

from biprops.fincat import CapExceeded
from biprops.finord import FinMap, all_maps, compose, identity, terminal
from biprops.multicat import (Fn, MulticatError, StrictifyError, compose_multifunctors, corrupt_multifunctor,
                              finite_set_multicat, identity_multifunctor, multicat_from_tables,
                              relabel_multifunctor, reverse_multifunctor, table_document, terminal_inclusion,
                              terminal_multicat, twist_comparison, validate_multicat, validate_multifunctor)

from conftest import SMALL, TINY

SIZES = {"X": 2, "Y": 3}
MIXED = finite_set_multicat(SIZES, max_arity=3, name="mixed")


def as_dict(fn: Fn, sizes) -> dict:
    """Argument tuple -> value, decoding ranks with the first argument fastest."""
    out = {}
    for r, v in enumerate(fn.table):
        args = []
        for c in fn.dom:
            args.append(r % sizes[c])
            r //= sizes[c]
        out[tuple(args)] = v
    return out


def substitute(f: FinMap, xs, y, sizes) -> dict:
    """mu_f computed pointwise: feed the arguments of fibre j to x_j, then the results to y."""
    X = [None] * f.dom
    pos = [0] * f.cod
    for i in range(f.dom):
        j = f.image[i]
        X[i] = xs[j].dom[pos[j]]
        pos[j] += 1
    dx = [as_dict(x, sizes) for x in xs]
    dy = as_dict(y, sizes)
    out = {}
    for args in product(*(range(sizes[c]) for c in X)):
        mids = tuple(dx[j][tuple(args[i] for i in f.fiber(j))] for j in range(f.cod))
        out[args] = dy[mids]
    return out


@st.composite
def substitution_cases(draw, C=MIXED):
    cols = list(C.colours)
    J = draw(st.integers(0, 2))
    I = draw(st.integers(0, 3 - 0))
    if J == 0:
        I = 0
    f = FinMap(I, J, tuple(draw(st.lists(st.integers(0, J - 1), min_size=I, max_size=I)))) if J else FinMap(0, 0, ())
    X = tuple(draw(st.sampled_from(cols)) for _ in range(I))
    Y = tuple(draw(st.sampled_from(cols)) for _ in range(J))
    z = draw(st.sampled_from(cols))
    xs = []
    for j in range(J):
        H = C.hom(tuple(X[i] for i in f.fiber(j)), Y[j])
        xs.append(H.object_at(draw(st.integers(0, H.n_objects - 1))))
    H = C.hom(Y, z)
    y = H.object_at(draw(st.integers(0, H.n_objects - 1)))
    return f, tuple(xs), y


@given(substitution_cases())
def test_mu_matches_pointwise_substitution(case):
    f, xs, y = case
    got = MIXED.mu(f, xs, y)
    assert as_dict(got, SIZES) == substitute(f, xs, y, SIZES)


@given(substitution_cases())
def test_units_are_strict(case):
    _, _, y = case
    n = len(y.dom)
    assert MIXED.mu(identity(n), MIXED.units(y.dom), y) == y
    assert MIXED.mu(terminal(n), (y,), MIXED.unit(y.cod)) == y


def test_hom_counts_and_caps():
    assert MIXED.hom(("X", "Y"), "X").n_objects == 2 ** 6
    assert MIXED.hom((), "Y").n_objects == 3
    with pytest.raises(CapExceeded):
        MIXED.hom(("X",) * 4, "X")
    with pytest.raises(MulticatError):
        MIXED.hom(("Z",), "X")


def test_nand_composite():
    C = finite_set_multicat({"X": 2}, max_arity=3)
    nand = C.function(("X", "X"), "X", lambda a, b: 1 - (a & b))
    neg = C.function(("X",), "X", lambda a: 1 - a)
    # nand(not a, not b) is a or b
    assert C.mu(identity(2), (neg, neg), nand) == C.function(("X", "X"), "X", lambda a, b: a | b)
    # nand along the codiagonal: a -> nand(a, a) is not
    assert C.mu(terminal(1), (C.unit("X"),), neg) == neg
    dup = C.mu(FinMap(2, 1, (0, 0)), (C.function(("X", "X"), "X", lambda a, b: a),), neg)
    assert dup == C.function(("X", "X"), "X", lambda a, b: 1 - a)


@pytest.mark.parametrize("C", [terminal_multicat(), finite_set_multicat(2), MIXED,
                               finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")],
                         ids=["terminal", "finite-set", "mixed", "twisted"])
def test_validators_pass(C):
    caps = TINY if C is MIXED else SMALL
    rep = validate_multicat(C, caps)
    assert rep.passed, rep.text()
    assert rep["nu pentagon"].instances > 0


def test_twisted_fixture_is_not_strict():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph")
    assert not W.strict
    grades = {W.epsilon(f, g) for I in range(3) for J in range(3) for K in range(3)
              for f in all_maps(I, J) for g in all_maps(J, K)}
    assert grades - {0}
    assert W.theta(W.unit("X")).s != 0


def test_nu_defect_breaks_pentagon():
    f, g = FinMap(2, 2, (0, 1)), FinMap(2, 1, (0, 0))
    C = finite_set_multicat({"X": 2}, grading=2, nu_defects={(f, g): 1}, name="corrupt")
    rep = validate_multicat(C, TINY)
    assert not rep["nu pentagon"].passed
    assert "2->2[0, 1]" in rep["nu pentagon"].witness


def test_tables_roundtrip_and_strictify():
    C = finite_set_multicat({"X": 2}, max_arity=2)
    T = multicat_from_tables(table_document(C, 2), SMALL)
    assert validate_multicat(T, SMALL).passed
    # composites read from the tables agree with the generator, compared by rank
    f = FinMap(2, 2, (1, 0))
    for r0, r1, ry in product(range(4), range(4), range(0, 16, 3)):
        xs = (C.hom(("X",), "X").object_at(r0), C.hom(("X",), "X").object_at(r1))
        y = C.hom(("X", "X"), "X").object_at(ry)
        want = C.hom(("X", "X"), "X").object_rank(C.mu(f, xs, y))
        txs = (T.hom(("X",), "X").object_at(r0), T.hom(("X",), "X").object_at(r1))
        got = T.mu(f, txs, T.hom(("X", "X"), "X").object_at(ry))
        assert T.hom(("X", "X"), "X").object_rank(got) == want


def test_strictify_rejects_tampered_tables():
    doc = table_document(finite_set_multicat({"X": 2}, max_arity=2), 2)
    bad = copy.deepcopy(doc)
    # change one composite: nand(x, y) along the identity now returns a wrong function
    row = next(r for r in bad["mu"] if r["map"] == [0, 1] and r["cod"] == 2)
    row["result"] = (row["result"] + 1) % 16
    with pytest.raises(StrictifyError):
        multicat_from_tables(bad)
    weak = dict(doc, strict=False)
    with pytest.raises(MulticatError):
        multicat_from_tables(weak)


# -- multifunctors ---------------------------------------------------------------------------

def test_strict_multifunctors_validate():
    C = finite_set_multicat({"X": 2}, grading=3, name="graded")
    D = finite_set_multicat({"X": 2, "P": 1}, grading=3, name="with point")
    T = terminal_multicat()
    T3 = finite_set_multicat({"*": 1}, grading=3, name="terminal3")
    for F in (identity_multifunctor(C), reverse_multifunctor(C), terminal_inclusion(T3, D, "P"),
              relabel_multifunctor(finite_set_multicat({"Z": 2}, grading=3), C, {"Z": "X"})):
        rep = validate_multifunctor(F, TINY)
        assert rep.passed, F.name + "\n" + rep.text()
    with pytest.raises(MulticatError):
        terminal_inclusion(T, D, "X")


def test_twist_comparison_and_composite_validate():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")
    S = finite_set_multicat({"X": 2}, grading=3, name="graded")
    U = twist_comparison(W, S)
    assert validate_multifunctor(U, TINY).passed
    K = compose_multifunctors(U, reverse_multifunctor(S))
    assert validate_multifunctor(K, TINY).passed


def test_corrupted_multifunctor_fails_coherence():
    W = finite_set_multicat({"X": 2}, grading=3, twist="graph", name="twisted")
    S = finite_set_multicat({"X": 2}, grading=3, name="graded")
    bad = corrupt_multifunctor(twist_comparison(W, S), compose(identity(2), terminal(2)))
    rep = validate_multifunctor(bad, TINY)
    assert not rep.passed
    assert "composition coherence" in rep.failures()
