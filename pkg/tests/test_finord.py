from itertools import product

import pytest
from hypothesis import given, strategies as st

from biprops.catprop import reversed_graph
from biprops.finord import (FinMap, _restrictions, FinOrdError, IndexedUnion, all_bijections, all_maps, block_permutation,
                            block_sum, check_graph_functoriality, compose, decompose, fmap, graph,
                            identity, lex_index, lex_pair, merge_family, restrict, split, terminal)


@st.composite
def maps(draw, max_dom=5, max_cod=4, cod=None, dom=None):
    J = draw(st.integers(1 if dom else 0, max_cod)) if cod is None else cod
    I = draw(st.integers(0, max_dom)) if dom is None else dom
    if J == 0:
        I = 0
    image = draw(st.lists(st.integers(0, J - 1), min_size=I, max_size=I)) if I else []
    return FinMap(I, J, tuple(image))


def graph_by_counting(f):
    """sigma(f)(i) = #{i' : f(i') < f(i)} + #{i' < i : f(i') = f(i)}."""
    return tuple(sum(1 for a in range(f.dom) if f.image[a] < f.image[i])
                 + sum(1 for a in range(i) if f.image[a] == f.image[i]) for i in range(f.dom))


def test_map_validation():
    with pytest.raises(FinOrdError):
        FinMap(2, 1, (0, 1))
    with pytest.raises(FinOrdError):
        FinMap(2, 2, (0,))
    assert fmap([0, 1, 0]) == FinMap(3, 2, (0, 1, 0))
    assert terminal(3).image == (0, 0, 0)
    assert fmap([0, 1, 0]).fiber(0) == (0, 2)


def test_counts_of_maps_and_bijections():
    assert [len(list(all_maps(I, J))) for I, J in ((0, 0), (0, 3), (2, 0), (3, 2))] == [1, 1, 0, 8]
    assert len(list(all_bijections(4))) == 24


def test_lex_order_matches_second_coordinate_first():
    for I, J in product(range(4), repeat=2):
        order = sorted(product(range(I), range(J)), key=lambda p: (p[1], p[0]))
        assert [lex_index(I, J, i, j) for i, j in order] == list(range(I * J))
        assert [lex_pair(I, J, k) for k in range(I * J)] == order


@given(maps())
def test_graph_matches_counting_oracle(f):
    s = graph(f)
    assert s.is_bijection
    assert s.image == graph_by_counting(f)


@given(maps())
def test_graph_of_monotone_map_is_identity(f):
    m = FinMap(f.dom, f.cod, tuple(sorted(f.image)))
    assert graph(m) == identity(m.dom)


def test_graph_examples():
    assert graph(fmap([1, 0, 1, 0])).image == (2, 0, 3, 1)
    assert graph(fmap([0, 1, 0])).image == (0, 2, 1)
    d = decompose(fmap([1, 0, 1], 2))
    assert d.fibers == ((1,), (0, 2)) and d.graph.image == (1, 0, 2)


@given(st.data())
def test_composition_is_associative_and_unital(data):
    f = data.draw(maps())
    g = data.draw(maps(cod=None, dom=f.cod)) if f.cod else identity(0)
    h = data.draw(maps(dom=g.cod)) if g.cod else identity(0)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert compose(identity(f.dom), f) == f == compose(f, identity(f.cod))


@given(st.data())
def test_restriction_tables(data):
    phi = data.draw(maps())
    psi = data.draw(maps(dom=phi.cod)) if phi.cod else identity(0)
    for k in range(psi.cod):
        r = restrict(phi, psi, k)
        assert r.cod_table == psi.fiber(k)
        assert all(psi.image[phi.image[i]] == k for i in r.dom_table)
        assert list(r.dom_table) == sorted(r.dom_table)
        for a, i in enumerate(r.dom_table):
            assert r.cod_table[r.map.image[a]] == phi.image[i]
    assert sum(r.map.dom for r in (restrict(phi, psi, k) for k in range(psi.cod))) == phi.dom


@given(st.lists(st.integers(0, 3), min_size=0, max_size=4), st.data())
def test_merge_and_split_are_inverse(sizes_S, data):
    L = data.draw(st.integers(1, 3))
    f = data.draw(maps(dom=len(sizes_S), cod=L))
    sizes_Q = data.draw(st.lists(st.integers(0, 3), min_size=0, max_size=4))
    g = data.draw(maps(dom=len(sizes_Q), cod=L))
    S, Q = IndexedUnion(tuple(sizes_S)), IndexedUnion(tuple(sizes_Q))
    family = []
    for l in range(L):
        a = len(S.run(f.fiber(l)))
        b = len(Q.run(g.fiber(l)))
        if a and not b:
            return
        family.append(data.draw(maps(dom=a, cod=b)) if b else FinMap(0, 0, ()))
    phi = merge_family(family, f, g, S, Q)
    assert split(phi, f, g, S, Q) == tuple(family)


def test_split_rejects_map_crossing_fibres():
    f = g = fmap([0, 1])
    S = Q = IndexedUnion((1, 1))
    with pytest.raises(FinOrdError):
        split(fmap([1, 0]), f, g, S, Q)


def test_block_permutation_moves_blocks():
    assert block_permutation([2, 1], fmap([1, 0])).image == (1, 2, 0)
    assert block_sum([fmap([0]), fmap([1, 0])]).image == (0, 2, 1)


def test_graph_functoriality_small():
    for I, K, L in product(range(4), repeat=3):
        for f in all_maps(I, K):
            for h in all_maps(K, L):
                assert check_graph_functoriality(f, h)


def test_reversed_graph_breaks_functoriality():
    bad = [(f, h) for I, K, L in product(range(4), repeat=3)
           for f in all_maps(I, K) for h in all_maps(K, L)
           if not check_graph_functoriality(f, h, reversed_graph)]
    assert bad
    assert (fmap([0, 1, 1]), fmap([0, 0])) in bad


def test_one_pass_restrictions_match_restrict():
    for I, K, L in product(range(4), repeat=3):
        for f in all_maps(I, K):
            for h in all_maps(K, L):
                assert _restrictions(f, h) == [restrict(f, h, l).map for l in range(L)]
