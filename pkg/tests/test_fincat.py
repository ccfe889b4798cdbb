from itertools import product

import pytest
from hypothesis import given, strategies as st

from biprops.fincat import (CapExceeded, CoproductCat, FinCatError, FinFunctor, FinNatTrans, FunctorCat, Prod,
                            ProductCat, Tagged, arrow_category, build_category, category_from_dict,
                            category_to_dict, cyclic_group_category, discrete, enumerate_functors, equal_nats,
                            functor_violation, horizontal, identity_functor, identity_nat, invert,
                            naturality_violation, normalize, spread, vertical, whisker_left, whisker_right)

POOL = [discrete(1, "1"), discrete(2, "D2"), arrow_category(), cyclic_group_category(2, "Z2"),
        cyclic_group_category(3, "Z3")]
cats = st.sampled_from(POOL)


def brute_functors(C, D):
    """Every assignment of objects and morphisms, filtered by the functor laws."""
    c_objs, c_mors = list(C.objects()), list(C.morphisms())
    out = 0
    for objs in product(list(D.objects()), repeat=len(c_objs)):
        for mors in product(list(D.morphisms()), repeat=len(c_mors)):
            F = FinFunctor(C, D, lambda x, o=objs: o[C.object_rank(x)], lambda u, m=mors: m[C.morphism_rank(u)])
            if functor_violation(F) is None:
                out += 1
    return out


@given(st.integers(0, 50), st.one_of(st.none(), st.integers(1, 12)))
def test_spread_is_sorted_distinct_and_bounded(n, budget):
    r = spread(n, budget)
    assert r == sorted(set(r))
    assert all(0 <= k < n for k in r)
    assert len(r) == (n if budget is None else min(n, budget))


@given(st.lists(cats, min_size=0, max_size=3))
def test_product_codec_is_bijective(factors):
    P = ProductCat(factors)
    assert P.n_objects == len(list(P.objects()))
    for r in range(P.n_objects):
        assert P.object_rank(P.object_at(r)) == r
    for r in range(P.n_morphisms):
        u = P.morphism_at(r)
        assert P.morphism_rank(u) == r
        assert P.compose(P.identity(P.src(u)), u) == u


@given(st.lists(cats, min_size=1, max_size=3))
def test_coproduct_codec_is_bijective(summands):
    tags = [f"t{k}" for k in range(len(summands))]
    C = CoproductCat(tags, summands)
    assert C.n_objects == sum(c.n_objects for c in summands)
    for r in range(C.n_objects):
        x = C.object_at(r)
        assert isinstance(x, Tagged) and C.object_rank(x) == r
    for r in range(C.n_morphisms):
        assert C.morphism_rank(C.morphism_at(r)) == r


def test_normalize_flattens_brackets():
    assert normalize(Prod([Prod([1, 2]), 3])) == normalize(Prod([1, Prod([2, 3])])) == Prod([1, 2, 3])


def test_build_category_rejects_bad_tables():
    with pytest.raises(FinCatError):
        # the composable pair (2, 1) is missing
        build_category(2, [(0, 0, 0), (1, 1, 1), (2, 0, 1)], [(0, 0, 0), (1, 1, 1), (0, 2, 2)])
    with pytest.raises(FinCatError):
        # a composite naming an unknown morphism
        build_category(1, [(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2)])
    with pytest.raises(FinCatError):
        # a composite with the wrong endpoints
        build_category(2, [(0, 0, 0), (1, 1, 1), (2, 0, 1)], [(0, 0, 0), (1, 1, 1), (0, 2, 2), (2, 1, 0)])
    with pytest.raises(FinCatError):
        # (a.a).b = b.b = a but a.(a.b) = a.a = b
        mors = [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
        table = [(0, x, x) for x in range(3)] + [(x, 0, x) for x in (1, 2)]
        table += [(1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 1)]
        build_category(1, mors, table)
    Z2 = build_category(1, [(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
    assert Z2.inverse(1) == 1


def test_category_roundtrip():
    for C in POOL:
        d = category_to_dict(C)
        D = category_from_dict(d)
        assert category_to_dict(D) == d


@pytest.mark.parametrize("C,D", [(C, D) for C in POOL[:4] for D in POOL[:4]])
def test_functor_enumeration_matches_brute_force(C, D):
    assert len(enumerate_functors(C, D)) == brute_functors(C, D)


def test_functor_category_counts():
    A = arrow_category()
    F = FunctorCat(A, A)
    # monotone self-maps of a two-element chain, and pointwise-ordered pairs of them
    assert (F.n_objects, F.n_morphisms) == (3, 6)
    G = FunctorCat(cyclic_group_category(2), cyclic_group_category(2))
    assert G.n_objects == 2
    with pytest.raises(CapExceeded):
        FunctorCat(discrete(2), arrow_category(), cap=3)


def test_whiskering_and_interchange():
    A = arrow_category()
    FC = FunctorCat(A, A)
    Fs = [FinFunctor(A, A, lambda x, F=F: F.obj[A.object_rank(x)], lambda u, F=F: F.mor[A.morphism_rank(u)])
          for F in FC.objects()]
    t = {}
    for u in FC.morphisms():
        i, j = FC.object_rank(u.src), FC.object_rank(u.dst)
        t[(i, j)] = FinNatTrans(Fs[i], Fs[j], lambda x, u=u: u.comp[A.object_rank(x)])
    for (i, j), s in t.items():
        assert naturality_violation(s) is None
        for (k, m), r in t.items():
            h = horizontal(s, r)
            assert naturality_violation(h) is None
            assert equal_nats(h, vertical(whisker_right(s, Fs[k]), whisker_left(Fs[j], r)))
    Id = identity_functor(A)
    idn = identity_nat(Id)
    assert equal_nats(vertical(idn, idn), idn)
    assert equal_nats(vertical(idn, invert(idn)), idn)
