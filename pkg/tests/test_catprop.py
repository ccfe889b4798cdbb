import pytest

from biprops.catprop import (CatpropBiprop, CatRegistry, RegistryError, check_catprop, default_registry,
                             graph_identity_holds, reindex_tensor, reversed_graph, strictness_holds)
from biprops.configs import Caps, block_families, concat
from biprops.fincat import CapExceeded, Prod, arrow_category, equal_functors, identity_functor, product
from biprops.finord import FinMap, all_maps, identity, terminal

D = ("D2",)


@pytest.fixture(scope="module")
def bp():
    return CatpropBiprop(default_registry())


def test_hom_sizes(bp):
    # functors between discrete categories are functions on objects
    assert bp.hom(D, D).n_objects == 4
    assert bp.hom(D * 2, D * 2).n_objects == 256
    assert bp.hom((), D).n_objects == 2
    assert bp.hom(("1",), D * 2).n_objects == 4


def test_registry_caps():
    with pytest.raises(RegistryError):
        CatRegistry({"C": product([arrow_category(), arrow_category()])})
    assert CatRegistry({"A": arrow_category()}).colours == ("A",)


def test_functor_cap(bp):
    with pytest.raises(CapExceeded):
        bp.hom(D * 3, D * 3)


def test_tensor_over_point_is_identity(bp):
    for n in range(3):
        A = D * n
        blocks = (D,) * n
        for F in bp.hom(A, A).objects():
            G = reindex_tensor(bp, terminal(n), terminal(n), blocks, blocks, (F,))
            assert all(G.obj(v) == F.obj[i] for i, v in enumerate(bp.prod(A).objects()))
            assert all(G.mor(u) == F.mor[i] for i, u in enumerate(bp.prod(A).morphisms()))


def test_identity_functors_give_identity(bp):
    for L in range(4):
        blocks = (D,) * L
        G = reindex_tensor(bp, identity(L), identity(L), blocks, blocks, tuple(bp.unit(D) for _ in range(L)))
        assert equal_functors(G, identity_functor(bp.prod(concat(blocks))))


def test_graph_permutes_coordinates(bp):
    f, g = FinMap(3, 2, (0, 1, 0)), FinMap(3, 2, (0, 0, 1))
    blocks = (D,) * 3
    G = reindex_tensor(bp, f, g, blocks, blocks, (bp.unit(D * 2), bp.unit(D)))
    for v in bp.prod(D * 3).objects():
        assert G.obj(v) == Prod((v[0], v[2], v[1]))


def _configs(L_max=2, M_max=2):
    for L in range(L_max + 1):
        for M in range(M_max + 1):
            for h in all_maps(L, M):
                for I in range(3):
                    for f in all_maps(I, L):
                        for J in range(3):
                            for g in all_maps(J, L):
                                yield f, g, h


def test_strictness_iff_graph_identity(bp):
    # for the true graph both sides hold on every configuration
    n = 0
    for f, g, h in _configs():
        for As in block_families(("D2",), f.dom, 2):
            for Bs in block_families(("D2",), g.dom, 2):
                if len(concat(As)) > 2 or len(concat(Bs)) > 2:
                    continue
                s = strictness_holds(bp, f, g, h, As, Bs, budget=4)
                assert s == graph_identity_holds(f, g, h) == True  # noqa: E712
                n += 1
    assert n > 100


def test_reversed_graph_breaks_both(bp):
    bad = CatpropBiprop(default_registry(("D2",)), graph_fn=reversed_graph)
    broken = graph_fails = 0
    for f, g, h in _configs():
        As, Bs = (D,) * f.dom, (D,) * g.dom
        if f.dom > 2 or g.dom > 2:
            continue
        broken += not strictness_holds(bad, f, g, h, As, Bs, budget=4)
        graph_fails += not graph_identity_holds(f, g, h, reversed_graph)
    assert broken and graph_fails


def test_terminal_registry_passes():
    rep = check_catprop(default_registry(("1",)), Caps(2, 2, 2, max_letters=3))
    assert rep.passed, rep.text()
    assert {"associator is identity", "unitors are identities", "tensor of identities is identity"} <= set(rep.laws)


def test_reversed_graph_is_detected():
    rep = check_catprop(default_registry(("D2",)), graph_fn=reversed_graph)
    assert "tensor strict associativity" in rep.failures()
