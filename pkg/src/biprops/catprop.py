"""The biprop of finite categories: homs are functor categories between products.

A 1-cell from the word ``(C_1, ..., C_n)`` to ``(D_1, ..., D_m)`` is a functor
``prod C_s -> prod D_q``; composition is composition of functors, and the
associator and unitors are identities.  The tensor along ``I -f-> L <-g- J``
regroups the source factors by the graph of ``f``, applies the functors
``F_l`` side by side, and scatters the results by the inverse graph of ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .biprop import (Biprop, BipropError, _family_cat, _leg_witness, chains, check_bicategory,
                     check_derived_identities, check_strictness, check_tensor_axioms, word_tuples)
from .configs import Caps, concat, fibre_blocks, fmt_map, fmt_word
from .fincat import (TERMINAL, FinCat, FinFunctor, FunctorCat, FunctorValue, NatValue, Prod, ProductCat,
                     apply_functor_value, discrete)
from .finord import FinMap, IndexedUnion, check_graph_functoriality, graph
from .report import Report, merge_reports


class RegistryError(BipropError):
    pass


@dataclass
class CatRegistry:
    """Named finite categories usable as colours, under size caps."""
    cats: dict
    max_objects: int = 2
    max_morphisms: int = 4

    def __post_init__(self):
        for name, C in self.cats.items():
            if C.n_objects > self.max_objects or C.n_morphisms > self.max_morphisms:
                raise RegistryError(f"category {name!r} exceeds the registry caps "
                                    f"({self.max_objects} objects, {self.max_morphisms} morphisms)")

    @property
    def colours(self) -> tuple:
        return tuple(self.cats)

    def __getitem__(self, name) -> FinCat:
        return self.cats[name]


def default_registry(names=("1", "D2")) -> CatRegistry:
    known = {"1": TERMINAL, "D2": discrete(2, "D2")}
    return CatRegistry({n: known[n] for n in names})


def reversed_graph(f: FinMap) -> FinMap:
    """A deliberately wrong graph: reverses the order inside each fibre."""
    pairs = sorted(range(f.dom), key=lambda i: (f.image[i], -i))
    rank = [0] * f.dom
    for pos, i in enumerate(pairs):
        rank[i] = pos
    return FinMap(f.dom, f.dom, tuple(rank))


def _chunks(f: FinMap, blocks, graph_fn) -> list[tuple]:
    """Letter positions of ``concat blocks`` grouped per fibre, in the order given by the graph."""
    S = IndexedUnion(tuple(len(b) for b in blocks))
    sigma = graph_fn(f)
    order = [0] * f.dom
    for i in range(f.dom):
        order[sigma.image[i]] = i
    out, k = [], 0
    for l in range(f.cod):
        n = len(f.fiber(l))
        out.append(S.run(order[k:k + n]))
        k += n
    return out


class CatpropBiprop(Biprop):
    def __init__(self, reg: CatRegistry, functor_cap: int | None = 4096, graph_fn: Callable = graph,
                 name: str | None = None):
        self.reg = reg
        self.colours = reg.colours
        self.functor_cap = functor_cap
        self.graph_fn = graph_fn
        self.name = name or "Cat"
        self._homs: dict = {}
        self._prods: dict = {}
        self._plans: dict = {}

    def prod(self, A) -> ProductCat:
        A = tuple(A)
        P = self._prods.get(A)
        if P is None:
            P = self._prods[A] = ProductCat([self.reg[c] for c in A], fmt_word(A))
        return P

    def hom(self, A, B) -> FunctorCat:
        key = (tuple(A), tuple(B))
        H = self._homs.get(key)
        if H is None:
            H = self._homs[key] = FunctorCat(self.prod(key[0]), self.prod(key[1]), self.functor_cap)
        return H

    def m(self, A, B, C, x, y):
        PB = self.prod(B)
        return FunctorValue(tuple(y.obj[PB.object_rank(b)] for b in x.obj),
                            tuple(y.mor[PB.morphism_rank(v)] for v in x.mor))

    def m_mor(self, A, B, C, s, t):
        PA, PB, PC = self.prod(A), self.prod(B), self.prod(C)
        src = self.m(A, B, C, s.src, t.src)
        dst = self.m(A, B, C, s.dst, t.dst)
        comps = []
        for r in range(PA.n_objects):
            left = t.src.mor[PB.morphism_rank(s.comp[r])]
            right = t.comp[PB.object_rank(s.dst.obj[r])]
            comps.append(PC.compose(left, right))
        return NatValue(src, dst, tuple(comps))

    def unit(self, A):
        PA = self.prod(A)
        return FunctorValue(tuple(PA.objects()), tuple(PA.morphisms()))

    def a(self, A, B, C, D, x, y, z):
        return self.ident(A, D, self.m(A, C, D, self.m(A, B, C, x, y), z))

    def l(self, A, B, x):
        return self.ident(A, B, x)

    def r(self, A, B, x):
        return self.ident(A, B, x)

    def _plan(self, f, g, As, Bs):
        """Per source object and morphism: the fibre sub-ranks, and where each output letter lands."""
        key = (f, g, As, Bs)
        plan = self._plans.get(key)
        if plan is not None:
            return plan
        A, B = concat(As), concat(Bs)
        src_chunks, dst_chunks = _chunks(f, As, self.graph_fn), _chunks(g, Bs, self.graph_fn)
        subs = [self.prod(tuple(A[p] for p in ch)) for ch in src_chunks]
        PA = self.prod(A)
        obj_ranks = [tuple(P.object_rank(Prod(v[p] for p in ch)) for P, ch in zip(subs, src_chunks))
                     for v in PA.objects()]
        mor_ranks = [tuple(P.morphism_rank(Prod(v[p] for p in ch)) for P, ch in zip(subs, src_chunks))
                     for v in PA.morphisms()]
        slots = [(l, pos, q) for l, dc in enumerate(dst_chunks) for pos, q in enumerate(dc)]
        plan = self._plans[key] = (obj_ranks, mor_ranks, slots, len(B))
        return plan

    @staticmethod
    def _scatter(images, slots, n):
        out = [None] * n
        for l, pos, q in slots:
            out[q] = images[l][pos]
        return Prod(out)

    def tensor(self, f, g, As, Bs, xs):
        obj_ranks, mor_ranks, slots, n = self._plan(f, g, tuple(As), tuple(Bs))
        objs = tuple(self._scatter([x.obj[r] for x, r in zip(xs, rs)], slots, n) for rs in obj_ranks)
        mors = tuple(self._scatter([x.mor[r] for x, r in zip(xs, rs)], slots, n) for rs in mor_ranks)
        return FunctorValue(objs, mors)

    def tensor_mor(self, f, g, As, Bs, ts):
        obj_ranks, _, slots, n = self._plan(f, g, tuple(As), tuple(Bs))
        src = self.tensor(f, g, As, Bs, tuple(t.src for t in ts))
        dst = self.tensor(f, g, As, Bs, tuple(t.dst for t in ts))
        comps = tuple(self._scatter([t.comp[r] for t, r in zip(ts, rs)], slots, n) for rs in obj_ranks)
        return NatValue(src, dst, comps)


def build_catprop(reg: CatRegistry, caps: Caps | None = None, graph_fn: Callable = graph) -> CatpropBiprop:
    caps = caps or Caps(max_word=2, max_index=3, max_hom=4)
    bp = CatpropBiprop(reg, graph_fn=graph_fn)
    # build the largest homs eagerly so an oversized registry fails here
    for A, B in ((w, w) for w in _longest_words(reg, caps.max_word)):
        bp.hom(A, B)
    return bp


def _longest_words(reg: CatRegistry, n: int):
    big = max(reg.colours, key=lambda c: (reg[c].n_objects, reg[c].n_morphisms))
    yield (big,) * n


def reindex_tensor(bp: CatpropBiprop, f: FinMap, g: FinMap, As, Bs, xs) -> FinFunctor:
    """Regroup by the graph of ``f``, apply the ``xs`` side by side, scatter by the inverse graph of ``g``.

    The result is a functor ``prod A -> prod B`` between the product categories.
    """
    As, Bs = tuple(tuple(a) for a in As), tuple(tuple(b) for b in Bs)
    value = bp.tensor(f, g, As, Bs, tuple(xs))
    return apply_functor_value(bp.prod(concat(As)), bp.prod(concat(Bs)), value,
                               f"tensor[{fmt_map(f)},{fmt_map(g)}]")


CATPROP_CAPS = Caps(max_word=2, max_index=2, max_hom=2, max_letters=3)
CATPROP_ASSOC_CAPS = Caps(max_word=2, max_index=2, max_hom=2, max_letters=1)


def check_catprop(reg: CatRegistry, caps: Caps | None = None, graph_fn: Callable = graph,
                  assoc_caps: Caps | None = None) -> Report:
    """The full biprop suite plus the identity-cell claims of this example.

    Functor-category homs are never empty, so the four-leg associator sweep
    grows fastest; ``assoc_caps`` narrows it separately.
    """
    if caps is None:
        caps, assoc_caps = CATPROP_CAPS, assoc_caps or CATPROP_ASSOC_CAPS
    bp = build_catprop(reg, caps, graph_fn)
    rep = merge_reports(f"Cat example on {','.join(reg.colours)}",
                        [check_bicategory(bp, caps), check_tensor_axioms(bp, caps, assoc_caps),
                         check_derived_identities(bp, caps)])
    budget = caps.max_hom

    for A, B, C, D in word_tuples(bp, caps, 4):
        rep.config("associator is identity")
        dom = ProductCat([bp.hom(A, B), bp.hom(B, C), bp.hom(C, D)])
        for p in dom.sample_objects(budget):
            cell = bp.a(A, B, C, D, *p)
            H = bp.hom(A, D)
            rep.check("associator is identity", cell == H.identity(H.src(cell)),
                      lambda: f"words={[fmt_word(w) for w in (A, B, C, D)]} objects={p!r}")
    for A, B in word_tuples(bp, caps, 2):
        rep.config("unitors are identities")
        H = bp.hom(A, B)
        for x in H.sample_objects(budget):
            ok = bp.l(A, B, x) == H.identity(x) == bp.r(A, B, x) \
                and bp.m(A, A, B, bp.unit(A), x) == x == bp.m(A, B, B, x, bp.unit(B))
            rep.check("unitors are identities", ok, lambda: f"words={fmt_word(A)},{fmt_word(B)} x={x!r}")
    for L in range(caps.max_index + 1):
        for legs in chains(bp, caps, 2, L):
            (f, As, fa), (g, Bs, fb) = legs
            rep.config("tensor of identities is identity")
            for p in _family_cat(bp, legs, L).sample_objects(budget):
                ids = tuple(bp.ident(fa[k], fb[k], p[k]) for k in range(L))
                got = bp.tensor_mor(f, g, As, Bs, ids)
                want = bp.ident(concat(As), concat(Bs), bp.tensor(f, g, As, Bs, tuple(p)))
                rep.check("tensor of identities is identity", got == want,
                          lambda: f"{_leg_witness(legs)} objects={p!r}")
    return rep


def strictness_holds(bp: CatpropBiprop, f: FinMap, g: FinMap, h: FinMap, As, Bs, budget=None) -> bool:
    """Whether ``tensor(f, g) == tensor(fh, gh) . (fibrewise tensors over h)`` on every sampled family."""
    L = f.cod
    legs = [(f, tuple(As), tuple(fibre_blocks(f, As, l) for l in range(L))),
            (g, tuple(Bs), tuple(fibre_blocks(g, Bs, l) for l in range(L)))]
    rep = Report()
    check_strictness(bp, legs, h, budget, rep)
    return rep.passed


def graph_identity_holds(f: FinMap, g: FinMap, h: FinMap, graph_fn: Callable = graph) -> bool:
    return check_graph_functoriality(f, h, graph_fn) and check_graph_functoriality(g, h, graph_fn)
