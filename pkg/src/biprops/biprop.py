"""Biprops: bicategories on words of colours with strict cospan-indexed tensor functors.

Conventions (composition is diagrammatic throughout):

* ``m(A, B, C, x, y)`` composes ``x: A -> B`` with ``y: B -> C``;
* ``a(A, B, C, D, x, y, z): m(m(x, y), z) -> m(x, m(y, z))``;
* ``l(A, B, x): m(1_A, x) -> x`` and ``r(A, B, x): m(x, 1_B) -> x``;
* ``tensor(f, g, As, Bs, xs)`` for a cospan ``I -f-> L <-g- J`` with word
  blocks ``As`` (indexed by I) and ``Bs`` (indexed by J) sends the family
  ``xs[l] in hom(concat of As over f^-1 l, concat of Bs over g^-1 l)`` to
  ``hom(concat As, concat Bs)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .configs import Caps, block_families, concat, fibre_blocks, fmt_map, fmt_word, words
from .fincat import (FinCat, FinFunctor, FinNatTrans, ProductCat, functor_violation, invertibility_violation,
                     naturality_violation)
from .finord import FinMap, all_bijections, all_maps, compose, identity, restrict, terminal
from .report import Report, merge_reports


class BipropError(ValueError):
    pass


class Biprop:
    name: str = "P"
    colours: tuple = ()

    def hom(self, A: tuple, B: tuple) -> FinCat:
        raise NotImplementedError

    def m(self, A, B, C, x, y):
        raise NotImplementedError

    def m_mor(self, A, B, C, u, v):
        raise NotImplementedError

    def unit(self, A):
        raise NotImplementedError

    def a(self, A, B, C, D, x, y, z):
        raise NotImplementedError

    def l(self, A, B, x):
        raise NotImplementedError

    def r(self, A, B, x):
        raise NotImplementedError

    def tensor(self, f: FinMap, g: FinMap, As, Bs, xs):
        raise NotImplementedError

    def tensor_mor(self, f: FinMap, g: FinMap, As, Bs, us):
        raise NotImplementedError

    # derived helpers

    def comp(self, A, B, *us):
        return self.hom(A, B).compose_all(us)

    def ident(self, A, B, x):
        return self.hom(A, B).identity(x)

    def inv(self, A, B, u):
        w = self.hom(A, B).inverse(u)
        if w is None:
            raise BipropError(f"{u!r} is not invertible in hom({fmt_word(A)}, {fmt_word(B)})")
        return w

    def i(self, A):
        return self.unit(A)

    def m_functor(self, A, B, C) -> FinFunctor:
        dom = ProductCat([self.hom(A, B), self.hom(B, C)])
        return FinFunctor(dom, self.hom(A, C), lambda p: self.m(A, B, C, p[0], p[1]),
                          lambda p: self.m_mor(A, B, C, p[0], p[1]), "m")

    def tensor_functor(self, f, g, As, Bs) -> FinFunctor:
        dom = ProductCat([self.hom(fibre_blocks(f, As, l), fibre_blocks(g, Bs, l)) for l in range(f.cod)])
        return FinFunctor(dom, self.hom(concat(As), concat(Bs)),
                          lambda p: self.tensor(f, g, As, Bs, tuple(p)),
                          lambda p: self.tensor_mor(f, g, As, Bs, tuple(p)), f"tensor[{fmt_map(f)},{fmt_map(g)}]")


# -- unit insertions along bijections -----------------------------------------------

def permute_blocks(beta: FinMap, Ys: Sequence[tuple]) -> tuple:
    """Blocks ``Z_k = Y_{beta^-1 k}``."""
    inv = beta.inverse()
    return tuple(Ys[inv.image[k]] for k in range(beta.cod))


def _memo(bp: Biprop, key, thunk):
    """Write-once cache attached to a biprop value."""
    cache = bp.__dict__.setdefault("_insertions", {})
    if key not in cache:
        cache[key] = thunk()
    return cache[key]


def unit_insertion(bp: Biprop, beta: FinMap, Ys: Sequence[tuple]):
    """``e_beta``: the tensor of units along ``J -beta-> K <-id- K``, a 1-cell ``concat Y -> concat Z``."""
    if not beta.is_bijection:
        raise BipropError(f"{fmt_map(beta)} is not a bijection")
    Ys = tuple(Ys)

    def build():
        Zs = permute_blocks(beta, Ys)
        return bp.tensor(beta, identity(beta.cod), Ys, Zs, tuple(bp.unit(Z) for Z in Zs))
    return _memo(bp, ("e", beta, Ys), build)


def insertion_cell(bp: Biprop, alpha: FinMap, beta: FinMap, Ys, side: str = "l"):
    """``c_{alpha,beta}: m(e_alpha, e_beta) -> e_{alpha beta}``, the tensor of unitors at units."""
    Ys = tuple(Ys)

    def build():
        Zs = permute_blocks(alpha, Ys)
        Ws = permute_blocks(beta, Zs)
        unitor = bp.l if side == "l" else bp.r
        cells = tuple(unitor(W, W, bp.unit(W)) for W in Ws)
        return bp.tensor_mor(compose(alpha, beta), identity(beta.cod), Ys, Ws, cells)
    return _memo(bp, ("c", alpha, beta, Ys, side), build)


# -- configuration enumeration ------------------------------------------------------------

def _leg_options(colours, L: int, caps: Caps):
    out = []
    for I in range(caps.max_index + 1):
        for f in all_maps(I, L):
            for blocks in block_families(colours, I, caps.max_word):
                fw = tuple(fibre_blocks(f, blocks, l) for l in range(L))
                out.append((f, blocks, fw))
    return out


def chains(bp: Biprop, caps: Caps, n_legs: int, L: int) -> Iterator[list]:
    """Sequences of legs ``(f, blocks, fibre words)`` into ``L`` with non-empty fibrewise homs."""
    opts = _leg_options(bp.colours, L, caps)

    def rec(acc, letters):
        if len(acc) == n_legs:
            yield list(acc)
            return
        for opt in opts:
            n = letters + sum(len(b) for b in opt[1])
            if not caps.letters_ok(n):
                continue
            if acc:
                prev = acc[-1][2]
                if any(bp.hom(prev[l], opt[2][l]).n_objects == 0 for l in range(L)):
                    continue
            acc.append(opt)
            yield from rec(acc, n)
            acc.pop()
    yield from rec([], 0)


def word_tuples(bp: Biprop, caps: Caps, n: int) -> Iterator[tuple]:
    """Tuples of ``n`` words of length at most ``max_word`` with consecutive non-empty homs."""
    all_words = [w for k in range(caps.max_word + 1) for w in words(bp.colours, k)]

    def rec(acc, letters):
        if len(acc) == n:
            yield tuple(acc)
            return
        for w in all_words:
            if not caps.letters_ok(letters + len(w)):
                continue
            if acc and bp.hom(acc[-1], w).n_objects == 0:
                continue
            acc.append(w)
            yield from rec(acc, letters + len(w))
            acc.pop()
    yield from rec([], 0)


def _family_cat(bp: Biprop, legs: Sequence, L: int) -> ProductCat:
    """``prod over consecutive leg pairs and l of hom(fibre word, next fibre word)``."""
    factors = []
    for a in range(len(legs) - 1):
        for l in range(L):
            factors.append(bp.hom(legs[a][2][l], legs[a + 1][2][l]))
    return ProductCat(factors)


def _families(p, n_fams: int, L: int) -> list[tuple]:
    flat = tuple(p)
    return [flat[k * L:(k + 1) * L] for k in range(n_fams)]


def _leg_witness(legs) -> str:
    return " ".join(f"leg{k}={fmt_map(f)} blocks={[fmt_word(b) for b in blocks]}"
                    for k, (f, blocks, _) in enumerate(legs))


# -- bicategory laws ----------------------------------------------------------------------

def check_bicategory(bp: Biprop, caps: Caps | None = None) -> Report:
    caps = caps or Caps()
    budget = caps.max_hom
    rep = Report(f"bicategory laws of {bp.name}")

    for A, B, C in word_tuples(bp, caps, 3):
        rep.config("composition functor")
        bad = functor_violation(bp.m_functor(A, B, C), budget)
        rep.check("composition functor", bad is None, lambda: f"words={[fmt_word(w) for w in (A, B, C)]} at={bad!r}")

    for A, B in word_tuples(bp, caps, 2):
        H = bp.hom(A, B)
        for tag, cell, src in (("left unitor", bp.l, lambda x: bp.m(A, A, B, bp.unit(A), x)),
                               ("right unitor", bp.r, lambda x: bp.m(A, B, B, x, bp.unit(B)))):
            if tag == "left unitor":
                smor = lambda u: bp.m_mor(A, A, B, bp.ident(A, A, bp.unit(A)), u)
            else:
                smor = lambda u: bp.m_mor(A, B, B, u, bp.ident(B, B, bp.unit(B)))
            S = FinFunctor(H, H, src, smor)
            T = FinFunctor(H, H, lambda x: x, lambda u: u)
            t = FinNatTrans(S, T, lambda x, cell=cell: cell(A, B, x), tag)
            rep.config(f"{tag} natural")
            rep.config(f"{tag} invertible")
            bad = naturality_violation(t, budget)
            rep.check(f"{tag} natural", bad is None, lambda: f"words={fmt_word(A)},{fmt_word(B)} at={bad!r}")
            bad_i = invertibility_violation(t, budget)
            rep.check(f"{tag} invertible", bad_i is None, lambda: f"words={fmt_word(A)},{fmt_word(B)} at={bad_i!r}")

    for A, B, C, D in word_tuples(bp, caps, 4):
        dom = ProductCat([bp.hom(A, B), bp.hom(B, C), bp.hom(C, D)])
        S = FinFunctor(dom, bp.hom(A, D), lambda p: bp.m(A, C, D, bp.m(A, B, C, p[0], p[1]), p[2]),
                       lambda p: bp.m_mor(A, C, D, bp.m_mor(A, B, C, p[0], p[1]), p[2]))
        T = FinFunctor(dom, bp.hom(A, D), lambda p: bp.m(A, B, D, p[0], bp.m(B, C, D, p[1], p[2])),
                       lambda p: bp.m_mor(A, B, D, p[0], bp.m_mor(B, C, D, p[1], p[2])))
        t = FinNatTrans(S, T, lambda p: bp.a(A, B, C, D, *p), "a")
        rep.config("associator natural")
        rep.config("associator invertible")
        ws = [fmt_word(w) for w in (A, B, C, D)]
        bad = naturality_violation(t, budget)
        rep.check("associator natural", bad is None, lambda: f"words={ws} at={bad!r}")
        bad_i = invertibility_violation(t, budget)
        rep.check("associator invertible", bad_i is None, lambda: f"words={ws} at={bad_i!r}")

    for A, B, C, D, E in word_tuples(bp, caps, 5):
        dom = ProductCat([bp.hom(A, B), bp.hom(B, C), bp.hom(C, D), bp.hom(D, E)])
        rep.config("pentagon")
        for p in dom.sample_objects(budget):
            left, right = pentagon_sides(bp, (A, B, C, D, E), *p)
            rep.check("pentagon", left == right,
                      lambda: f"words={[fmt_word(w) for w in (A, B, C, D, E)]} objects={p!r} left={left!r} right={right!r}")

    for A, B, C in word_tuples(bp, caps, 3):
        dom = ProductCat([bp.hom(A, B), bp.hom(B, C)])
        rep.config("unit triangle")
        for p in dom.sample_objects(budget):
            left, right = triangle_sides(bp, (A, B, C), *p)
            rep.check("unit triangle", left == right,
                      lambda: f"words={[fmt_word(w) for w in (A, B, C)]} objects={p!r} left={left!r} right={right!r}")

    for k in range(caps.max_word + 1):
        for A in words(bp.colours, k):
            rep.config("unitors agree at units")
            e = bp.unit(A)
            lc, rc = bp.l(A, A, e), bp.r(A, A, e)
            rep.check("unitors agree at units", lc == rc, lambda: f"word={fmt_word(A)} l={lc!r} r={rc!r}")
    return rep


def pentagon_sides(bp: Biprop, ws, x, y, z, w):
    A, B, C, D, E = ws
    m = bp.m
    xy = m(A, B, C, x, y)
    zw = m(C, D, E, z, w)
    yz = m(B, C, D, y, z)
    left = bp.comp(A, E, bp.a(A, C, D, E, xy, z, w), bp.a(A, B, C, E, x, y, zw))
    right = bp.comp(A, E,
                    bp.m_mor(A, D, E, bp.a(A, B, C, D, x, y, z), bp.ident(D, E, w)),
                    bp.a(A, B, D, E, x, yz, w),
                    bp.m_mor(A, B, E, bp.ident(A, B, x), bp.a(B, C, D, E, y, z, w)))
    return left, right


def triangle_sides(bp: Biprop, ws, x, y):
    A, B, C = ws
    left = bp.comp(A, C, bp.a(A, B, B, C, x, bp.unit(B), y),
                   bp.m_mor(A, B, C, bp.ident(A, B, x), bp.l(B, C, y)))
    right = bp.m_mor(A, B, C, bp.r(A, B, x), bp.ident(B, C, y))
    return left, right


# -- tensor axioms -------------------------------------------------------------------------

TENSOR_TAGS = {
    "interchange": "tensor-composition interchange",
    "associator": "tensor-associator compatibility",
    "units": "tensor preserves units",
    "point": "tensor over a point is identity",
    "left": "tensor-left unitor compatibility",
    "right": "tensor-right unitor compatibility",
    "strict": "tensor strict associativity",
}


def check_tensor_axioms(bp: Biprop, caps: Caps | None = None, assoc_caps: Caps | None = None) -> Report:
    """All tensor axioms; ``assoc_caps`` optionally narrows the four-leg associator sweep."""
    caps = caps or Caps()
    assoc_caps = assoc_caps or caps
    budget = caps.max_hom
    rep = Report(f"tensor axioms of {bp.name}")
    T = TENSOR_TAGS

    for L in range(caps.max_index + 1):
        # units are preserved; one leg suffices
        for f, blocks, fw in _leg_options(bp.colours, L, caps):
            rep.config(T["units"])
            got = bp.tensor(f, f, blocks, blocks, tuple(bp.unit(w) for w in fw))
            want = bp.unit(concat(blocks))
            rep.check(T["units"], got == want,
                      lambda: f"leg={fmt_map(f)} blocks={[fmt_word(b) for b in blocks]} got={got!r} want={want!r}")

        for legs in chains(bp, caps, 2, L):
            (f, As, _), (g, Bs, _) = legs
            dom = _family_cat(bp, legs, L)
            rep.config(T["left"])
            rep.config(T["right"])
            A, B = concat(As), concat(Bs)
            for p in dom.sample_objects(budget):
                xs = tuple(p)
                tx = bp.tensor(f, g, As, Bs, xs)
                got_l = bp.tensor_mor(f, g, As, Bs, tuple(bp.l(legs[0][2][k], legs[1][2][k], xs[k]) for k in range(L)))
                rep.check(T["left"], got_l == bp.l(A, B, tx),
                          lambda: f"{_leg_witness(legs)} family={p!r} got={got_l!r} want={bp.l(A, B, tx)!r}")
                got_r = bp.tensor_mor(f, g, As, Bs, tuple(bp.r(legs[0][2][k], legs[1][2][k], xs[k]) for k in range(L)))
                rep.check(T["right"], got_r == bp.r(A, B, tx),
                          lambda: f"{_leg_witness(legs)} family={p!r} got={got_r!r} want={bp.r(A, B, tx)!r}")
            if L == 1 and f.dom and g.dom and f == terminal(f.dom) and g == terminal(g.dom):
                rep.config(T["point"])
                for p in dom.sample_objects(budget):
                    rep.check(T["point"], bp.tensor(f, g, As, Bs, tuple(p)) == p[0],
                              lambda: f"{_leg_witness(legs)} object={p!r}")
                for p in dom.sample_morphisms(budget):
                    rep.check(T["point"], bp.tensor_mor(f, g, As, Bs, tuple(p)) == p[0],
                              lambda: f"{_leg_witness(legs)} morphism={p!r}")

        for legs in chains(bp, caps, 3, L):
            rep.config(T["interchange"])
            check_interchange(bp, legs, L, budget, rep)

        for legs in chains(bp, assoc_caps, 4, L):
            rep.config(T["associator"])
            check_tensor_associator(bp, legs, L, budget, rep, T["associator"])

    for L in range(caps.max_index + 1):
        for M in range(caps.max_index + 1):
            for h in all_maps(L, M):
                for legs in chains(bp, caps, 2, L):
                    rep.config(T["strict"])
                    check_strictness(bp, legs, h, budget, rep)
    return rep


def check_interchange(bp: Biprop, legs, L, budget, rep: Report):
    (f, As, fa), (g, Bs, fb), (h, Cs, fc) = legs
    A, B, C = concat(As), concat(Bs), concat(Cs)
    dom = _family_cat(bp, legs, L)
    tag = TENSOR_TAGS["interchange"]
    for p in dom.sample_objects(budget):
        xs, ys = _families(p, 2, L)
        left = bp.m(A, B, C, bp.tensor(f, g, As, Bs, xs), bp.tensor(g, h, Bs, Cs, ys))
        right = bp.tensor(f, h, As, Cs, tuple(bp.m(fa[k], fb[k], fc[k], xs[k], ys[k]) for k in range(L)))
        rep.check(tag, left == right, lambda: f"{_leg_witness(legs)} objects={p!r} left={left!r} right={right!r}")
    for p in dom.sample_morphisms(budget):
        us, vs = _families(p, 2, L)
        left = bp.m_mor(A, B, C, bp.tensor_mor(f, g, As, Bs, us), bp.tensor_mor(g, h, Bs, Cs, vs))
        right = bp.tensor_mor(f, h, As, Cs, tuple(bp.m_mor(fa[k], fb[k], fc[k], us[k], vs[k]) for k in range(L)))
        rep.check(tag, left == right, lambda: f"{_leg_witness(legs)} morphisms={p!r} left={left!r} right={right!r}")


def check_tensor_associator(bp: Biprop, legs, L, budget, rep: Report, tag: str):
    (f, As, fa), (g, Bs, fb), (h, Cs, fc), (e, Ds, fd) = legs
    A, B, C, D = concat(As), concat(Bs), concat(Cs), concat(Ds)
    dom = _family_cat(bp, legs, L)
    for p in dom.sample_objects(budget):
        xs, ys, zs = _families(p, 3, L)
        left = bp.tensor_mor(f, e, As, Ds, tuple(bp.a(fa[k], fb[k], fc[k], fd[k], xs[k], ys[k], zs[k]) for k in range(L)))
        right = bp.a(A, B, C, D, bp.tensor(f, g, As, Bs, xs), bp.tensor(g, h, Bs, Cs, ys), bp.tensor(h, e, Cs, Ds, zs))
        rep.check(tag, left == right, lambda: f"{_leg_witness(legs)} objects={p!r} left={left!r} right={right!r}")


def check_strictness(bp: Biprop, legs, h: FinMap, budget, rep: Report):
    """``tensor(f, g)`` equals ``tensor(fh, gh)`` of the fibrewise tensors over ``h``."""
    (f, As, _), (g, Bs, _) = legs
    L = f.cod
    fh, gh = compose(f, h), compose(g, h)
    dom = _family_cat(bp, legs, L)
    tag = TENSOR_TAGS["strict"]

    def regroup(xs, on_mor):
        out = []
        for m_ in range(h.cod):
            rf, rg = restrict(f, h, m_), restrict(g, h, m_)
            sub_As = tuple(As[i] for i in _fibre_positions(fh, m_))
            sub_Bs = tuple(Bs[j] for j in _fibre_positions(gh, m_))
            fam = tuple(xs[l] for l in rf.cod_table)
            t = bp.tensor_mor if on_mor else bp.tensor
            out.append(t(rf.map, rg.map, sub_As, sub_Bs, fam))
        t = bp.tensor_mor if on_mor else bp.tensor
        return t(fh, gh, As, Bs, tuple(out))

    for p in dom.sample_objects(budget):
        left, right = bp.tensor(f, g, As, Bs, tuple(p)), regroup(tuple(p), False)
        rep.check(tag, left == right,
                  lambda: f"{_leg_witness(legs)} h={fmt_map(h)} objects={p!r} left={left!r} right={right!r}")
    for p in dom.sample_morphisms(budget):
        left, right = bp.tensor_mor(f, g, As, Bs, tuple(p)), regroup(tuple(p), True)
        rep.check(tag, left == right,
                  lambda: f"{_leg_witness(legs)} h={fmt_map(h)} morphisms={p!r} left={left!r} right={right!r}")


def _fibre_positions(f: FinMap, m_: int) -> tuple:
    return f.fiber(m_)


# -- identities derived from the axioms ------------------------------------------------------

DERIVED_TAGS = {
    "bijective": "bijective associator reindexing",
    "cocycle": "unit-insertion cocycle",
}


def bijection_triples(n: int):
    for a in all_bijections(n):
        for b in all_bijections(n):
            for c in all_bijections(n):
                yield a, b, c


def check_derived_identities(bp: Biprop, caps: Caps | None = None) -> Report:
    """Associator reindexing along bijections and the cocycle of unit-insertion cells."""
    caps = caps or Caps()
    budget = caps.max_hom
    rep = Report(f"derived identities of {bp.name}")
    for n in range(caps.max_index + 1):
        idn = identity(n)
        for al, be, ga in bijection_triples(n):
            f, g, h = compose(compose(al, be), ga), compose(be, ga), ga
            for As in block_families(bp.colours, n, caps.max_word):
                rep.config(DERIVED_TAGS["cocycle"])
                check_insertion_cocycle(bp, al, be, ga, As, rep)
                for Bs in block_families(bp.colours, n, caps.max_word):
                    for Cs in block_families(bp.colours, n, caps.max_word):
                        for Ds in block_families(bp.colours, n, caps.max_word):
                            if not caps.letters_ok(sum(len(b) for bs in (As, Bs, Cs, Ds) for b in bs)):
                                continue
                            legs = []
                            for leg, blocks in ((f, As), (g, Bs), (h, Cs), (idn, Ds)):
                                legs.append((leg, blocks, tuple(fibre_blocks(leg, blocks, l) for l in range(n))))
                            if any(bp.hom(legs[a][2][l], legs[a + 1][2][l]).n_objects == 0
                                   for a in range(3) for l in range(n)):
                                continue
                            rep.config(DERIVED_TAGS["bijective"])
                            check_tensor_associator(bp, legs, n, budget, rep, DERIVED_TAGS["bijective"])
    return rep


def insertion_cocycle_sides(bp: Biprop, al, be, ga, Ys):
    Zs = permute_blocks(al, Ys)
    Ws = permute_blocks(be, Zs)
    Vs = permute_blocks(ga, Ws)
    Y, Z, W, V = concat(Ys), concat(Zs), concat(Ws), concat(Vs)
    ea, eb, ec = unit_insertion(bp, al, Ys), unit_insertion(bp, be, Zs), unit_insertion(bp, ga, Ws)
    eab = unit_insertion(bp, compose(al, be), Ys)
    ebc = unit_insertion(bp, compose(be, ga), Zs)
    left = bp.comp(Y, V, bp.m_mor(Y, W, V, insertion_cell(bp, al, be, Ys), bp.ident(W, V, ec)),
                   insertion_cell(bp, compose(al, be), ga, Ys))
    right = bp.comp(Y, V, bp.a(Y, Z, W, V, ea, eb, ec),
                    bp.m_mor(Y, Z, V, bp.ident(Y, Z, ea), insertion_cell(bp, be, ga, Zs)),
                    insertion_cell(bp, al, compose(be, ga), Ys))
    return left, right, (ea, eb, eab, ebc)


def check_insertion_cocycle(bp: Biprop, al, be, ga, Ys, rep: Report):
    tag = DERIVED_TAGS["cocycle"]
    Zs = permute_blocks(al, Ys)
    Ws = permute_blocks(be, Zs)
    Y, Z, W = concat(Ys), concat(Zs), concat(Ws)
    c = insertion_cell(bp, al, be, Ys)
    H = bp.hom(Y, W)
    want_src = bp.m(Y, Z, W, unit_insertion(bp, al, Ys), unit_insertion(bp, be, Zs))
    want_dst = unit_insertion(bp, compose(al, be), Ys)
    rep.check(tag, H.src(c) == want_src and H.dst(c) == want_dst,
              lambda: f"endpoints of cell alpha={fmt_map(al)} beta={fmt_map(be)} blocks={[fmt_word(b) for b in Ys]}")
    left, right, _ = insertion_cocycle_sides(bp, al, be, ga, Ys)
    rep.check(tag, left == right,
              lambda: f"alpha={fmt_map(al)} beta={fmt_map(be)} gamma={fmt_map(ga)} "
                      f"blocks={[fmt_word(b) for b in Ys]} left={left!r} right={right!r}")


def check_biprop(bp: Biprop, caps: Caps | None = None) -> Report:
    caps = caps or Caps()
    return merge_reports(f"biprop {bp.name}", [check_bicategory(bp, caps), check_tensor_axioms(bp, caps),
                                               check_derived_identities(bp, caps)])


# -- morphisms of biprops ----------------------------------------------------------------------

@dataclass
class BipropMorphism:
    """Colour map, hom functors and coherence isomorphisms.

    ``comp_iso(A, B, C, x, y): m(Fx, Fy) -> F(m(x, y))`` and
    ``unit_iso(A): 1_{FA} -> F(1_A)``.
    """
    src: Biprop
    dst: Biprop
    colour_map: dict
    obj: Callable
    mor: Callable
    comp_iso: Callable
    unit_iso: Callable
    name: str = "F"

    def word(self, A) -> tuple:
        return tuple(self.colour_map[c] for c in A)

    def blocks(self, As) -> tuple:
        return tuple(self.word(A) for A in As)


def identity_morphism(bp: Biprop) -> BipropMorphism:
    return BipropMorphism(bp, bp, {c: c for c in bp.colours}, lambda A, B, x: x, lambda A, B, u: u,
                          lambda A, B, C, x, y: bp.ident(A, C, bp.m(A, B, C, x, y)),
                          lambda A: bp.ident(A, A, bp.unit(A)), f"Id[{bp.name}]")


def compose_morphisms(F: BipropMorphism, G: BipropMorphism) -> BipropMorphism:
    """``F`` then ``G``: ``K_{x,y} = G_{Fx,Fy} ; G(F_{x,y})`` and ``K_A = G_{FA} ; G(F_A)``."""
    if F.dst is not G.src:
        raise BipropError(f"{F.name} and {G.name} are not composable")
    E = G.dst

    def comp_iso(A, B, C, x, y):
        FA, FB, FC = F.word(A), F.word(B), F.word(C)
        GA, GC = G.word(FA), G.word(FC)
        return E.comp(GA, GC, G.comp_iso(FA, FB, FC, F.obj(A, B, x), F.obj(B, C, y)),
                      G.mor(FA, FC, F.comp_iso(A, B, C, x, y)))

    def unit_iso(A):
        FA = F.word(A)
        GA = G.word(FA)
        return E.comp(GA, GA, G.unit_iso(FA), G.mor(FA, FA, F.unit_iso(A)))

    return BipropMorphism(F.src, E, {c: G.colour_map[F.colour_map[c]] for c in F.src.colours},
                          lambda A, B, x: G.obj(F.word(A), F.word(B), F.obj(A, B, x)),
                          lambda A, B, u: G.mor(F.word(A), F.word(B), F.mor(A, B, u)),
                          comp_iso, unit_iso, f"{F.name};{G.name}")


MORPHISM_TAGS = {
    "functor": "morphism hom functors",
    "tensor": "morphism preserves tensor",
    "comp_tensor": "composition iso vs tensor",
    "assoc": "composition iso vs associator",
    "right": "unit iso vs right unitor",
    "left": "unit iso vs left unitor",
    "comp_nat": "composition iso natural",
    "comp_inv": "composition iso invertible",
    "unit_inv": "unit iso invertible",
}


def validate_morphism(Fm: BipropMorphism, caps: Caps | None = None) -> Report:
    caps = caps or Caps()
    budget = caps.max_hom
    P, R = Fm.src, Fm.dst
    T = MORPHISM_TAGS
    W = Fm.word
    rep = Report(f"morphism {Fm.name}")

    for A, B in word_tuples(P, caps, 2):
        rep.config(T["functor"])
        G = FinFunctor(P.hom(A, B), R.hom(W(A), W(B)), lambda x: Fm.obj(A, B, x), lambda u: Fm.mor(A, B, u))
        bad = functor_violation(G, budget)
        rep.check(T["functor"], bad is None, lambda: f"words={fmt_word(A)},{fmt_word(B)} at={bad!r}")
        rep.config(T["right"])
        rep.config(T["left"])
        for x in P.hom(A, B).sample_objects(budget):
            left, right = morphism_right_unit_sides(Fm, A, B, x)
            rep.check(T["right"], left == right, lambda: f"words={fmt_word(A)},{fmt_word(B)} x={x!r} left={left!r} right={right!r}")
            left, right = morphism_left_unit_sides(Fm, A, B, x)
            rep.check(T["left"], left == right, lambda: f"words={fmt_word(A)},{fmt_word(B)} x={x!r} left={left!r} right={right!r}")

    for k in range(caps.max_word + 1):
        for A in words(P.colours, k):
            rep.config(T["unit_inv"])
            u = Fm.unit_iso(A)
            H = R.hom(W(A), W(A))
            ok = H.src(u) == R.unit(W(A)) and H.dst(u) == Fm.obj(A, A, P.unit(A)) and H.inverse(u) is not None
            rep.check(T["unit_inv"], ok, lambda: f"word={fmt_word(A)} component={u!r}")

    for A, B, C in word_tuples(P, caps, 3):
        dom = ProductCat([P.hom(A, B), P.hom(B, C)])
        tgt = R.hom(W(A), W(C))
        S = FinFunctor(dom, tgt, lambda p: R.m(W(A), W(B), W(C), Fm.obj(A, B, p[0]), Fm.obj(B, C, p[1])),
                       lambda p: R.m_mor(W(A), W(B), W(C), Fm.mor(A, B, p[0]), Fm.mor(B, C, p[1])))
        Tf = FinFunctor(dom, tgt, lambda p: Fm.obj(A, C, P.m(A, B, C, p[0], p[1])),
                        lambda p: Fm.mor(A, C, P.m_mor(A, B, C, p[0], p[1])))
        t = FinNatTrans(S, Tf, lambda p: Fm.comp_iso(A, B, C, p[0], p[1]))
        rep.config(T["comp_nat"])
        rep.config(T["comp_inv"])
        ws = [fmt_word(w) for w in (A, B, C)]
        bad = naturality_violation(t, budget)
        rep.check(T["comp_nat"], bad is None, lambda: f"words={ws} at={bad!r}")
        bad_i = invertibility_violation(t, budget)
        rep.check(T["comp_inv"], bad_i is None, lambda: f"words={ws} at={bad_i!r}")

    for A, B, C, D in word_tuples(P, caps, 4):
        dom = ProductCat([P.hom(A, B), P.hom(B, C), P.hom(C, D)])
        rep.config(T["assoc"])
        for p in dom.sample_objects(budget):
            left, right = morphism_assoc_sides(Fm, (A, B, C, D), *p)
            rep.check(T["assoc"], left == right,
                      lambda: f"words={[fmt_word(w) for w in (A, B, C, D)]} objects={p!r} left={left!r} right={right!r}")

    for L in range(caps.max_index + 1):
        for legs in chains(P, caps, 2, L):
            (f, As, fa), (g, Bs, fb) = legs
            dom = _family_cat(P, legs, L)
            A, B = concat(As), concat(Bs)
            rep.config(T["tensor"])
            for p in dom.sample_objects(budget):
                left = Fm.obj(A, B, P.tensor(f, g, As, Bs, tuple(p)))
                right = R.tensor(f, g, Fm.blocks(As), Fm.blocks(Bs), tuple(Fm.obj(fa[k], fb[k], p[k]) for k in range(L)))
                rep.check(T["tensor"], left == right, lambda: f"{_leg_witness(legs)} objects={p!r} left={left!r} right={right!r}")
            for p in dom.sample_morphisms(budget):
                left = Fm.mor(A, B, P.tensor_mor(f, g, As, Bs, tuple(p)))
                right = R.tensor_mor(f, g, Fm.blocks(As), Fm.blocks(Bs), tuple(Fm.mor(fa[k], fb[k], p[k]) for k in range(L)))
                rep.check(T["tensor"], left == right, lambda: f"{_leg_witness(legs)} morphisms={p!r} left={left!r} right={right!r}")
        for legs in chains(P, caps, 3, L):
            (f, As, fa), (g, Bs, fb), (h, Cs, fc) = legs
            dom = _family_cat(P, legs, L)
            rep.config(T["comp_tensor"])
            for p in dom.sample_objects(budget):
                xs, ys = _families(p, 2, L)
                tx, ty = P.tensor(f, g, As, Bs, xs), P.tensor(g, h, Bs, Cs, ys)
                left = Fm.comp_iso(concat(As), concat(Bs), concat(Cs), tx, ty)
                right = R.tensor_mor(f, h, Fm.blocks(As), Fm.blocks(Cs),
                                     tuple(Fm.comp_iso(fa[k], fb[k], fc[k], xs[k], ys[k]) for k in range(L)))
                rep.check(T["comp_tensor"], left == right,
                          lambda: f"{_leg_witness(legs)} objects={p!r} left={left!r} right={right!r}")
    return rep


def morphism_assoc_sides(Fm: BipropMorphism, ws, x, y, z):
    P, R = Fm.src, Fm.dst
    A, B, C, D = ws
    FA, FB, FC, FD = (Fm.word(w) for w in ws)
    Fx, Fy, Fz = Fm.obj(A, B, x), Fm.obj(B, C, y), Fm.obj(C, D, z)
    xy, yz = P.m(A, B, C, x, y), P.m(B, C, D, y, z)
    left = R.comp(FA, FD,
                  R.m_mor(FA, FC, FD, Fm.comp_iso(A, B, C, x, y), R.ident(FC, FD, Fz)),
                  Fm.comp_iso(A, C, D, xy, z),
                  Fm.mor(A, D, P.a(A, B, C, D, x, y, z)))
    right = R.comp(FA, FD,
                   R.a(FA, FB, FC, FD, Fx, Fy, Fz),
                   R.m_mor(FA, FB, FD, R.ident(FA, FB, Fx), Fm.comp_iso(B, C, D, y, z)),
                   Fm.comp_iso(A, B, D, x, yz))
    return left, right


def morphism_right_unit_sides(Fm: BipropMorphism, A, B, x):
    P, R = Fm.src, Fm.dst
    FA, FB = Fm.word(A), Fm.word(B)
    Fx = Fm.obj(A, B, x)
    left = R.comp(FA, FB, R.m_mor(FA, FB, FB, R.ident(FA, FB, Fx), Fm.unit_iso(B)),
                  Fm.comp_iso(A, B, B, x, P.unit(B)),
                  Fm.mor(A, B, P.r(A, B, x)))
    return left, R.r(FA, FB, Fx)


def morphism_left_unit_sides(Fm: BipropMorphism, A, B, x):
    P, R = Fm.src, Fm.dst
    FA, FB = Fm.word(A), Fm.word(B)
    Fx = Fm.obj(A, B, x)
    left = R.comp(FA, FB, R.m_mor(FA, FA, FB, Fm.unit_iso(A), R.ident(FA, FB, Fx)),
                  Fm.comp_iso(A, A, B, P.unit(A), x),
                  Fm.mor(A, B, P.l(A, B, x)))
    return left, R.l(FA, FB, Fx)


def morphism_difference(F: BipropMorphism, G: BipropMorphism, caps: Caps | None = None):
    """First component where two morphisms with the same endpoints differ, or ``None``."""
    caps = caps or Caps()
    budget = caps.max_hom
    P = F.src
    if F.colour_map != G.colour_map:
        return ("colour map", F.colour_map, G.colour_map)
    for A, B in word_tuples(P, caps, 2):
        H = P.hom(A, B)
        for x in H.sample_objects(budget):
            if F.obj(A, B, x) != G.obj(A, B, x):
                return ("object", A, B, x)
        for u in H.sample_morphisms(budget):
            if F.mor(A, B, u) != G.mor(A, B, u):
                return ("morphism", A, B, u)
    for A, B, C in word_tuples(P, caps, 3):
        for p in ProductCat([P.hom(A, B), P.hom(B, C)]).sample_objects(budget):
            if F.comp_iso(A, B, C, *p) != G.comp_iso(A, B, C, *p):
                return ("composition iso", A, B, C, p)
    for k in range(caps.max_word + 1):
        for A in words(P.colours, k):
            if F.unit_iso(A) != G.unit_iso(A):
                return ("unit iso", A)
    return None
