"""Weak symmetric-group actions on the hom-categories of a biprop.

For a bijection ``beta: J -> K`` and word blocks ``Ys`` indexed by ``J`` let
``e_beta = tensor(beta, id, Ys, Zs, units)`` with ``Z_k = Y_{beta^-1 k}``.
Then

* ``l_beta(h) = m(e_beta, h)``, a functor ``hom(concat Z, B) -> hom(concat Y, B)``;
* ``r_beta(h) = m(h, e_beta)``, a functor ``hom(A, concat Y) -> hom(A, concat Z)``.

Everything here uses only the public biprop data (units, tensor, m, a, l, r).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .biprop import (Biprop, BipropError, insertion_cell, permute_blocks, unit_insertion)
from .configs import Caps, block_families, concat, fmt_map, fmt_word, words
from .fincat import (FinCat, FinFunctor, FinNatTrans, Prod, ProductCat, Tagged, invertibility_violation,
                     naturality_violation)
from .finord import FinMap, all_bijections, compose, identity
from .multicat import Fn, _evaluate
from .report import Report, merge_reports


class ActionError(BipropError):
    pass


KINDS = ("phi_l", "phi_r", "psi", "unit_l", "unit_r", "compat_right_left", "compat_left_m", "compat_right_m")


@dataclass
class ActionIso:
    """A named natural isomorphism together with the bijections it is indexed by."""
    kind: str
    data: FinNatTrans
    bijections: tuple = ()

    def __call__(self, x):
        return self.data(x)


def _require_bijection(beta: FinMap):
    if not beta.is_bijection:
        raise ActionError(f"{fmt_map(beta)} is not a bijection")


def _blocks(Ys, beta):
    if len(Ys) != beta.dom:
        raise ActionError(f"{len(Ys)} blocks for a bijection of {beta.dom} letters")
    return tuple(tuple(Y) for Y in Ys)


def l_action(bp: Biprop, beta: FinMap, Ys: Sequence[tuple], B: tuple) -> FinFunctor:
    """``l_beta: hom(concat Z, B) -> hom(concat Y, B)``, ``h -> m(e_beta, h)``."""
    _require_bijection(beta)
    Ys = _blocks(Ys, beta)
    Zs = permute_blocks(beta, Ys)
    Y, Z = concat(Ys), concat(Zs)
    e = unit_insertion(bp, beta, Ys)
    ie = bp.ident(Y, Z, e)
    return FinFunctor(bp.hom(Z, B), bp.hom(Y, B), lambda h: bp.m(Y, Z, B, e, h),
                      lambda u: bp.m_mor(Y, Z, B, ie, u), f"l[{fmt_map(beta)}]")


def r_action(bp: Biprop, beta: FinMap, Ys: Sequence[tuple], A: tuple) -> FinFunctor:
    """``r_beta: hom(A, concat Y) -> hom(A, concat Z)``, ``h -> m(h, e_beta)``."""
    _require_bijection(beta)
    Ys = _blocks(Ys, beta)
    Zs = permute_blocks(beta, Ys)
    Y, Z = concat(Ys), concat(Zs)
    e = unit_insertion(bp, beta, Ys)
    ie = bp.ident(Y, Z, e)
    return FinFunctor(bp.hom(A, Y), bp.hom(A, Z), lambda h: bp.m(A, Y, Z, h, e),
                      lambda u: bp.m_mor(A, Y, Z, u, ie), f"r[{fmt_map(beta)}]")


def _identity_functor(H: FinCat) -> FinFunctor:
    return FinFunctor(H, H, lambda x: x, lambda u: u, "Id")


def unit_isos(bp: Biprop, Ys: Sequence[tuple], other: tuple) -> tuple[ActionIso, ActionIso]:
    """``l_id => Id`` on ``hom(concat Y, other)`` and ``r_id => Id`` on ``hom(other, concat Y)``."""
    Ys = tuple(tuple(Y) for Y in Ys)
    n = len(Ys)
    Y = concat(Ys)
    lf = l_action(bp, identity(n), Ys, other)
    rf = r_action(bp, identity(n), Ys, other)
    lt = FinNatTrans(lf, _identity_functor(lf.src), lambda h: bp.l(Y, other, h), "unit_l")
    rt = FinNatTrans(rf, _identity_functor(rf.src), lambda h: bp.r(other, Y, h), "unit_r")
    return ActionIso("unit_l", lt, (identity(n),)), ActionIso("unit_r", rt, (identity(n),))


def _cell_inverse(bp, alpha, beta, Ys, side="l"):
    Ws = permute_blocks(beta, permute_blocks(alpha, Ys))
    Y, W = concat(Ys), concat(Ws)
    return bp.inv(Y, W, insertion_cell(bp, alpha, beta, Ys, side))


def phi_l(bp: Biprop, alpha: FinMap, beta: FinMap, Ys: Sequence[tuple], B: tuple) -> ActionIso:
    """``l_{alpha beta} => l_alpha . l_beta``: ``m(c^-1, 1) ; a(e_alpha, e_beta, -)``."""
    for b in (alpha, beta):
        _require_bijection(b)
    Ys = _blocks(Ys, alpha)
    Zs = permute_blocks(alpha, Ys)
    Ws = permute_blocks(beta, Zs)
    Y, Z, W = concat(Ys), concat(Zs), concat(Ws)
    ea, eb = unit_insertion(bp, alpha, Ys), unit_insertion(bp, beta, Zs)
    cinv = _cell_inverse(bp, alpha, beta, Ys)
    src = l_action(bp, compose(alpha, beta), Ys, B)
    la, lb = l_action(bp, alpha, Ys, B), l_action(bp, beta, Zs, B)
    dst = FinFunctor(src.src, src.dst, lambda h: la.obj(lb.obj(h)), lambda u: la.mor(lb.mor(u)), "l_a.l_b")

    def comp(h):
        return bp.comp(Y, B, bp.m_mor(Y, W, B, cinv, bp.ident(W, B, h)), bp.a(Y, Z, W, B, ea, eb, h))
    return ActionIso("phi_l", FinNatTrans(src, dst, comp, "phi_l"), (alpha, beta))


def phi_r(bp: Biprop, alpha: FinMap, beta: FinMap, Ys: Sequence[tuple], A: tuple) -> ActionIso:
    """``r_{alpha beta} => r_beta . r_alpha``: ``m(1, c^-1) ; a^-1(-, e_alpha, e_beta)``."""
    for b in (alpha, beta):
        _require_bijection(b)
    Ys = _blocks(Ys, alpha)
    Zs = permute_blocks(alpha, Ys)
    Ws = permute_blocks(beta, Zs)
    Y, Z, W = concat(Ys), concat(Zs), concat(Ws)
    ea, eb = unit_insertion(bp, alpha, Ys), unit_insertion(bp, beta, Zs)
    cinv = _cell_inverse(bp, alpha, beta, Ys)
    src = r_action(bp, compose(alpha, beta), Ys, A)
    ra, rb = r_action(bp, alpha, Ys, A), r_action(bp, beta, Zs, A)
    dst = FinFunctor(src.src, src.dst, lambda h: rb.obj(ra.obj(h)), lambda u: rb.mor(ra.mor(u)), "r_b.r_a")

    def comp(h):
        return bp.comp(A, W, bp.m_mor(A, Y, W, bp.ident(A, Y, h), cinv),
                       bp.inv(A, W, bp.a(A, Y, Z, W, h, ea, eb)))
    return ActionIso("phi_r", FinNatTrans(src, dst, comp, "phi_r"), (alpha, beta))


def psi(bp: Biprop, alpha: FinMap, beta: FinMap, Ys: Sequence[tuple], Us: Sequence[tuple]) -> ActionIso:
    """``r_beta . l_alpha => l_alpha . r_beta`` on ``hom(concat Z, concat U)``; components ``a(e_alpha, -, e_beta)``.

    ``alpha`` permutes the input blocks ``Ys`` and ``beta`` the output blocks ``Us``.
    """
    for b in (alpha, beta):
        _require_bijection(b)
    Ys, Us = _blocks(Ys, alpha), _blocks(Us, beta)
    Zs, Vs = permute_blocks(alpha, Ys), permute_blocks(beta, Us)
    Y, Z, U, V = concat(Ys), concat(Zs), concat(Us), concat(Vs)
    ea, eb = unit_insertion(bp, alpha, Ys), unit_insertion(bp, beta, Us)
    la_U, la_V = l_action(bp, alpha, Ys, U), l_action(bp, alpha, Ys, V)
    rb_Z, rb_Y = r_action(bp, beta, Us, Z), r_action(bp, beta, Us, Y)
    H = bp.hom(Z, U)
    src = FinFunctor(H, bp.hom(Y, V), lambda h: rb_Y.obj(la_U.obj(h)), lambda u: rb_Y.mor(la_U.mor(u)), "r_b.l_a")
    dst = FinFunctor(H, bp.hom(Y, V), lambda h: la_V.obj(rb_Z.obj(h)), lambda u: la_V.mor(rb_Z.mor(u)), "l_a.r_b")
    return ActionIso("psi", FinNatTrans(src, dst, lambda h: bp.a(Y, Z, U, V, ea, h, eb), "psi"), (alpha, beta))


def compat_isos(bp: Biprop, beta: FinMap, Ys: Sequence[tuple], A: tuple, C: tuple) -> list[ActionIso]:
    """Associator isos moving ``e_beta`` across a composite.

    * ``m(r_beta x, y) => m(x, l_beta y)`` for ``x: A -> concat Y``, ``y: concat Z -> C``;
    * ``m(l_beta x, y) => l_beta m(x, y)`` inverted to ``l_beta m(x, y) => m(l_beta x, y)``;
    * ``r_beta m(x, y) => m(x, r_beta y)``.
    """
    _require_bijection(beta)
    Ys = _blocks(Ys, beta)
    Zs = permute_blocks(beta, Ys)
    Y, Z = concat(Ys), concat(Zs)
    e = unit_insertion(bp, beta, Ys)
    ie = bp.ident(Y, Z, e)
    out = []

    D1 = ProductCat([bp.hom(A, Y), bp.hom(Z, C)])
    s1 = FinFunctor(D1, bp.hom(A, C), lambda p: bp.m(A, Z, C, bp.m(A, Y, Z, p[0], e), p[1]),
                    lambda p: bp.m_mor(A, Z, C, bp.m_mor(A, Y, Z, p[0], ie), p[1]), "m(r x, y)")
    t1 = FinFunctor(D1, bp.hom(A, C), lambda p: bp.m(A, Y, C, p[0], bp.m(Y, Z, C, e, p[1])),
                    lambda p: bp.m_mor(A, Y, C, p[0], bp.m_mor(Y, Z, C, ie, p[1])), "m(x, l y)")
    out.append(ActionIso("compat_right_left", FinNatTrans(s1, t1, lambda p: bp.a(A, Y, Z, C, p[0], e, p[1])), (beta,)))

    D2 = ProductCat([bp.hom(Z, A), bp.hom(A, C)])
    s2 = FinFunctor(D2, bp.hom(Y, C), lambda p: bp.m(Y, A, C, bp.m(Y, Z, A, e, p[0]), p[1]),
                    lambda p: bp.m_mor(Y, A, C, bp.m_mor(Y, Z, A, ie, p[0]), p[1]), "m(l x, y)")
    t2 = FinFunctor(D2, bp.hom(Y, C), lambda p: bp.m(Y, Z, C, e, bp.m(Z, A, C, p[0], p[1])),
                    lambda p: bp.m_mor(Y, Z, C, ie, bp.m_mor(Z, A, C, p[0], p[1])), "l m(x, y)")
    out.append(ActionIso("compat_left_m", FinNatTrans(s2, t2, lambda p: bp.a(Y, Z, A, C, e, p[0], p[1])), (beta,)))

    D3 = ProductCat([bp.hom(A, C), bp.hom(C, Y)])
    s3 = FinFunctor(D3, bp.hom(A, Z), lambda p: bp.m(A, Y, Z, bp.m(A, C, Y, p[0], p[1]), e),
                    lambda p: bp.m_mor(A, Y, Z, bp.m_mor(A, C, Y, p[0], p[1]), ie), "r m(x, y)")
    t3 = FinFunctor(D3, bp.hom(A, Z), lambda p: bp.m(A, C, Z, p[0], bp.m(C, Y, Z, p[1], e)),
                    lambda p: bp.m_mor(A, C, Z, p[0], bp.m_mor(C, Y, Z, p[1], ie)), "m(x, r y)")
    out.append(ActionIso("compat_right_m", FinNatTrans(s3, t3, lambda p: bp.a(A, C, Y, Z, p[0], p[1], e)), (beta,)))
    return out


# -- checks --------------------------------------------------------------------------

def _iso_checks(rep: Report, tag: str, iso: ActionIso, budget, witness: str):
    rep.config(f"{tag} natural")
    rep.config(f"{tag} invertible")
    bad = naturality_violation(iso.data, budget)
    rep.check(f"{tag} natural", bad is None, lambda: f"{witness} at={bad!r}")
    bad_i = invertibility_violation(iso.data, budget)
    rep.check(f"{tag} invertible", bad_i is None, lambda: f"{witness} at={bad_i!r}")


def _all_words(bp: Biprop, caps: Caps):
    return [w for k in range(caps.max_word + 1) for w in words(bp.colours, k)]


def _configs(bp: Biprop, caps: Caps, n_maps: int):
    """Bijection tuples on ``n <= max_index`` letters with input blocks and an outer word."""
    for n in range(caps.max_index + 1):
        bijs = list(all_bijections(n))
        for Ys in block_families(bp.colours, n, caps.max_word):
            for B in _all_words(bp, caps):
                def rec(acc):
                    if len(acc) == n_maps:
                        yield tuple(acc)
                        return
                    for b in bijs:
                        yield from rec(acc + [b])
                for bs in rec([]):
                    yield n, Ys, B, bs


def _wit(bs, Ys, B) -> str:
    return f"bijections={[fmt_map(b) for b in bs]} blocks={[fmt_word(y) for y in Ys]} word={fmt_word(B)}"


def cocycle_l_sides(bp: Biprop, al, be, ga, Ys, B):
    """Both pastings ``l_{alpha beta gamma} => l_alpha l_beta l_gamma`` as a function of ``h``."""
    Zs = permute_blocks(al, Ys)
    Ws = permute_blocks(be, Zs)
    Y = concat(Ys)
    la = l_action(bp, al, Ys, B)
    lg = l_action(bp, ga, Ws, B)
    p1, p2 = phi_l(bp, al, compose(be, ga), Ys, B), phi_l(bp, be, ga, Zs, B)
    q1, q2 = phi_l(bp, compose(al, be), ga, Ys, B), phi_l(bp, al, be, Ys, B)

    def sides(h):
        left = bp.comp(Y, B, p1(h), la.mor(p2(h)))
        right = bp.comp(Y, B, q1(h), q2(lg.obj(h)))
        return left, right
    return sides


def cocycle_r_sides(bp: Biprop, al, be, ga, Ys, A):
    """Both pastings ``r_{alpha beta gamma} => r_gamma r_beta r_alpha`` as a function of ``h``."""
    Zs = permute_blocks(al, Ys)
    Ws = permute_blocks(be, Zs)
    Vs = permute_blocks(ga, Ws)
    W, V = concat(Ws), concat(Vs)
    ra = r_action(bp, al, Ys, A)
    ie = bp.ident(W, V, unit_insertion(bp, ga, Ws))
    p1, p2 = phi_r(bp, al, compose(be, ga), Ys, A), phi_r(bp, be, ga, Zs, A)
    q1, q2 = phi_r(bp, compose(al, be), ga, Ys, A), phi_r(bp, al, be, Ys, A)

    def sides(h):
        left = bp.comp(A, V, p1(h), p2(ra.obj(h)))
        right = bp.comp(A, V, q1(h), bp.m_mor(A, W, V, q2(h), ie))
        return left, right
    return sides


def check_cocycles(bp: Biprop, caps: Caps | None = None) -> Report:
    caps = caps or Caps()
    budget = caps.max_hom
    rep = Report(f"action cocycles of {bp.name}")
    for n, Ys, B, (al, be, ga) in _configs(bp, caps, 3):
        Ws = permute_blocks(be, permute_blocks(al, Ys))
        Vs = permute_blocks(ga, Ws)
        Hl = bp.hom(concat(Vs), B)
        if Hl.n_objects:
            rep.config("left cocycle")
            sides = cocycle_l_sides(bp, al, be, ga, Ys, B)
            for h in Hl.sample_objects(budget):
                left, right = sides(h)
                rep.check("left cocycle", left == right,
                          lambda: f"{_wit((al, be, ga), Ys, B)} h={h!r} left={left!r} right={right!r}")
        Hr = bp.hom(B, concat(Ys))
        if Hr.n_objects:
            rep.config("right cocycle")
            sides = cocycle_r_sides(bp, al, be, ga, Ys, B)
            for h in Hr.sample_objects(budget):
                left, right = sides(h)
                rep.check("right cocycle", left == right,
                          lambda: f"{_wit((al, be, ga), Ys, B)} h={h!r} left={left!r} right={right!r}")
    return rep


def check_compat(bp: Biprop, caps: Caps | None = None) -> Report:
    """Unit isos, reindexing isos, interchange, compatibility with composition, equivalence."""
    caps = caps or Caps()
    budget = caps.max_hom
    rep = Report(f"action coherence of {bp.name}")
    words_ = _all_words(bp, caps)

    for n, Ys, B, (be,) in _configs(bp, caps, 1):
        Y = concat(Ys)
        w = _wit((be,), Ys, B)

        if be == identity(n):
            ul, ur = unit_isos(bp, Ys, B)
            if ul.data.src.src.n_objects:
                _iso_checks(rep, "left unit iso", ul, budget, w)
            if ur.data.src.src.n_objects:
                _iso_checks(rep, "right unit iso", ur, budget, w)

        for A in words_:
            for iso in compat_isos(bp, be, Ys, A, B):
                if iso.data.src.src.n_objects:
                    _iso_checks(rep, iso.kind, iso, budget, f"{w} other={fmt_word(A)}")

        # l_beta and r_beta are equivalences: Id => l_id => l_beta . l_beta^-1 is invertible
        binv = be.inverse()
        Hl = bp.hom(Y, B)
        if Hl.n_objects:
            rep.config("left action equivalence")
            ul, _ = unit_isos(bp, Ys, B)
            ph = phi_l(bp, be, binv, Ys, B)
            for h in Hl.sample_objects(budget):
                u = bp.comp(Y, B, bp.inv(Y, B, ul(h)), ph(h))
                ok = bp.hom(Y, B).src(u) == h and bp.hom(Y, B).dst(u) == ph.data.dst.obj(h) \
                    and bp.hom(Y, B).inverse(u) is not None
                rep.check("left action equivalence", ok, lambda: f"{w} h={h!r}")
        Hr = bp.hom(B, Y)
        if Hr.n_objects:
            rep.config("right action equivalence")
            _, ur = unit_isos(bp, Ys, B)
            ph = phi_r(bp, be, binv, Ys, B)
            for h in Hr.sample_objects(budget):
                u = bp.comp(B, Y, bp.inv(B, Y, ur(h)), ph(h))
                ok = bp.hom(B, Y).src(u) == h and bp.hom(B, Y).dst(u) == ph.data.dst.obj(h) \
                    and bp.hom(B, Y).inverse(u) is not None
                rep.check("right action equivalence", ok, lambda: f"{w} h={h!r}")

    for n, Ys, B, (al, be) in _configs(bp, caps, 2):
        Zs = permute_blocks(al, Ys)
        Ws = permute_blocks(be, Zs)
        w = _wit((al, be), Ys, B)
        if bp.hom(concat(Ws), B).n_objects:
            _iso_checks(rep, "phi_l", phi_l(bp, al, be, Ys, B), budget, w)
        if bp.hom(B, concat(Ys)).n_objects:
            _iso_checks(rep, "phi_r", phi_r(bp, al, be, Ys, B), budget, w)
        # the unit-insertion cell built from left or right unitors is the same cell
        rep.config("cell from either unitor")
        cl = insertion_cell(bp, al, be, Ys, "l")
        cr = insertion_cell(bp, al, be, Ys, "r")
        rep.check("cell from either unitor", cl == cr, lambda: f"{w} l={cl!r} r={cr!r}")

    for n in range(caps.max_index + 1):
        for m_ in range(caps.max_index + 1):
            for Ys in block_families(bp.colours, n, caps.max_word):
                for Us in block_families(bp.colours, m_, caps.max_word):
                    for al in all_bijections(n):
                        for be in all_bijections(m_):
                            iso = psi(bp, al, be, Ys, Us)
                            if iso.data.src.src.n_objects:
                                _iso_checks(rep, "psi", iso, budget,
                                            f"alpha={fmt_map(al)} beta={fmt_map(be)} inputs={[fmt_word(y) for y in Ys]} outputs={[fmt_word(u) for u in Us]}")
    return rep


def check_actions(bp: Biprop, caps: Caps | None = None) -> Report:
    return merge_reports(f"symmetric actions of {bp.name}", [check_compat(bp, caps), check_cocycles(bp, caps)])


# -- direct oracles for the envelope of the finite-set multicategory ---------------------

def permute_arguments_oracle(C, beta: FinMap, h):
    """``l_beta(h)`` computed directly: map ``beta.phi`` and each component with permuted arguments.

    ``h`` is an envelope 1-cell ``Tagged(phi, comps)`` whose source is a word of
    single letters; the result's component ``k`` takes its arguments in the
    order of ``(beta phi)^-1 k`` and feeds argument ``i`` to position ``beta(i)`` of ``h_k``.
    """
    phi = h.tag
    new = compose(beta, phi)
    comps = []
    for k in range(phi.cod):
        old = h.value[k]
        old_pos = phi.fiber(k)
        new_pos = new.fiber(k)
        dom = tuple(old.dom[old_pos.index(beta.image[i])] for i in new_pos)
        sizes = C.sizes
        table = []
        for args in product(*(range(sizes[c]) for c in reversed(dom))):
            args = args[::-1]
            by_old = {beta.image[i]: a for i, a in zip(new_pos, args)}
            table.append(_evaluate(old, [by_old[p] for p in old_pos], sizes))
        comps.append(Fn(dom, old.cod, tuple(table)))
    return Tagged(new, Prod(comps))


def retag_outputs_oracle(beta: FinMap, h):
    """``r_beta(h)``: map ``phi.beta`` and components ``(h_{beta^-1 k})_k``."""
    inv = beta.inverse()
    return Tagged(compose(h.tag, beta), Prod(h.value[inv.image[k]] for k in range(beta.cod)))
