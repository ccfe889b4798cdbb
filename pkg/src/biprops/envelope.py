"""The biprop envelope of a symmetric weak multicategory, and of a multifunctor.

A 1-cell ``(X_i)_{i in I} -> (Y_j)_{j in J}`` is a map ``phi: I -> J``
together with one operation ``C((X_i)_{i in phi^-1 j}; Y_j)`` per output
``j``; it is stored as ``Tagged(phi, Prod(components))``.  Morphisms keep
``phi`` fixed and act componentwise.
"""

from __future__ import annotations

from math import prod as iprod

from .biprop import Biprop, BipropError, BipropMorphism, morphism_difference, identity_morphism, compose_morphisms
from .configs import Caps, fmt_word
from .fincat import CapExceeded, CoproductCat, Prod, ProductCat, Tagged
from .finord import IndexedUnion, all_maps, compose, identity, merge_family, restrict
from .multicat import (SWMulticat, SWMultifunctor, compose_multifunctors, identity_multifunctor,
                       validate_multicat, validate_multifunctor)
from .report import Report


class EnvelopeError(BipropError):
    pass


def _fibre_word(phi, A, j) -> tuple:
    return tuple(A[i] for i in phi.fiber(j))


def env_hom(C: SWMulticat, A: tuple, B: tuple) -> CoproductCat:
    """``coproduct over phi: I -> J`` of ``prod_j C((A_i)_{phi^-1 j}; B_j)``."""
    if len(A) > C.max_arity or len(B) > C.max_arity:
        raise CapExceeded(f"words {fmt_word(A)}, {fmt_word(B)} exceed arity cap {C.max_arity}")
    maps = list(all_maps(len(A), len(B)))
    cats = [ProductCat([C.hom(_fibre_word(phi, A, j), B[j]) for j in range(len(B))]) for phi in maps]
    return CoproductCat(maps, cats, f"env({fmt_word(A)};{fmt_word(B)})")


def env_hom_count(C: SWMulticat, A: tuple, B: tuple) -> int:
    """Object count by the sum-of-products formula."""
    return sum(iprod(C.hom(_fibre_word(phi, A, j), B[j]).n_objects for j in range(len(B)))
               for phi in all_maps(len(A), len(B)))


def env_compose(C: SWMulticat, x: Tagged, y: Tagged, on_mor: bool = False) -> Tagged:
    """Composite on the ``(phi, psi)`` summand: map ``phi psi``, component ``mu`` over each fibre."""
    phi, psi = x.tag, y.tag
    mu = C.mu_mor if on_mor else C.mu
    comps = []
    for k in range(psi.cod):
        r = restrict(phi, psi, k)
        comps.append(mu(r.map, tuple(x.value[j] for j in r.cod_table), y.value[k]))
    return Tagged(compose(phi, psi), Prod(comps))


def env_unit(C: SWMulticat, A: tuple) -> Tagged:
    return Tagged(identity(len(A)), Prod(C.unit(X) for X in A))


def env_tensor(f, g, As, Bs, xs) -> Tagged:
    """Merge the underlying maps blockwise; components are re-indexed, never changed."""
    S = IndexedUnion(tuple(len(A) for A in As))
    Q = IndexedUnion(tuple(len(B) for B in Bs))
    if len(xs) != f.cod:
        raise EnvelopeError(f"family of size {len(xs)} over a cospan into {f.cod}")
    phi = merge_family([x.tag for x in xs], f, g, S, Q)
    comps = [None] * Q.total
    for l, x in enumerate(xs):
        for pos, q in enumerate(Q.run(g.fiber(l))):
            comps[q] = x.value[pos]
    return Tagged(phi, Prod(comps))


def env_associator(C: SWMulticat, x: Tagged, y: Tagged, z: Tagged) -> Tagged:
    """At each output ``l``: ``nu`` of the restrictions of ``phi`` and ``psi`` over ``xi^-1 l``."""
    phi, psi, xi = x.tag, y.tag, z.tag
    psixi = compose(psi, xi)
    comps = []
    for l in range(xi.cod):
        rf = restrict(phi, psixi, l)
        rg = restrict(psi, xi, l)
        comps.append(C.nu(rf.map, rg.map, tuple(x.value[j] for j in rf.cod_table),
                          tuple(y.value[k] for k in rg.cod_table), z.value[l]))
    return Tagged(compose(compose(phi, psi), xi), Prod(comps))


def env_left_unitor(C: SWMulticat, x: Tagged) -> Tagged:
    return Tagged(x.tag, Prod(C.theta(c) for c in x.value))


def env_right_unitor(C: SWMulticat, x: Tagged) -> Tagged:
    return Tagged(x.tag, Prod(C.zeta_u(c) for c in x.value))


def env_coherence(C: SWMulticat):
    """The associator and unitors as component functions ``(a, l, r)``."""
    return (lambda x, y, z: env_associator(C, x, y, z),
            lambda x: env_left_unitor(C, x),
            lambda x: env_right_unitor(C, x))


class EnvelopeBiprop(Biprop):
    def __init__(self, C: SWMulticat, name: str | None = None):
        self.C = C
        self.colours = tuple(C.colours)
        self.name = name or f"env[{C.name}]"
        self._homs: dict = {}

    def hom(self, A, B):
        key = (tuple(A), tuple(B))
        H = self._homs.get(key)
        if H is None:
            H = self._homs[key] = env_hom(self.C, *key)
        return H

    def m(self, A, B, C_, x, y):
        return env_compose(self.C, x, y)

    def m_mor(self, A, B, C_, u, v):
        return env_compose(self.C, u, v, on_mor=True)

    def unit(self, A):
        return env_unit(self.C, tuple(A))

    def a(self, A, B, C_, D, x, y, z):
        return env_associator(self.C, x, y, z)

    def l(self, A, B, x):
        return env_left_unitor(self.C, x)

    def r(self, A, B, x):
        return env_right_unitor(self.C, x)

    def tensor(self, f, g, As, Bs, xs):
        return env_tensor(f, g, As, Bs, xs)

    def tensor_mor(self, f, g, As, Bs, us):
        return env_tensor(f, g, As, Bs, us)


def build_envelope(C: SWMulticat, caps: Caps | None = None, validate: bool = True) -> EnvelopeBiprop:
    """The envelope of ``C``; refuses a multicategory that fails validation."""
    if validate:
        rep = validate_multicat(C, caps)
        if not rep.passed:
            tag = rep.failures()[0]
            raise EnvelopeError(f"multicategory {C.name} fails {tag}: {rep[tag].witness}")
    return EnvelopeBiprop(C)


def env_morphism(F: SWMultifunctor, P: EnvelopeBiprop | None = None, R: EnvelopeBiprop | None = None,
                 caps: Caps | None = None, validate: bool = False) -> BipropMorphism:
    """Hom functors act componentwise; coherence isos are ``F^phi`` and ``F_X`` per component."""
    if validate:
        rep = validate_multifunctor(F, caps)
        if not rep.passed:
            tag = rep.failures()[0]
            raise EnvelopeError(f"multifunctor {F.name} fails {tag}: {rep[tag].witness}")
    P = P or EnvelopeBiprop(F.src)
    R = R or EnvelopeBiprop(F.dst)

    def obj(A, B, x):
        return Tagged(x.tag, Prod(F.obj(c) for c in x.value))

    def mor(A, B, u):
        return Tagged(u.tag, Prod(F.mor(c) for c in u.value))

    def comp_iso(A, B, C_, x, y):
        phi, psi = x.tag, y.tag
        comps = []
        for k in range(psi.cod):
            r = restrict(phi, psi, k)
            comps.append(F.phi(r.map, tuple(x.value[j] for j in r.cod_table), y.value[k]))
        return Tagged(compose(phi, psi), Prod(comps))

    def unit_iso(A):
        return Tagged(identity(len(A)), Prod(F.unit_iso(X) for X in A))

    return BipropMorphism(P, R, dict(F.colour_map), obj, mor, comp_iso, unit_iso, f"env[{F.name}]")


def check_functoriality(F: SWMultifunctor, G: SWMultifunctor, caps: Caps | None = None) -> Report:
    """Envelope of ``F;G`` against the composite of envelopes, and identities against identities."""
    caps = caps or Caps()
    rep = Report(f"functoriality of the envelope on {F.name}, {G.name}")
    P, Q, R = EnvelopeBiprop(F.src), EnvelopeBiprop(F.dst), EnvelopeBiprop(G.dst)
    if F.dst is not G.src:
        raise EnvelopeError(f"{F.name} and {G.name} are not composable")
    lhs = env_morphism(compose_multifunctors(F, G), P, R)
    rhs = compose_morphisms(env_morphism(F, P, Q), env_morphism(G, Q, R))
    rep.config("preserves composition")
    diff = morphism_difference(lhs, rhs, caps)
    rep.check("preserves composition", diff is None, lambda: repr(diff))
    for M, B in ((F.src, P), (F.dst, Q), (G.dst, R)):
        rep.config("preserves identities")
        diff = morphism_difference(env_morphism(identity_multifunctor(M), B, B), identity_morphism(B), caps)
        rep.check("preserves identities", diff is None, lambda: f"{M.name}: {diff!r}")
    return rep
