"""Finite categories, functors and natural transformations.

Objects and morphisms are plain hashable Python values.  Every category
exposes a ranking codec (``object_at`` / ``object_rank`` and the morphism
analogues) so that large categories such as products of hom-categories can be
enumerated or sampled without being tabulated.

Composition is diagrammatic throughout: ``compose(u, v)`` is "u then v".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import prod
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence


class FinCatError(ValueError):
    pass


class CapExceeded(FinCatError):
    pass


def spread(n: int, budget: int | None) -> list[int]:
    """Ranks ``0..n-1`` if they fit in ``budget``, else ``budget`` evenly spread ranks."""
    if budget is None or n <= budget:
        return list(range(n))
    if budget <= 0:
        return []
    return sorted({(2 * t + 1) * n // (2 * budget) for t in range(budget)})


# -- normal form of product values -----------------------------------------

class Prod(tuple):
    """A tuple that denotes an element of a product category."""

    def __repr__(self):
        return "<" + ", ".join(repr(v) for v in self) + ">"


def normalize(v):
    """Flatten nested products so re-bracketed tuples compare equal."""
    if isinstance(v, Prod):
        out = []
        for c in v:
            c = normalize(c)
            if isinstance(c, Prod):
                out.extend(c)
            else:
                out.append(c)
        return Prod(out)
    return v


@dataclass(frozen=True)
class Tagged:
    """An element of one summand of a coproduct category."""
    tag: Hashable
    value: Any

    def __repr__(self):
        return f"{self.tag!r}:{self.value!r}"


# -- categories --------------------------------------------------------------

class FinCat:
    """Interface of a finite category.  Subclasses fill in the codec and structure."""

    name: str = "C"

    @property
    def n_objects(self) -> int:
        raise NotImplementedError

    @property
    def n_morphisms(self) -> int:
        raise NotImplementedError

    def object_at(self, r: int):
        raise NotImplementedError

    def object_rank(self, x) -> int:
        raise NotImplementedError

    def morphism_at(self, r: int):
        raise NotImplementedError

    def morphism_rank(self, u) -> int:
        raise NotImplementedError

    def src(self, u):
        raise NotImplementedError

    def dst(self, u):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, u, v):
        raise NotImplementedError

    def inverse(self, u):
        """The inverse of ``u`` or ``None`` if ``u`` is not invertible."""
        x, y = self.src(u), self.dst(u)
        for w in self.hom(y, x):
            if self.compose(u, w) == self.identity(x) and self.compose(w, u) == self.identity(y):
                return w
        return None

    # derived helpers

    def objects(self) -> Iterator:
        return (self.object_at(r) for r in range(self.n_objects))

    def morphisms(self) -> Iterator:
        return (self.morphism_at(r) for r in range(self.n_morphisms))

    def hom(self, x, y) -> list:
        return [u for u in self.morphisms() if self.src(u) == x and self.dst(u) == y]

    def sample_objects(self, budget: int | None) -> list:
        return [self.object_at(r) for r in spread(self.n_objects, budget)]

    def sample_morphisms(self, budget: int | None) -> list:
        return [self.morphism_at(r) for r in spread(self.n_morphisms, budget)]

    def compose_all(self, us: Sequence):
        out = us[0]
        for u in us[1:]:
            out = self.compose(out, u)
        return out

    def is_iso(self, u) -> bool:
        return self.inverse(u) is not None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class TabulatedCat(FinCat):
    """A category given by explicit tables; objects and morphisms are integers."""

    def __init__(self, n_objects: int, arrows: Sequence[tuple[int, int]],
                 identities: Sequence[int], table: dict[tuple[int, int], int],
                 name: str = "C"):
        self._n = n_objects
        self._arrows = tuple(tuple(a) for a in arrows)
        self._ids = tuple(identities)
        self._table = dict(table)
        self.name = name

    @property
    def n_objects(self):
        return self._n

    @property
    def n_morphisms(self):
        return len(self._arrows)

    def object_at(self, r):
        if not 0 <= r < self._n:
            raise FinCatError(f"object {r} out of range in {self.name}")
        return r

    def object_rank(self, x):
        return self.object_at(x)

    def morphism_at(self, r):
        if not 0 <= r < len(self._arrows):
            raise FinCatError(f"morphism {r} out of range in {self.name}")
        return r

    def morphism_rank(self, u):
        return self.morphism_at(u)

    def src(self, u):
        return self._arrows[u][0]

    def dst(self, u):
        return self._arrows[u][1]

    def identity(self, x):
        return self._ids[x]

    def compose(self, u, v):
        try:
            return self._table[(u, v)]
        except KeyError:
            raise FinCatError(f"morphisms {u} and {v} are not composable in {self.name}") from None

    def to_dict(self) -> dict:
        return {
            "objects": self._n,
            "morphisms": [[u, s, t] for u, (s, t) in enumerate(self._arrows)],
            "identities": list(self._ids),
            "compose": [[u, v, w] for (u, v), w in sorted(self._table.items())],
        }


def category_to_dict(C: FinCat) -> dict:
    """Serialize any finite category by ranks: object count, morphism triples, composition triples."""
    mors = list(C.morphisms())
    table = []
    for u in mors:
        for v in mors:
            if C.dst(u) == C.src(v):
                table.append([C.morphism_rank(u), C.morphism_rank(v), C.morphism_rank(C.compose(u, v))])
    return {
        "objects": C.n_objects,
        "morphisms": [[C.morphism_rank(u), C.object_rank(C.src(u)), C.object_rank(C.dst(u))] for u in mors],
        "identities": [C.morphism_rank(C.identity(x)) for x in C.objects()],
        "compose": table,
    }


def build_category(n_objects: int, morphisms: Sequence[Sequence[int]],
                   compose: Iterable[Sequence[int]], identities: Sequence[int] | None = None,
                   name: str = "C") -> TabulatedCat:
    """Validate raw tables and build a category.

    ``morphisms`` holds triples ``(id, src, dst)`` with ids ``0..M-1``;
    ``compose`` holds triples ``(f, g, f.g)``.  Identities are inferred when
    not given.  Any violation raises :class:`FinCatError` naming the culprit.
    """
    arrows: list[tuple[int, int] | None] = [None] * len(morphisms)
    for entry in morphisms:
        u, s, t = entry
        if not 0 <= u < len(morphisms) or arrows[u] is not None:
            raise FinCatError(f"bad or repeated morphism id {u}")
        if not (0 <= s < n_objects and 0 <= t < n_objects):
            raise FinCatError(f"morphism {u} has endpoints outside 0..{n_objects - 1}")
        arrows[u] = (s, t)
    table: dict[tuple[int, int], int] = {}
    for f, g, fg in compose:
        for v in (f, g, fg):
            if not 0 <= v < len(arrows):
                raise FinCatError(f"composition entry ({f}, {g}, {fg}) names unknown morphism {v}")
        if arrows[f][1] != arrows[g][0]:
            raise FinCatError(f"composition entry ({f}, {g}, {fg}) on a non-composable pair")
        if arrows[fg] != (arrows[f][0], arrows[g][1]):
            raise FinCatError(f"composite {fg} of ({f}, {g}) has wrong endpoints")
        if (f, g) in table and table[(f, g)] != fg:
            raise FinCatError(f"composition of ({f}, {g}) given twice")
        table[(f, g)] = fg
    M = len(arrows)
    for f in range(M):
        for g in range(M):
            if arrows[f][1] == arrows[g][0] and (f, g) not in table:
                raise FinCatError(f"composition of composable pair ({f}, {g}) is missing")
    if identities is None:
        identities = []
        for x in range(n_objects):
            cands = [e for e in range(M) if arrows[e] == (x, x)
                     and all(table[(e, g)] == g for g in range(M) if arrows[g][0] == x)
                     and all(table[(f, e)] == f for f in range(M) if arrows[f][1] == x)]
            if not cands:
                raise FinCatError(f"object {x} has no identity morphism")
            identities.append(cands[0])
    identities = list(identities)
    if len(identities) != n_objects:
        raise FinCatError("one identity per object expected")
    for x, e in enumerate(identities):
        if arrows[e] != (x, x):
            raise FinCatError(f"identity {e} of object {x} has wrong endpoints")
        for g in range(M):
            if arrows[g][0] == x and table[(e, g)] != g:
                raise FinCatError(f"unit law fails: identity {e} then {g}")
            if arrows[g][1] == x and table[(g, e)] != g:
                raise FinCatError(f"unit law fails: {g} then identity {e}")
    for f in range(M):
        for g in range(M):
            if arrows[f][1] != arrows[g][0]:
                continue
            for h in range(M):
                if arrows[g][1] != arrows[h][0]:
                    continue
                if table[(table[(f, g)], h)] != table[(f, table[(g, h)])]:
                    raise FinCatError(f"associativity fails on triple ({f}, {g}, {h})")
    return TabulatedCat(n_objects, arrows, identities, table, name)


def category_from_dict(d: dict, name: str = "C") -> TabulatedCat:
    return build_category(d["objects"], d["morphisms"], d["compose"], d.get("identities"), name)


def discrete(n: int, name: str | None = None) -> TabulatedCat:
    return TabulatedCat(n, [(x, x) for x in range(n)], list(range(n)),
                        {(x, x): x for x in range(n)}, name or f"disc{n}")


TERMINAL = discrete(1, "1")


def arrow_category() -> TabulatedCat:
    """Objects 0, 1 and a single non-identity arrow 2: 0 -> 1."""
    return build_category(2, [(0, 0, 0), (1, 1, 1), (2, 0, 1)],
                          [(0, 0, 0), (1, 1, 1), (0, 2, 2), (2, 1, 2)], name="arrow")


def cyclic_group_category(n: int, name: str | None = None) -> TabulatedCat:
    """One object with automorphism group Z/n."""
    table = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return TabulatedCat(1, [(0, 0)] * n, [0], table, name or f"Z{n}")


# -- products and coproducts ---------------------------------------------------

def _mixed_decode(r: int, radices: Sequence[int]) -> list[int]:
    out = []
    for b in radices:
        out.append(r % b)
        r //= b
    return out


def _mixed_encode(digits: Sequence[int], radices: Sequence[int]) -> int:
    r, scale = 0, 1
    for d, b in zip(digits, radices):
        r += d * scale
        scale *= b
    return r


class ProductCat(FinCat):
    """Product category; tuples are ranked with the first factor varying fastest."""

    def __init__(self, factors: Sequence[FinCat], name: str | None = None):
        self.factors = tuple(factors)
        self.name = name or "x".join(f.name for f in self.factors) or "1"

    @property
    def n_objects(self):
        return prod(f.n_objects for f in self.factors)

    @property
    def n_morphisms(self):
        return prod(f.n_morphisms for f in self.factors)

    def object_at(self, r):
        digits = _mixed_decode(r, [f.n_objects for f in self.factors])
        return Prod(f.object_at(d) for f, d in zip(self.factors, digits))

    def object_rank(self, x):
        return _mixed_encode([f.object_rank(c) for f, c in zip(self.factors, x)],
                             [f.n_objects for f in self.factors])

    def morphism_at(self, r):
        digits = _mixed_decode(r, [f.n_morphisms for f in self.factors])
        return Prod(f.morphism_at(d) for f, d in zip(self.factors, digits))

    def morphism_rank(self, u):
        return _mixed_encode([f.morphism_rank(c) for f, c in zip(self.factors, u)],
                             [f.n_morphisms for f in self.factors])

    def src(self, u):
        return Prod(f.src(c) for f, c in zip(self.factors, u))

    def dst(self, u):
        return Prod(f.dst(c) for f, c in zip(self.factors, u))

    def identity(self, x):
        return Prod(f.identity(c) for f, c in zip(self.factors, x))

    def compose(self, u, v):
        return Prod(f.compose(a, b) for f, a, b in zip(self.factors, u, v))

    def inverse(self, u):
        out = []
        for f, c in zip(self.factors, u):
            w = f.inverse(c)
            if w is None:
                return None
            out.append(w)
        return Prod(out)

    def hom(self, x, y):
        return [Prod(t) for t in iproduct(*(f.hom(a, b) for f, a, b in zip(self.factors, x, y)))]

    def _sample(self, budget, sizes, sampler):
        total = prod(sizes)
        if budget is None or total <= budget:
            return None
        per = [1] * len(sizes)
        while True:
            best = None
            for k, n in enumerate(sizes):
                if per[k] < n and prod(per) // per[k] * (per[k] + 1) <= budget:
                    ratio = per[k] / n
                    if best is None or ratio < best[0]:
                        best = (ratio, k)
            if best is None:
                break
            per[best[1]] += 1
        pools = [sampler(f, b) for f, b in zip(self.factors, per)]
        return [Prod(t) for t in iproduct(*pools)]

    def sample_objects(self, budget):
        out = self._sample(budget, [f.n_objects for f in self.factors],
                           lambda f, b: f.sample_objects(b))
        return list(self.objects()) if out is None else out

    def sample_morphisms(self, budget):
        out = self._sample(budget, [f.n_morphisms for f in self.factors],
                           lambda f, b: f.sample_morphisms(b))
        return list(self.morphisms()) if out is None else out


def product(cats: Sequence[FinCat], name: str | None = None) -> ProductCat:
    return ProductCat(cats, name)


class CoproductCat(FinCat):
    """Disjoint union of categories; summands are listed in canonical tag order."""

    def __init__(self, tags: Sequence[Hashable], cats: Sequence[FinCat], name: str | None = None):
        if len(tags) != len(cats):
            raise FinCatError("one tag per summand expected")
        self.tags = tuple(tags)
        self.summands = tuple(cats)
        self._where = {t: k for k, t in enumerate(self.tags)}
        if len(self._where) != len(self.tags):
            raise FinCatError("repeated coproduct tag")
        self.name = name or "+".join(c.name for c in cats) or "0"
        self._obj_off = self._offsets([c.n_objects for c in cats])
        self._mor_off = self._offsets([c.n_morphisms for c in cats])

    @staticmethod
    def _offsets(sizes):
        out, acc = [], 0
        for s in sizes:
            out.append(acc)
            acc += s
        out.append(acc)
        return out

    def summand(self, tag) -> FinCat:
        return self.summands[self._where[tag]]

    @property
    def n_objects(self):
        return self._obj_off[-1]

    @property
    def n_morphisms(self):
        return self._mor_off[-1]

    def _locate(self, r, offs):
        lo, hi = 0, len(self.summands) - 1
        if not 0 <= r < offs[-1]:
            raise FinCatError(f"rank {r} out of range in {self.name}")
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if offs[mid] <= r:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def object_at(self, r):
        k = self._locate(r, self._obj_off)
        return Tagged(self.tags[k], self.summands[k].object_at(r - self._obj_off[k]))

    def object_rank(self, x):
        k = self._where[x.tag]
        return self._obj_off[k] + self.summands[k].object_rank(x.value)

    def morphism_at(self, r):
        k = self._locate(r, self._mor_off)
        return Tagged(self.tags[k], self.summands[k].morphism_at(r - self._mor_off[k]))

    def morphism_rank(self, u):
        k = self._where[u.tag]
        return self._mor_off[k] + self.summands[k].morphism_rank(u.value)

    def src(self, u):
        return Tagged(u.tag, self.summand(u.tag).src(u.value))

    def dst(self, u):
        return Tagged(u.tag, self.summand(u.tag).dst(u.value))

    def identity(self, x):
        return Tagged(x.tag, self.summand(x.tag).identity(x.value))

    def compose(self, u, v):
        if u.tag != v.tag:
            raise FinCatError(f"no morphisms between summands {u.tag!r} and {v.tag!r}")
        return Tagged(u.tag, self.summand(u.tag).compose(u.value, v.value))

    def inverse(self, u):
        w = self.summand(u.tag).inverse(u.value)
        return None if w is None else Tagged(u.tag, w)

    def hom(self, x, y):
        if x.tag != y.tag:
            return []
        return [Tagged(x.tag, w) for w in self.summand(x.tag).hom(x.value, y.value)]

    def _sample(self, budget, sizes, sampler):
        total = sum(sizes)
        if budget is None or total <= budget:
            return None
        live = [k for k, n in enumerate(sizes) if n]
        if budget < len(live):
            live = [live[r] for r in spread(len(live), budget)]
            shares = {k: 1 for k in live}
        else:
            shares = {k: 1 for k in live}
            spare = budget - len(live)
            for k in live:
                shares[k] += min(sizes[k] - 1, spare * sizes[k] // total)
        out = []
        for k in live:
            out.extend(Tagged(self.tags[k], v) for v in sampler(self.summands[k], shares[k]))
        return out

    def sample_objects(self, budget):
        out = self._sample(budget, [c.n_objects for c in self.summands],
                           lambda c, b: c.sample_objects(b))
        return list(self.objects()) if out is None else out

    def sample_morphisms(self, budget):
        out = self._sample(budget, [c.n_morphisms for c in self.summands],
                           lambda c, b: c.sample_morphisms(b))
        return list(self.morphisms()) if out is None else out


def coproduct(tags: Sequence[Hashable], cats: Sequence[FinCat], name: str | None = None) -> CoproductCat:
    return CoproductCat(tags, cats, name)


# -- functors and natural transformations ---------------------------------------

@dataclass
class FinFunctor:
    src: FinCat
    dst: FinCat
    obj: Callable
    mor: Callable
    name: str = "F"

    def __repr__(self):
        return f"<functor {self.name}: {self.src.name} -> {self.dst.name}>"


@dataclass
class FinNatTrans:
    """A natural transformation ``src => dst`` given by its component function."""
    src: FinFunctor
    dst: FinFunctor
    comp: Callable
    name: str = "t"

    def __call__(self, x):
        return self.comp(x)

    @property
    def category(self) -> FinCat:
        return self.src.dst

    def __repr__(self):
        return f"<transformation {self.name}: {self.src.name} => {self.dst.name}>"


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, lambda x: x, lambda u: u, f"Id[{C.name}]")


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """``F`` then ``G``."""
    return FinFunctor(F.src, G.dst, lambda x: G.obj(F.obj(x)), lambda u: G.mor(F.mor(u)),
                      f"{F.name};{G.name}")


def constant_functor(C: FinCat, D: FinCat, d) -> FinFunctor:
    e = D.identity(d)
    return FinFunctor(C, D, lambda x: d, lambda u: e, f"const[{d!r}]")


def product_functor(Fs: Sequence[FinFunctor], name: str | None = None) -> FinFunctor:
    src = ProductCat([F.src for F in Fs])
    dst = ProductCat([F.dst for F in Fs])
    return FinFunctor(src, dst,
                      lambda x: Prod(F.obj(c) for F, c in zip(Fs, x)),
                      lambda u: Prod(F.mor(c) for F, c in zip(Fs, u)),
                      name or "x".join(F.name for F in Fs))


def pairing(C: FinCat, Fs: Sequence[FinFunctor], name: str | None = None) -> FinFunctor:
    """The functor ``C -> prod dst(F)`` with components ``Fs``."""
    dst = ProductCat([F.dst for F in Fs])
    return FinFunctor(C, dst, lambda x: Prod(F.obj(x) for F in Fs),
                      lambda u: Prod(F.mor(u) for F in Fs), name or "<" + ",".join(F.name for F in Fs) + ">")


def projection(P: ProductCat, k: int) -> FinFunctor:
    return FinFunctor(P, P.factors[k], lambda x: x[k], lambda u: u[k], f"pr{k}")


def identity_nat(F: FinFunctor) -> FinNatTrans:
    D = F.dst
    return FinNatTrans(F, F, lambda x: D.identity(F.obj(x)), f"id[{F.name}]")


def vertical(s: FinNatTrans, t: FinNatTrans) -> FinNatTrans:
    """``s`` then ``t`` (components composed in the target category)."""
    D = s.category
    return FinNatTrans(s.src, t.dst, lambda x: D.compose(s(x), t(x)), f"{s.name};{t.name}")


def vertical_all(ts: Sequence[FinNatTrans]) -> FinNatTrans:
    out = ts[0]
    for t in ts[1:]:
        out = vertical(out, t)
    return out


def whisker_left(F: FinFunctor, s: FinNatTrans) -> FinNatTrans:
    """``F`` followed by ``s``: components ``s_{F x}``."""
    return FinNatTrans(compose_functors(F, s.src), compose_functors(F, s.dst),
                       lambda x: s(F.obj(x)), f"{F.name}*{s.name}")


def whisker_right(s: FinNatTrans, H: FinFunctor) -> FinNatTrans:
    """``s`` followed by ``H``: components ``H(s_x)``."""
    return FinNatTrans(compose_functors(s.src, H), compose_functors(s.dst, H),
                       lambda x: H.mor(s(x)), f"{s.name}*{H.name}")


def horizontal(s: FinNatTrans, t: FinNatTrans) -> FinNatTrans:
    """For ``s: F => G: C -> D`` and ``t: H => K: D -> E`` the composite ``F;H => G;K``."""
    E = t.category
    return FinNatTrans(compose_functors(s.src, t.src), compose_functors(s.dst, t.dst),
                       lambda x: E.compose(t.src.mor(s(x)), t(s.dst.obj(x))),
                       f"{s.name}.{t.name}")


def product_nat(ts: Sequence[FinNatTrans], name: str | None = None) -> FinNatTrans:
    return FinNatTrans(product_functor([t.src for t in ts]), product_functor([t.dst for t in ts]),
                       lambda x: Prod(t(c) for t, c in zip(ts, x)),
                       name or "x".join(t.name for t in ts))


def invert(s: FinNatTrans) -> FinNatTrans:
    D = s.category

    def comp(x):
        w = D.inverse(s(x))
        if w is None:
            raise FinCatError(f"component of {s.name} at {x!r} is not invertible")
        return w
    return FinNatTrans(s.dst, s.src, comp, f"{s.name}^-1")


# -- equality and law checks ------------------------------------------------------

def _same_shape(A: FinCat, B: FinCat) -> bool:
    return A is B or (A.n_objects == B.n_objects and A.n_morphisms == B.n_morphisms)


def equal_functors(F: FinFunctor, G: FinFunctor, budget: int | None = None) -> bool:
    if not (_same_shape(F.src, G.src) and _same_shape(F.dst, G.dst)):
        raise FinCatError(f"{F!r} and {G!r} have different endpoints")
    for x in F.src.sample_objects(budget):
        if normalize(F.obj(x)) != normalize(G.obj(x)):
            return False
    for u in F.src.sample_morphisms(budget):
        if normalize(F.mor(u)) != normalize(G.mor(u)):
            return False
    return True


def equal_nats(s: FinNatTrans, t: FinNatTrans, budget: int | None = None) -> bool:
    C = s.src.src
    if not _same_shape(C, t.src.src):
        raise FinCatError(f"{s!r} and {t!r} have different endpoints")
    return all(normalize(s(x)) == normalize(t(x)) for x in C.sample_objects(budget))


def functor_violation(F: FinFunctor, budget: int | None = None):
    """First witness that ``F`` is not a functor, or ``None``."""
    C, D = F.src, F.dst
    for x in C.sample_objects(budget):
        if F.mor(C.identity(x)) != D.identity(F.obj(x)):
            return ("identity", x)
    mors = C.sample_morphisms(budget)
    for u in mors:
        if D.src(F.mor(u)) != F.obj(C.src(u)) or D.dst(F.mor(u)) != F.obj(C.dst(u)):
            return ("endpoints", u)
    for u in mors:
        for v in mors:
            if C.dst(u) == C.src(v) and F.mor(C.compose(u, v)) != D.compose(F.mor(u), F.mor(v)):
                return ("composition", u, v)
    return None


def naturality_violation(s: FinNatTrans, budget: int | None = None):
    """First morphism where the naturality square of ``s`` fails, or ``None``."""
    C, D = s.src.src, s.category
    for x in C.sample_objects(budget):
        c = s(x)
        if D.src(c) != s.src.obj(x) or D.dst(c) != s.dst.obj(x):
            return ("endpoints", x)
    for u in C.sample_morphisms(budget):
        left = D.compose(s.src.mor(u), s(C.dst(u)))
        right = D.compose(s(C.src(u)), s.dst.mor(u))
        if left != right:
            return ("square", u)
    return None


def invertibility_violation(s: FinNatTrans, budget: int | None = None):
    D = s.category
    for x in s.src.src.sample_objects(budget):
        if D.inverse(s(x)) is None:
            return x
    return None


# -- functor categories -----------------------------------------------------------

@dataclass(frozen=True)
class FunctorValue:
    """A functor tabulated on ranks of its source: images of objects and morphisms."""
    obj: tuple
    mor: tuple


@dataclass(frozen=True)
class NatValue:
    src: FunctorValue
    dst: FunctorValue
    comp: tuple


def enumerate_functors(C: FinCat, D: FinCat, cap: int | None = None) -> list[FunctorValue]:
    """All functors ``C -> D`` by backtracking over morphism images."""
    c_objs = list(C.objects())
    c_mors = list(C.morphisms())
    d_objs = list(D.objects())
    order = sorted(range(len(c_mors)), key=lambda k: (C.src(c_mors[k]) != C.dst(c_mors[k]), k))
    results: list[FunctorValue] = []

    def extend_objects(i, obj_img):
        if i == len(c_objs):
            extend_mors(0, obj_img, {})
            return
        for d in d_objs:
            obj_img.append(d)
            extend_objects(i + 1, obj_img)
            obj_img.pop()

    def consistent(mor_img, obj_img):
        for u, fu in mor_img.items():
            for v, fv in mor_img.items():
                if C.dst(c_mors[u]) == C.src(c_mors[v]):
                    w = C.morphism_rank(C.compose(c_mors[u], c_mors[v]))
                    if w in mor_img and D.compose(fu, fv) != mor_img[w]:
                        return False
        return True

    def extend_mors(i, obj_img, mor_img):
        if i == len(order):
            results.append(FunctorValue(tuple(obj_img),
                                        tuple(mor_img[k] for k in range(len(c_mors)))))
            if cap is not None and len(results) > cap:
                raise CapExceeded(f"more than {cap} functors {C.name} -> {D.name}")
            return
        k = order[i]
        u = c_mors[k]
        a = obj_img[C.object_rank(C.src(u))]
        b = obj_img[C.object_rank(C.dst(u))]
        if u == C.identity(C.src(u)):
            cands = [D.identity(a)]
        else:
            cands = D.hom(a, b)
        for cand in cands:
            mor_img[k] = cand
            if consistent(mor_img, obj_img):
                extend_mors(i + 1, obj_img, mor_img)
            del mor_img[k]

    extend_objects(0, [])
    return results


def apply_functor_value(C: FinCat, D: FinCat | None, F: FunctorValue, name: str = "F") -> FinFunctor:
    return FinFunctor(C, D, lambda x: F.obj[C.object_rank(x)], lambda u: F.mor[C.morphism_rank(u)], name)


class FunctorCat(FinCat):
    """Category of functors ``C -> D`` and natural transformations; composition is vertical."""

    def __init__(self, C: FinCat, D: FinCat, cap: int | None = None, name: str | None = None):
        self.C, self.D = C, D
        self.name = name or f"[{C.name},{D.name}]"
        self._functors = enumerate_functors(C, D, cap)
        self._frank = {F: k for k, F in enumerate(self._functors)}
        c_objs = list(C.objects())
        c_mors = list(C.morphisms())
        nats: list[NatValue] = []
        for F in self._functors:
            for G in self._functors:
                pools = [D.hom(F.obj[k], G.obj[k]) for k in range(len(c_objs))]
                for comps in iproduct(*pools):
                    ok = True
                    for u in c_mors:
                        a = C.object_rank(C.src(u))
                        b = C.object_rank(C.dst(u))
                        ur = C.morphism_rank(u)
                        if D.compose(F.mor[ur], comps[b]) != D.compose(comps[a], G.mor[ur]):
                            ok = False
                            break
                    if ok:
                        nats.append(NatValue(F, G, tuple(comps)))
                        if cap is not None and len(nats) > cap * cap:
                            raise CapExceeded(f"too many transformations in {self.name}")
        self._nats = nats
        self._nrank = {t: k for k, t in enumerate(nats)}

    @property
    def n_objects(self):
        return len(self._functors)

    @property
    def n_morphisms(self):
        return len(self._nats)

    def object_at(self, r):
        return self._functors[r]

    def object_rank(self, x):
        return self._frank[x]

    def morphism_at(self, r):
        return self._nats[r]

    def morphism_rank(self, u):
        return self._nrank[u]

    def src(self, u):
        return u.src

    def dst(self, u):
        return u.dst

    def identity(self, x):
        D = self.D
        return NatValue(x, x, tuple(D.identity(d) for d in x.obj))

    def compose(self, u, v):
        if u.dst != v.src:
            raise FinCatError("transformations are not vertically composable")
        D = self.D
        return NatValue(u.src, v.dst, tuple(D.compose(a, b) for a, b in zip(u.comp, v.comp)))

    def inverse(self, u):
        D = self.D
        inv = []
        for c in u.comp:
            w = D.inverse(c)
            if w is None:
                return None
            inv.append(w)
        return NatValue(u.dst, u.src, tuple(inv))

    def hom(self, x, y):
        return [t for t in self._nats if t.src == x and t.dst == y]


def functor_category(C: FinCat, D: FinCat, cap: int | None = None) -> FunctorCat:
    return FunctorCat(C, D, cap)
