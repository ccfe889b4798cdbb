"""Finite symmetric weak multicategories and multifunctors.

A multicategory here provides hom-categories ``hom(word, Y)``, compositions
``mu_f`` indexed by arbitrary maps ``f: I -> J``, units ``1_X`` and the
structural isomorphisms

* ``nu_{f,g}[xs, ys, z]: mu_{fg}(lay(f, g, xs, ys), z) -> mu_f(xs, mu_g(ys, z))``
* ``theta[h]: mu_id((1_{X_i})_i, h) -> h``
* ``zeta_u[h]: mu_nabla(h, 1_Y) -> h``

where ``lay(f, g, xs, ys)_k = mu_{f|_k}(xs restricted to g^-1 k, ys_k)``.
Hom objects are self-describing values: ``typeof(x)`` returns their
``(word, target)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Any, Callable, Mapping, Sequence

from .configs import Caps, fmt_map, fmt_word, words
from .fincat import (CapExceeded, FinCat, FinCatError, FinFunctor, FinNatTrans, ProductCat, TabulatedCat,
                     category_from_dict, functor_violation, invertibility_violation, naturality_violation)
from .finord import FinMap, all_maps, compose, graph, identity, restrict, terminal
from .report import Report


class MulticatError(ValueError):
    pass


class StrictifyError(MulticatError):
    pass


# -- generic interface ------------------------------------------------------------

class SWMulticat:
    name: str = "C"
    colours: tuple = ()
    max_arity: int = 3
    strict: bool = False

    def hom(self, word: tuple, y) -> FinCat:
        raise NotImplementedError

    def typeof(self, x) -> tuple[tuple, Any]:
        raise NotImplementedError

    def mor_type(self, u) -> tuple[tuple, Any]:
        raise NotImplementedError

    def mu(self, f: FinMap, xs: Sequence, y):
        raise NotImplementedError

    def mu_mor(self, f: FinMap, us: Sequence, v):
        raise NotImplementedError

    def unit(self, X):
        raise NotImplementedError

    def nu(self, f: FinMap, g: FinMap, xs, ys, z):
        raise NotImplementedError

    def theta(self, h):
        raise NotImplementedError

    def zeta_u(self, h):
        raise NotImplementedError

    # helpers shared by all implementations

    def cat_of(self, x) -> FinCat:
        return self.hom(*self.typeof(x))

    def ident(self, x):
        return self.cat_of(x).identity(x)

    def comp(self, *us):
        C = self.hom(*self.mor_type(us[0]))
        return C.compose_all(us)

    def inv(self, u):
        return self.hom(*self.mor_type(u)).inverse(u)

    def src(self, u):
        return self.hom(*self.mor_type(u)).src(u)

    def dst(self, u):
        return self.hom(*self.mor_type(u)).dst(u)

    def lay(self, f: FinMap, g: FinMap, xs, ys) -> tuple:
        out = []
        for k in range(g.cod):
            r = restrict(f, g, k)
            out.append(self.mu(r.map, tuple(xs[j] for j in r.cod_table), ys[k]))
        return tuple(out)

    def lay_mor(self, f: FinMap, g: FinMap, us, vs) -> tuple:
        out = []
        for k in range(g.cod):
            r = restrict(f, g, k)
            out.append(self.mu_mor(r.map, tuple(us[j] for j in r.cod_table), vs[k]))
        return tuple(out)

    def units(self, word) -> tuple:
        return tuple(self.unit(X) for X in word)

    def unit_mors(self, word) -> tuple:
        return tuple(self.ident(self.unit(X)) for X in word)

    # functor-valued views matching the categorical signatures

    def mu_domain(self, f: FinMap, in_words: Sequence[tuple], mid: tuple, z) -> ProductCat:
        return ProductCat([ProductCat([self.hom(in_words[j], mid[j]) for j in range(f.cod)]),
                           self.hom(mid, z)])

    def mu_functor(self, f: FinMap, in_words: Sequence[tuple], mid: tuple, z) -> FinFunctor:
        dom = self.mu_domain(f, in_words, mid, z)
        X = _inputs_from_fibres(f, in_words)
        return FinFunctor(dom, self.hom(X, z),
                          lambda p: self.mu(f, tuple(p[0]), p[1]),
                          lambda p: self.mu_mor(f, tuple(p[0]), p[1]), f"mu[{fmt_map(f)}]")


def _inputs_from_fibres(f: FinMap, in_words: Sequence[tuple]) -> tuple:
    """The word ``(X_i)_{i in I}`` from the fibre words ``(X_i)_{i in f^-1 j}``."""
    pos = [0] * f.cod
    out = []
    for i in range(f.dom):
        j = f.image[i]
        out.append(in_words[j][pos[j]])
        pos[j] += 1
    for j in range(f.cod):
        if pos[j] != len(in_words[j]):
            raise MulticatError(f"fibre {j} of {fmt_map(f)} does not match word {in_words[j]}")
    return tuple(out)


# -- the finite-set multicategory ----------------------------------------------------

@dataclass(frozen=True)
class Fn:
    """A function ``prod_i X_i -> Y`` stored as an output table, first argument fastest."""
    dom: tuple
    cod: Any
    table: tuple

    def __repr__(self):
        return f"{','.join(map(str, self.dom))}->{self.cod}:{''.join(map(str, self.table))}"


@dataclass(frozen=True)
class Graded:
    """The morphism ``fn -> fn`` of grade ``s``; all morphisms are automorphisms."""
    fn: Fn
    s: int

    def __repr__(self):
        return f"{self.fn!r}@{self.s}"


class FnHomCat(FinCat):
    """Functions ``prod X_i -> Y`` with automorphism group ``Z/grading`` on each."""

    def __init__(self, sizes: Mapping, word: tuple, y, grading: int):
        self.word, self.y, self.grading = tuple(word), y, grading
        self.n_in = prod(sizes[c] for c in self.word)
        self.n_out = sizes[y]
        self.name = f"{fmt_word(self.word)};{y}"
        self._n = self.n_out ** self.n_in

    @property
    def n_objects(self):
        return self._n

    @property
    def n_morphisms(self):
        return self._n * self.grading

    def object_at(self, r):
        if not 0 <= r < self._n:
            raise FinCatError(f"object {r} out of range in {self.name}")
        t = []
        for _ in range(self.n_in):
            t.append(r % self.n_out)
            r //= self.n_out
        return Fn(self.word, self.y, tuple(t))

    def object_rank(self, x):
        r, scale = 0, 1
        for v in x.table:
            r += v * scale
            scale *= self.n_out
        return r

    def morphism_at(self, r):
        return Graded(self.object_at(r // self.grading), r % self.grading)

    def morphism_rank(self, u):
        return self.object_rank(u.fn) * self.grading + u.s

    def src(self, u):
        return u.fn

    def dst(self, u):
        return u.fn

    def identity(self, x):
        return Graded(x, 0)

    def compose(self, u, v):
        if u.fn != v.fn:
            raise FinCatError(f"{u!r} and {v!r} are not composable")
        return Graded(u.fn, (u.s + v.s) % self.grading)

    def inverse(self, u):
        return Graded(u.fn, (-u.s) % self.grading)

    def hom(self, x, y):
        if x != y:
            return []
        return [Graded(x, s) for s in range(self.grading)]


def _evaluate(fn: Fn, args: Sequence[int], sizes: Mapping) -> int:
    r, scale = 0, 1
    for a, c in zip(args, fn.dom):
        r += a * scale
        scale *= sizes[c]
    return fn.table[r]


def inversions(p: FinMap) -> int:
    im = p.image
    return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])


def graph_twist(f: FinMap) -> int:
    """A cochain on maps used to build lawful non-strict fixtures."""
    return inversions(graph(f)) + f.dom + 1


TWISTS: dict[str, Callable[[FinMap], int]] = {"graph": graph_twist}


class FunctionMulticat(SWMulticat):
    """Colours are finite sets ``{0..n-1}``; ``hom((X_i); Y)`` holds all functions ``prod X_i -> Y``.

    With ``grading > 1`` each function carries automorphisms ``Z/grading``
    and ``mu`` adds grades.  A twist cochain ``c`` makes the structure weak:
    ``nu_{f,g}`` has grade ``c(f) + c(g) - c(fg) - sum_k c(f|_k)``,
    ``theta`` has grade ``-c(id)`` and ``zeta_u`` has grade ``-c(nabla)``.
    ``nu_defects`` adds extra grades to chosen ``nu_{f,g}`` (corrupted fixtures).
    """

    def __init__(self, colours: Mapping[str, int], max_arity: int = 3, grading: int = 1,
                 twist: str | Callable[[FinMap], int] | None = None,
                 nu_defects: Mapping[tuple[FinMap, FinMap], int] | None = None,
                 name: str | None = None):
        if grading < 1:
            raise MulticatError("grading must be positive")
        for c, n in colours.items():
            if n < 1:
                raise MulticatError(f"colour {c!r} must be a non-empty set")
        self.sizes = dict(colours)
        self.colours = tuple(colours)
        self.max_arity = max_arity
        self.grading = grading
        self.twist_name = twist if isinstance(twist, str) else None
        self.twist = TWISTS[twist] if isinstance(twist, str) else twist
        self.nu_defects = dict(nu_defects or {})
        self.strict = (self.twist is None or grading == 1) and not any(
            d % grading for d in self.nu_defects.values())
        self.name = name or "finite-set"
        self._homs: dict = {}
        self._mu_cache: dict = {}
        self._eps_cache: dict = {}

    def hom(self, word, y):
        key = (tuple(word), y)
        C = self._homs.get(key)
        if C is None:
            if len(word) > self.max_arity:
                raise CapExceeded(f"word {fmt_word(word)} exceeds arity cap {self.max_arity}")
            for c in (*word, y):
                if c not in self.sizes:
                    raise MulticatError(f"unknown colour {c!r}")
            C = self._homs[key] = FnHomCat(self.sizes, key[0], y, self.grading)
        return C

    def typeof(self, x):
        return x.dom, x.cod

    def mor_type(self, u):
        return u.fn.dom, u.fn.cod

    def c(self, f: FinMap) -> int:
        return 0 if self.twist is None else self.twist(f) % self.grading

    def epsilon(self, f: FinMap, g: FinMap) -> int:
        key = (f, g)
        e = self._eps_cache.get(key)
        if e is None:
            e = self.c(f) + self.c(g) - self.c(compose(f, g))
            e -= sum(self.c(restrict(f, g, k).map) for k in range(g.cod))
            e = self._eps_cache[key] = (e + self.nu_defects.get(key, 0)) % self.grading
        return e

    def mu(self, f, xs, y):
        key = (f, tuple(xs), y)
        out = self._mu_cache.get(key)
        if out is not None:
            return out
        if len(xs) != f.cod:
            raise MulticatError(f"mu along {fmt_map(f)} needs {f.cod} inner operations")
        if tuple(x.cod for x in xs) != y.dom:
            raise MulticatError(f"outer operation {y!r} does not accept {xs!r}")
        X = _inputs_from_fibres(f, [x.dom for x in xs])
        if len(X) > self.max_arity:
            raise CapExceeded(f"composite arity {len(X)} exceeds cap {self.max_arity}")
        fibres = [f.fiber(j) for j in range(f.cod)]
        table = []
        for args in product(*(range(self.sizes[c]) for c in reversed(X))):
            args = args[::-1]
            mids = [_evaluate(xs[j], [args[i] for i in fibres[j]], self.sizes) for j in range(f.cod)]
            table.append(_evaluate(y, mids, self.sizes))
        out = Fn(X, y.cod, tuple(table))
        if len(self._mu_cache) > 500_000:
            self._mu_cache.clear()
        self._mu_cache[key] = out
        return out

    def mu_mor(self, f, us, v):
        fn = self.mu(f, tuple(u.fn for u in us), v.fn)
        return Graded(fn, (sum(u.s for u in us) + v.s) % self.grading)

    def unit(self, X):
        return Fn((X,), X, tuple(range(self.sizes[X])))

    def nu(self, f, g, xs, ys, z):
        target = self.mu(f, xs, self.mu(g, ys, z))
        return Graded(target, self.epsilon(f, g))

    def theta(self, h):
        return Graded(h, (-self.c(identity(len(h.dom)))) % self.grading)

    def zeta_u(self, h):
        return Graded(h, (-self.c(terminal(len(h.dom)))) % self.grading)

    def function(self, word, y, fn: Callable[..., int]) -> Fn:
        """Tabulate a Python function as a hom object."""
        word = tuple(word)
        table = []
        for args in product(*(range(self.sizes[c]) for c in reversed(word))):
            table.append(fn(*args[::-1]))
        return Fn(word, y, tuple(table))


def terminal_multicat() -> FunctionMulticat:
    """One colour, every hom-category is the terminal category."""
    return FunctionMulticat({"*": 1}, max_arity=3, name="terminal")


def finite_set_multicat(sizes: Mapping[str, int] | int = 2, max_arity: int = 3,
                        grading: int = 1, twist=None, nu_defects=None, name=None) -> FunctionMulticat:
    if isinstance(sizes, int):
        sizes = {"X": sizes}
    return FunctionMulticat(sizes, max_arity, grading, twist, nu_defects, name or "finite-set")


# -- table-driven data and strictification ----------------------------------------------

@dataclass(frozen=True)
class HomObj:
    word: tuple
    target: Any
    idx: int

    def __repr__(self):
        return f"{fmt_word(self.word)};{self.target}#{self.idx}"


@dataclass(frozen=True)
class HomMor:
    word: tuple
    target: Any
    idx: int

    def __repr__(self):
        return f"{fmt_word(self.word)};{self.target}~{self.idx}"


class LabelledCat(FinCat):
    """A tabulated category whose objects and morphisms carry their hom type."""

    def __init__(self, base: TabulatedCat, word: tuple, target):
        self.base, self.word, self.target = base, tuple(word), target
        self.name = f"{fmt_word(self.word)};{target}"

    @property
    def n_objects(self):
        return self.base.n_objects

    @property
    def n_morphisms(self):
        return self.base.n_morphisms

    def object_at(self, r):
        return HomObj(self.word, self.target, self.base.object_at(r))

    def object_rank(self, x):
        return x.idx

    def morphism_at(self, r):
        return HomMor(self.word, self.target, self.base.morphism_at(r))

    def morphism_rank(self, u):
        return u.idx

    def _m(self, i):
        return HomMor(self.word, self.target, i)

    def src(self, u):
        return HomObj(self.word, self.target, self.base.src(u.idx))

    def dst(self, u):
        return HomObj(self.word, self.target, self.base.dst(u.idx))

    def identity(self, x):
        return self._m(self.base.identity(x.idx))

    def compose(self, u, v):
        return self._m(self.base.compose(u.idx, v.idx))

    def inverse(self, u):
        w = self.base.inverse(u.idx)
        return None if w is None else self._m(w)


class TableData:
    """Multicategory operations read from explicit tables (no structural isomorphisms)."""

    def __init__(self, doc: Mapping):
        self.colours = tuple(doc["colours"])
        self.max_arity = int(doc["max_arity"])
        self.name = doc.get("name", "tables")
        self._homs = {}
        for entry in doc["homs"]:
            key = (tuple(entry["word"]), entry["target"])
            base = category_from_dict(entry["category"], f"{fmt_word(key[0])};{key[1]}")
            self._homs[key] = LabelledCat(base, *key)
        self._units = {X: HomObj((X,), X, i) for X, i in doc["units"].items()}
        self._mu: dict = {}
        self._mu_mor: dict = {}
        for table, target, kind in ((doc["mu"], self._mu, HomObj), (doc.get("mu_morphisms", []), self._mu_mor, HomMor)):
            for e in table:
                f = FinMap(len(e["map"]), e["cod"], tuple(e["map"]))
                xs = tuple(kind(tuple(a[0]), a[1], a[2]) for a in e["inner"])
                y = kind(tuple(e["outer"][0]), e["outer"][1], e["outer"][2])
                target[(f, xs, y)] = e["result"]

    def hom(self, word, y):
        try:
            return self._homs[(tuple(word), y)]
        except KeyError:
            raise CapExceeded(f"no hom table for {fmt_word(word)};{y}") from None

    def typeof(self, x):
        return x.word, x.target

    def mor_type(self, u):
        return u.word, u.target

    def _lookup(self, table, kind, f, xs, y):
        X = _inputs_from_fibres(f, [x.word for x in xs])
        key = (f, tuple(xs), y)
        if key not in table:
            raise MulticatError(f"composition table has no entry for {fmt_map(f)} {xs!r} {y!r}")
        return kind(X, y.target, table[key])

    def mu(self, f, xs, y):
        return self._lookup(self._mu, HomObj, f, xs, y)

    def mu_mor(self, f, us, v):
        if all(self.hom(*self.mor_type(u)).base.identity(self.hom(*self.mor_type(u)).base.src(u.idx)) == u.idx
               for u in (*us, v)) and (f, tuple(us), v) not in self._mu_mor:
            srcs = tuple(self.hom(*self.mor_type(u)).src(u) for u in us)
            res = self.mu(f, srcs, self.hom(*self.mor_type(v)).src(v))
            return self.hom(res.word, res.target).identity(res)
        return self._lookup(self._mu_mor, HomMor, f, us, v)

    def unit(self, X):
        return self._units[X]


def table_document(C: SWMulticat, max_arity: int) -> dict:
    """Dump the operations of a small multicategory as explicit tables."""
    homs, keys = [], []
    for n in range(max_arity + 1):
        for w in words(C.colours, n):
            for y in C.colours:
                H = C.hom(w, y)
                objs = list(H.objects())
                mors = list(H.morphisms())
                oi = {x: k for k, x in enumerate(objs)}
                mi = {u: k for k, u in enumerate(mors)}
                comp = [[mi[u], mi[v], mi[H.compose(u, v)]] for u in mors for v in mors
                        if H.dst(u) == H.src(v)]
                homs.append({"word": list(w), "target": y, "category": {
                    "objects": len(objs),
                    "morphisms": [[mi[u], oi[H.src(u)], oi[H.dst(u)]] for u in mors],
                    "identities": [mi[H.identity(x)] for x in objs],
                    "compose": comp}})
                keys.append((w, y, oi, mi))
    index = {(w, y): (oi, mi) for w, y, oi, mi in keys}
    mu_rows, mor_rows = [], []
    for I in range(max_arity + 1):
        for J in range(max_arity + 1):
            for f in all_maps(I, J):
                for X in words(C.colours, I):
                    for Y in words(C.colours, J):
                        for Z in C.colours:
                            in_words = [tuple(X[i] for i in f.fiber(j)) for j in range(J)]
                            pools = [list(C.hom(in_words[j], Y[j]).objects()) for j in range(J)]
                            mpools = [list(C.hom(in_words[j], Y[j]).morphisms()) for j in range(J)]
                            for xs in product(*pools):
                                for y in C.hom(Y, Z).objects():
                                    r = C.mu(f, xs, y)
                                    mu_rows.append({
                                        "map": list(f.image), "cod": J,
                                        "inner": [[list(in_words[j]), Y[j], index[(in_words[j], Y[j])][0][xs[j]]] for j in range(J)],
                                        "outer": [list(Y), Z, index[(Y, Z)][0][y]],
                                        "result": index[(X, Z)][0][r]})
                            for us in product(*mpools):
                                for v in C.hom(Y, Z).morphisms():
                                    r = C.mu_mor(f, us, v)
                                    mor_rows.append({
                                        "map": list(f.image), "cod": J,
                                        "inner": [[list(in_words[j]), Y[j], index[(in_words[j], Y[j])][1][us[j]]] for j in range(J)],
                                        "outer": [list(Y), Z, index[(Y, Z)][1][v]],
                                        "result": index[(X, Z)][1][r]})
    units = {X: index[((X,), X)][0][C.unit(X)] for X in C.colours}
    return {"colours": list(C.colours), "max_arity": max_arity, "name": C.name,
            "strict": True, "homs": homs, "units": units, "mu": mu_rows, "mu_morphisms": mor_rows}


class StrictMulticat(SWMulticat):
    """Operations from ``data`` with identity ``nu``, ``theta`` and ``zeta_u``."""

    strict = True

    def __init__(self, data):
        self.data = data
        self.colours = tuple(data.colours)
        self.max_arity = data.max_arity
        self.name = getattr(data, "name", "strict")

    def hom(self, word, y):
        return self.data.hom(word, y)

    def typeof(self, x):
        return self.data.typeof(x)

    def mor_type(self, u):
        return self.data.mor_type(u)

    def mu(self, f, xs, y):
        return self.data.mu(f, xs, y)

    def mu_mor(self, f, us, v):
        return self.data.mu_mor(f, us, v)

    def unit(self, X):
        return self.data.unit(X)

    def nu(self, f, g, xs, ys, z):
        return self.ident(self.mu(f, xs, self.mu(g, ys, z)))

    def theta(self, h):
        return self.ident(h)

    def zeta_u(self, h):
        return self.ident(h)


def strictify(data, caps: Caps | None = None) -> StrictMulticat:
    """Wrap operation data as a strict multicategory after checking literal equalities.

    Associativity ``mu_{fg}(lay(f,g,xs,ys), z) == mu_f(xs, mu_g(ys, z))`` and
    the unit equalities are checked on every configuration within caps, on
    objects and on morphisms.  The first failure raises :class:`StrictifyError`.
    """
    caps = caps or Caps(max_word=data.max_arity, max_index=data.max_arity, max_hom=None)
    C = StrictMulticat(data)
    n = min(caps.max_index, C.max_arity)
    for X, Y, cat in _hom_configs(C, n):
        for h in cat.sample_objects(caps.max_hom):
            I = len(X)
            if C.mu(identity(I), C.units(X), h) != h:
                raise StrictifyError(f"left unit not strict at {h!r}")
            if C.mu(terminal(I), (h,), C.unit(Y)) != h:
                raise StrictifyError(f"right unit not strict at {h!r}")
        for u in cat.sample_morphisms(caps.max_hom):
            I = len(X)
            if C.mu_mor(identity(I), C.unit_mors(X), u) != u:
                raise StrictifyError(f"left unit not strict at morphism {u!r}")
            if C.mu_mor(terminal(I), (u,), C.ident(C.unit(Y))) != u:
                raise StrictifyError(f"right unit not strict at morphism {u!r}")
    for cfg in _assoc_configs(C, n):
        f, g, dom = cfg["f"], cfg["g"], cfg["domain"]
        for p in dom.sample_objects(caps.max_hom):
            xs, ys, z = _split3(p, f.cod, g.cod)
            left = C.mu(compose(f, g), C.lay(f, g, xs, ys), z)
            right = C.mu(f, xs, C.mu(g, ys, z))
            if left != right:
                raise StrictifyError(f"associativity not strict for f={fmt_map(f)} g={fmt_map(g)} at {p!r}")
        for p in dom.sample_morphisms(caps.max_hom):
            us, vs, w = _split3(p, f.cod, g.cod)
            left = C.mu_mor(compose(f, g), C.lay_mor(f, g, us, vs), w)
            right = C.mu_mor(f, us, C.mu_mor(g, vs, w))
            if left != right:
                raise StrictifyError(f"associativity not strict on morphisms for f={fmt_map(f)} g={fmt_map(g)} at {p!r}")
    return C


class TableMulticat(StrictMulticat):
    pass


def multicat_from_tables(doc: Mapping, caps: Caps | None = None) -> StrictMulticat:
    if not doc.get("strict", False):
        raise MulticatError("table fixtures must be strict; weak fixtures use the builtin families")
    return strictify(TableData(doc), caps)


# -- configuration enumeration --------------------------------------------------------

def _split3(p, J: int, K: int):
    flat = tuple(p)
    return flat[:J], flat[J:J + K], flat[J + K]


def _hom_configs(C: SWMulticat, n: int):
    for I in range(n + 1):
        for X in words(C.colours, I):
            for Y in C.colours:
                yield X, Y, C.hom(X, Y)


def _fibre_words(f: FinMap, X: tuple) -> list[tuple]:
    return [tuple(X[i] for i in f.fiber(j)) for j in range(f.cod)]


def _assoc_configs(C: SWMulticat, n: int):
    """All ``I -f-> J -g-> K`` with colours ``X, Y, Z`` and a target ``W``."""
    for I in range(n + 1):
        for J in range(n + 1):
            for K in range(n + 1):
                for f in all_maps(I, J):
                    for g in all_maps(J, K):
                        for X in words(C.colours, I):
                            for Y in words(C.colours, J):
                                for Z in words(C.colours, K):
                                    for W in C.colours:
                                        xw = _fibre_words(f, X)
                                        yw = _fibre_words(g, Y)
                                        factors = [C.hom(xw[j], Y[j]) for j in range(J)]
                                        factors += [C.hom(yw[k], Z[k]) for k in range(K)]
                                        factors.append(C.hom(Z, W))
                                        yield {"f": f, "g": g, "X": X, "Y": Y, "Z": Z, "W": W,
                                               "domain": ProductCat(factors)}


def _pentagon_configs(C: SWMulticat, n: int):
    for I in range(n + 1):
        for J in range(n + 1):
            for K in range(n + 1):
                for L in range(n + 1):
                    for f in all_maps(I, J):
                        for g in all_maps(J, K):
                            for h in all_maps(K, L):
                                for X in words(C.colours, I):
                                    for Y in words(C.colours, J):
                                        for Z in words(C.colours, K):
                                            for W in words(C.colours, L):
                                                for V in C.colours:
                                                    xw, yw, zw = _fibre_words(f, X), _fibre_words(g, Y), _fibre_words(h, Z)
                                                    factors = [C.hom(xw[j], Y[j]) for j in range(J)]
                                                    factors += [C.hom(yw[k], Z[k]) for k in range(K)]
                                                    factors += [C.hom(zw[l], W[l]) for l in range(L)]
                                                    factors.append(C.hom(W, V))
                                                    yield (f, g, h, X, Y, Z, W, V, ProductCat(factors))


def _unit_configs(C: SWMulticat, n: int):
    """``f: I -> J`` with colours ``X, Y`` and a target ``Z``."""
    for I in range(n + 1):
        for J in range(n + 1):
            for f in all_maps(I, J):
                for X in words(C.colours, I):
                    for Y in words(C.colours, J):
                        for Z in C.colours:
                            xw = _fibre_words(f, X)
                            factors = [C.hom(xw[j], Y[j]) for j in range(J)] + [C.hom(Y, Z)]
                            yield f, X, Y, Z, ProductCat(factors)


def _witness(**kw) -> str:
    parts = []
    for k, v in kw.items():
        if isinstance(v, FinMap):
            v = fmt_map(v)
        elif isinstance(v, tuple) and all(isinstance(c, str) for c in v):
            v = fmt_word(v)
        parts.append(f"{k}={v!r}" if not isinstance(v, str) else f"{k}={v}")
    return " ".join(parts)


# -- structural isomorphisms as natural transformations ---------------------------------

def nu_trans(C: SWMulticat, f: FinMap, g: FinMap, domain: ProductCat, target: FinCat) -> FinNatTrans:
    J, K = f.cod, g.cod

    def src_obj(p):
        xs, ys, z = _split3(p, J, K)
        return C.mu(compose(f, g), C.lay(f, g, xs, ys), z)

    def src_mor(p):
        us, vs, w = _split3(p, J, K)
        return C.mu_mor(compose(f, g), C.lay_mor(f, g, us, vs), w)

    def dst_obj(p):
        xs, ys, z = _split3(p, J, K)
        return C.mu(f, xs, C.mu(g, ys, z))

    def dst_mor(p):
        us, vs, w = _split3(p, J, K)
        return C.mu_mor(f, us, C.mu_mor(g, vs, w))

    S = FinFunctor(domain, target, src_obj, src_mor, "mu_fg(lay,-)")
    T = FinFunctor(domain, target, dst_obj, dst_mor, "mu_f(-,mu_g)")
    return FinNatTrans(S, T, lambda p: C.nu(f, g, *_split3(p, J, K)), f"nu[{fmt_map(f)},{fmt_map(g)}]")


def theta_trans(C: SWMulticat, X: tuple, cat: FinCat) -> FinNatTrans:
    I = len(X)
    S = FinFunctor(cat, cat, lambda h: C.mu(identity(I), C.units(X), h),
                   lambda u: C.mu_mor(identity(I), C.unit_mors(X), u), "mu_id(1,-)")
    T = FinFunctor(cat, cat, lambda h: h, lambda u: u, "Id")
    return FinNatTrans(S, T, C.theta, "theta")


def zeta_trans(C: SWMulticat, X: tuple, Y, cat: FinCat) -> FinNatTrans:
    I = len(X)
    S = FinFunctor(cat, cat, lambda h: C.mu(terminal(I), (h,), C.unit(Y)),
                   lambda u: C.mu_mor(terminal(I), (u,), C.ident(C.unit(Y))), "mu_nabla(-,1)")
    T = FinFunctor(cat, cat, lambda h: h, lambda u: u, "Id")
    return FinNatTrans(S, T, C.zeta_u, "zeta_u")


# -- validation ------------------------------------------------------------------------

def validate_multicat(C: SWMulticat, caps: Caps | None = None) -> Report:
    """Check functoriality of ``mu``, the structural isomorphisms, the pentagon and the unit relation."""
    caps = caps or Caps()
    n = min(caps.max_index, C.max_arity)
    budget = caps.max_hom
    rep = Report(f"multicategory {C.name}")

    for cfg in _unit_configs(C, n):
        f, X, Y, Z, dom = cfg
        if dom.n_objects == 0 or len(X) > C.max_arity:
            continue
        rep.config("mu functor")
        J = f.cod
        F = FinFunctor(dom, C.hom(X, Z), lambda p, f=f, J=J: C.mu(f, tuple(p[:J]), p[J]),
                       lambda p, f=f, J=J: C.mu_mor(f, tuple(p[:J]), p[J]), "mu")
        bad = functor_violation(F, budget)
        rep.check("mu functor", bad is None, lambda: _witness(f=f, X=X, Y=Y, Z=Z, at=bad))

    for X, Y, cat in _hom_configs(C, n):
        if cat.n_objects == 0:
            continue
        for tag, t in (("theta", theta_trans(C, X, cat)), ("zeta_u", zeta_trans(C, X, Y, cat))):
            rep.config(f"{tag} natural")
            rep.config(f"{tag} invertible")
            bad = naturality_violation(t, budget)
            rep.check(f"{tag} natural", bad is None, lambda: _witness(X=X, Y=Y, at=bad))
            bad_i = invertibility_violation(t, budget)
            rep.check(f"{tag} invertible", bad_i is None, lambda: _witness(X=X, Y=Y, at=bad_i))

    for cfg in _assoc_configs(C, n):
        f, g, dom = cfg["f"], cfg["g"], cfg["domain"]
        if dom.n_objects == 0 or f.dom > C.max_arity:
            continue
        t = nu_trans(C, f, g, dom, C.hom(cfg["X"], cfg["W"]))
        rep.config("nu natural")
        rep.config("nu invertible")
        bad = naturality_violation(t, budget)
        rep.check("nu natural", bad is None,
                  lambda: _witness(f=f, g=g, X=cfg["X"], Y=cfg["Y"], Z=cfg["Z"], W=cfg["W"], at=bad))
        bad_i = invertibility_violation(t, budget)
        rep.check("nu invertible", bad_i is None,
                  lambda: _witness(f=f, g=g, X=cfg["X"], at=bad_i))

    for f, g, h, X, Y, Z, W, V, dom in _pentagon_configs(C, n):
        if dom.n_objects == 0:
            continue
        rep.config("nu pentagon")
        J, K, L = f.cod, g.cod, h.cod
        for p in dom.sample_objects(budget):
            flat = tuple(p)
            xs, ys, zs, w = flat[:J], flat[J:J + K], flat[J + K:J + K + L], flat[-1]
            left, right = pentagon_sides(C, f, g, h, xs, ys, zs, w)
            rep.check("nu pentagon", left == right,
                      lambda: _witness(f=f, g=g, h=h, X=X, Y=Y, Z=Z, W=W, V=V, objects=p,
                                       left=left, right=right))

    for f, X, Y, Z, dom in _unit_configs(C, n):
        if dom.n_objects == 0:
            continue
        rep.config("unit relation")
        J = f.cod
        for p in dom.sample_objects(budget):
            xs, z = tuple(p[:J]), p[J]
            left, right = unit_relation_sides(C, f, xs, z)
            rep.check("unit relation", left == right,
                      lambda: _witness(f=f, X=X, Y=Y, Z=Z, objects=p, left=left, right=right))
    return rep


def pentagon_sides(C: SWMulticat, f, g, h, xs, ys, zs, w):
    """Both pastings of ``nu`` from ``mu_{fgh}(...)`` to ``mu_f(xs, mu_g(ys, mu_h(zs, w)))``."""
    fg, gh = compose(f, g), compose(g, h)
    left = C.comp(C.nu(fg, h, C.lay(f, g, xs, ys), zs, w),
                  C.nu(f, g, xs, ys, C.mu(h, zs, w)))
    inner = []
    for l in range(h.cod):
        rf = restrict(f, gh, l)
        rg = restrict(g, h, l)
        inner.append(C.nu(rf.map, rg.map, tuple(xs[j] for j in rf.cod_table),
                          tuple(ys[k] for k in rg.cod_table), zs[l]))
    right = C.comp(C.mu_mor(compose(fg, h), tuple(inner), C.ident(w)),
                   C.nu(f, gh, xs, C.lay(g, h, ys, zs), w),
                   C.mu_mor(f, tuple(C.ident(x) for x in xs), C.nu(g, h, ys, zs, w)))
    return left, right


def unit_relation_sides(C: SWMulticat, f, xs, z):
    J = f.cod
    Y = C.typeof(z)[0]
    left = C.comp(C.nu(f, identity(J), xs, C.units(Y), z),
                  C.mu_mor(f, tuple(C.ident(x) for x in xs), C.theta(z)))
    right = C.mu_mor(f, tuple(C.zeta_u(x) for x in xs), C.ident(z))
    return left, right


# -- multifunctors ------------------------------------------------------------------------

@dataclass
class SWMultifunctor:
    """Colour map, hom actions and the coherence isomorphisms.

    ``phi(f, xs, y): mu_f(F xs, F y) -> F(mu_f(xs, y))`` and
    ``unit_iso(X): 1_{FX} -> F(1_X)``.
    """
    src: SWMulticat
    dst: SWMulticat
    colour_map: Mapping
    obj: Callable
    mor: Callable
    phi: Callable
    unit_iso: Callable
    name: str = "F"

    def word(self, w) -> tuple:
        return tuple(self.colour_map[c] for c in w)


def identity_multifunctor(C: SWMulticat) -> SWMultifunctor:
    return SWMultifunctor(C, C, {c: c for c in C.colours}, lambda x: x, lambda u: u,
                          lambda f, xs, y: C.ident(C.mu(f, xs, y)),
                          lambda X: C.ident(C.unit(X)), f"Id[{C.name}]")


def compose_multifunctors(F: SWMultifunctor, G: SWMultifunctor) -> SWMultifunctor:
    """``F`` then ``G``; coherence isomorphisms are the pasted composites."""
    if F.dst is not G.src:
        raise MulticatError(f"{F.name} and {G.name} are not composable")
    E = G.dst

    def phi(f, xs, y):
        return E.comp(G.phi(f, tuple(F.obj(x) for x in xs), F.obj(y)), G.mor(F.phi(f, xs, y)))

    def unit_iso(X):
        return E.comp(G.unit_iso(F.colour_map[X]), G.mor(F.unit_iso(X)))

    return SWMultifunctor(F.src, E, {c: G.colour_map[F.colour_map[c]] for c in F.src.colours},
                          lambda x: G.obj(F.obj(x)), lambda u: G.mor(F.mor(u)), phi, unit_iso,
                          f"{F.name};{G.name}")


def relabel_multifunctor(src: FunctionMulticat, dst: FunctionMulticat, colour_map: Mapping) -> SWMultifunctor:
    """Rename colours between finite-set multicategories with matching sizes (strict)."""
    for c, d in colour_map.items():
        if src.sizes[c] != dst.sizes[d]:
            raise MulticatError(f"colour {c!r} and {d!r} have different sizes")
        if src.grading != dst.grading and dst.grading % src.grading:
            raise MulticatError("gradings are incompatible")

    def obj(x):
        return Fn(tuple(colour_map[c] for c in x.dom), colour_map[x.cod], x.table)

    def mor(u):
        return Graded(obj(u.fn), u.s % dst.grading)

    return SWMultifunctor(src, dst, dict(colour_map), obj, mor,
                          lambda f, xs, y: dst.ident(obj(src.mu(f, xs, y))),
                          lambda X: dst.ident(dst.unit(colour_map[X])),
                          f"relabel{dict(colour_map)}")


def terminal_inclusion(T: FunctionMulticat, D: FunctionMulticat, colour) -> SWMultifunctor:
    if D.sizes[colour] != 1:
        raise MulticatError("the terminal multicategory includes only at a singleton colour")
    return relabel_multifunctor(T, D, {T.colours[0]: colour})


def reverse_multifunctor(C: FunctionMulticat) -> SWMultifunctor:
    """Conjugate every function by the order reversal ``a -> n-1-a`` of each colour (strict)."""
    def obj(x):
        sizes = C.sizes
        def g(*args):
            rev = [sizes[c] - 1 - a for a, c in zip(args, x.dom)]
            return sizes[x.cod] - 1 - _evaluate(x, rev, sizes)
        return C.function(x.dom, x.cod, g)

    def mor(u):
        return Graded(obj(u.fn), u.s)

    return SWMultifunctor(C, C, {c: c for c in C.colours}, obj, mor,
                          lambda f, xs, y: C.ident(obj(C.mu(f, xs, y))),
                          lambda X: C.ident(C.unit(X)), "reverse")


def twist_comparison(W: FunctionMulticat, S: FunctionMulticat) -> SWMultifunctor:
    """Identity-on-data multifunctor from a twisted multicategory to its strict twin.

    ``phi_f`` carries grade ``c(f)`` of the twist of ``W``; unit isos are trivial.
    """
    if W.sizes != S.sizes or W.grading != S.grading or not S.strict:
        raise MulticatError("twist comparison needs a strict target with the same colours and grading")
    return SWMultifunctor(W, S, {c: c for c in W.colours}, lambda x: x, lambda u: u,
                          lambda f, xs, y: Graded(S.mu(f, xs, y), W.c(f)),
                          lambda X: S.ident(S.unit(X)), "untwist")


def corrupt_multifunctor(F: SWMultifunctor, at: FinMap, delta: int = 1) -> SWMultifunctor:
    """Shift the grade of ``F^phi`` at one map (graded targets only)."""
    base = F.phi

    def phi(f, xs, y):
        u = base(f, xs, y)
        if f == at:
            return Graded(u.fn, (u.s + delta) % F.dst.grading)
        return u

    return SWMultifunctor(F.src, F.dst, F.colour_map, F.obj, F.mor, phi, F.unit_iso, F.name + "!")


def validate_multifunctor(F: SWMultifunctor, caps: Caps | None = None) -> Report:
    """Check hom functoriality, naturality/invertibility of ``F^phi`` and ``F_X``, and the coherences."""
    caps = caps or Caps()
    C, D = F.src, F.dst
    n = min(caps.max_index, C.max_arity)
    budget = caps.max_hom
    rep = Report(f"multifunctor {F.name}")

    for X, Y, cat in _hom_configs(C, n):
        if cat.n_objects == 0:
            continue
        rep.config("F functor")
        G = FinFunctor(cat, D.hom(F.word(X), F.colour_map[Y]), F.obj, F.mor, F.name)
        bad = functor_violation(G, budget)
        rep.check("F functor", bad is None, lambda: _witness(X=X, Y=Y, at=bad))

    for X in C.colours:
        rep.config("F_X invertible")
        u = F.unit_iso(X)
        ok = D.src(u) == D.unit(F.colour_map[X]) and D.dst(u) == F.obj(C.unit(X)) and D.inv(u) is not None
        rep.check("F_X invertible", ok, lambda: _witness(X=(X,), component=u))

    for f, X, Y, Z, dom in _unit_configs(C, n):
        if dom.n_objects == 0:
            continue
        J = f.cod
        target = D.hom(F.word(X), F.colour_map[Z])
        S = FinFunctor(dom, target,
                       lambda p, f=f, J=J: D.mu(f, tuple(F.obj(x) for x in p[:J]), F.obj(p[J])),
                       lambda p, f=f, J=J: D.mu_mor(f, tuple(F.mor(u) for u in p[:J]), F.mor(p[J])))
        T = FinFunctor(dom, target, lambda p, f=f, J=J: F.obj(C.mu(f, tuple(p[:J]), p[J])),
                       lambda p, f=f, J=J: F.mor(C.mu_mor(f, tuple(p[:J]), p[J])))
        t = FinNatTrans(S, T, lambda p, f=f, J=J: F.phi(f, tuple(p[:J]), p[J]), "F^phi")
        rep.config("F^phi natural")
        bad = naturality_violation(t, budget)
        rep.check("F^phi natural", bad is None, lambda: _witness(f=f, X=X, Y=Y, Z=Z, at=bad))
        bad_i = invertibility_violation(t, budget)
        rep.check("F^phi invertible", bad_i is None, lambda: _witness(f=f, X=X, at=bad_i))

    for cfg in _assoc_configs(C, n):
        f, g, dom = cfg["f"], cfg["g"], cfg["domain"]
        if dom.n_objects == 0:
            continue
        rep.config("composition coherence")
        for p in dom.sample_objects(budget):
            xs, ys, z = _split3(p, f.cod, g.cod)
            left, right = multifunctor_assoc_sides(F, f, g, xs, ys, z)
            rep.check("composition coherence", left == right,
                      lambda: _witness(f=f, g=g, X=cfg["X"], Y=cfg["Y"], Z=cfg["Z"], W=cfg["W"],
                                       objects=p, left=left, right=right))

    for X, Y, cat in _hom_configs(C, n):
        if cat.n_objects == 0:
            continue
        rep.config("right unit coherence")
        rep.config("left unit coherence")
        for h in cat.sample_objects(budget):
            left, right = multifunctor_right_unit_sides(F, h)
            rep.check("right unit coherence", left == right,
                      lambda: _witness(X=X, Y=Y, h=h, left=left, right=right))
            left, right = multifunctor_left_unit_sides(F, h)
            rep.check("left unit coherence", left == right,
                      lambda: _witness(X=X, Y=Y, h=h, left=left, right=right))
    return rep


def multifunctor_assoc_sides(F: SWMultifunctor, f, g, xs, ys, z):
    C, D = F.src, F.dst
    Fx = tuple(F.obj(x) for x in xs)
    Fy = tuple(F.obj(y) for y in ys)
    Fz = F.obj(z)
    fg = compose(f, g)
    inner = []
    for k in range(g.cod):
        r = restrict(f, g, k)
        inner.append(F.phi(r.map, tuple(xs[j] for j in r.cod_table), ys[k]))
    left = D.comp(D.mu_mor(fg, tuple(inner), D.ident(Fz)),
                  F.phi(fg, C.lay(f, g, xs, ys), z),
                  F.mor(C.nu(f, g, xs, ys, z)))
    right = D.comp(D.nu(f, g, Fx, Fy, Fz),
                   D.mu_mor(f, tuple(D.ident(x) for x in Fx), F.phi(g, ys, z)),
                   F.phi(f, xs, C.mu(g, ys, z)))
    return left, right


def multifunctor_right_unit_sides(F: SWMultifunctor, h):
    C, D = F.src, F.dst
    X, Y = C.typeof(h)
    nab = terminal(len(X))
    left = D.comp(D.mu_mor(nab, (D.ident(F.obj(h)),), F.unit_iso(Y)),
                  F.phi(nab, (h,), C.unit(Y)),
                  F.mor(C.zeta_u(h)))
    return left, D.zeta_u(F.obj(h))


def multifunctor_left_unit_sides(F: SWMultifunctor, h):
    C, D = F.src, F.dst
    X, Y = C.typeof(h)
    I = identity(len(X))
    left = D.comp(D.mu_mor(I, tuple(F.unit_iso(c) for c in X), D.ident(F.obj(h))),
                  F.phi(I, C.units(X), h),
                  F.mor(C.theta(h)))
    return left, D.theta(F.obj(h))
