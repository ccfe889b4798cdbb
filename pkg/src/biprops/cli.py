"""Command-line front end: load JSON fixtures, build envelopes, run law suites, apply actions.

Exit codes: 0 every check passes, 1 a check fails, 2 the fixture is malformed,
3 a configuration exceeds a size cap.  Output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Mapping

from .biprop import (BipropError, check_biprop, compose_morphisms, validate_morphism)
from .catprop import (CatpropBiprop, CatRegistry, check_catprop,
                      default_registry, reversed_graph)
from .configs import Caps, fmt_word, words
from .envelope import EnvelopeBiprop, EnvelopeError, check_functoriality, env_morphism
from .fincat import CapExceeded, FinCatError, category_from_dict, category_to_dict, discrete, TERMINAL
from .finord import FinMap, FinOrdError, graph
from .multicat import (MulticatError, corrupt_multifunctor, finite_set_multicat, identity_multifunctor,
                       multicat_from_tables, relabel_multifunctor, reverse_multifunctor,
                       terminal_inclusion, terminal_multicat, twist_comparison, validate_multicat)
from .report import Report, merge_reports
from .symaction import check_actions, l_action, r_action

EXIT_PASS, EXIT_FAIL, EXIT_SCHEMA, EXIT_CAP = 0, 1, 2, 3
KINDS = ("multicat", "multifunctor", "biprop-reference", "registry")
DEFAULT_CAPS = Caps(max_word=3, max_index=3, max_hom=4)


class SchemaError(ValueError):
    pass


class CheckFailed(Exception):
    pass


# -- fixture parsing ------------------------------------------------------------------------

def _get(d: Mapping, key: str, typ, where: str, default: Any = ...):
    if not isinstance(d, Mapping):
        raise SchemaError(f"{where}: expected an object")
    if key not in d:
        if default is ...:
            raise SchemaError(f"{where}: missing field {key!r}")
        return default
    v = d[key]
    if typ is int and isinstance(v, bool) or not isinstance(v, typ):
        raise SchemaError(f"{where}.{key}: expected {getattr(typ, '__name__', typ)}")
    return v


def parse_caps(doc: Mapping) -> Caps:
    """The optional ``caps`` block; missing fields take the defaults 3, 3, 4."""
    block = _get(doc, "caps", dict, "fixture", {})
    vals = {}
    for key, default in (("max_word", DEFAULT_CAPS.max_word), ("max_index", DEFAULT_CAPS.max_index)):
        v = _get(block, key, int, "caps", default)
        if v < 1:
            raise SchemaError(f"caps.{key} must be positive")
        vals[key] = v
    for key, default in (("max_hom", DEFAULT_CAPS.max_hom), ("max_letters", None)):
        v = _get(block, key, (int, type(None)), "caps", default)
        if v is not None and (isinstance(v, bool) or v < 1):
            raise SchemaError(f"caps.{key} must be positive or null")
        vals[key] = v
    return Caps(**vals)


def parse_map(d: Mapping, where: str) -> FinMap:
    image = _get(d, "image", list, where)
    cod = _get(d, "cod", int, where)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in image):
        raise SchemaError(f"{where}.image: expected integers")
    return FinMap(len(image), cod, tuple(image))


def load_document(path: str) -> dict:
    """Read a fixture; ``fixtures/name`` also finds ``fixtures/name.json``."""
    if not os.path.exists(path) and os.path.exists(path + ".json"):
        path += ".json"
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    kind = _get(doc, "kind", str, "fixture")
    if kind not in KINDS:
        raise SchemaError(f"unknown fixture kind {kind!r}; expected one of {', '.join(KINDS)}")
    return doc


class Loader:
    """Builds objects from fixture payloads; equal multicategory payloads share one instance."""

    def __init__(self):
        self._multicats: dict = {}

    def multicat(self, payload: Mapping, caps: Caps):
        key = json.dumps(payload, sort_keys=True)
        C = self._multicats.get(key)
        if C is None:
            C = self._multicats[key] = self._build_multicat(payload, caps)
        return C

    def _build_multicat(self, payload: Mapping, caps: Caps):
        if not isinstance(payload, Mapping):
            raise SchemaError("multicat: expected an object")
        if "homs" in payload:
            for key, typ in (("colours", list), ("max_arity", int), ("homs", list), ("units", dict), ("mu", list)):
                _get(payload, key, typ, "multicat")
            try:
                return multicat_from_tables(payload, caps)
            except (KeyError, TypeError, IndexError) as e:
                raise SchemaError(f"multicat tables: malformed entry ({type(e).__name__}: {e})") from None
        builtin = _get(payload, "builtin", str, "multicat")
        if builtin == "terminal":
            return terminal_multicat()
        if builtin != "finite-set":
            raise SchemaError(f"multicat.builtin: unknown family {builtin!r}")
        sizes = _get(payload, "sizes", dict, "multicat")
        if not sizes or not all(isinstance(n, int) and not isinstance(n, bool) for n in sizes.values()):
            raise SchemaError("multicat.sizes: expected a non-empty object of integers")
        twist = _get(payload, "twist", (str, type(None)), "multicat", None)
        if twist is not None and twist != "graph":
            raise SchemaError(f"multicat.twist: unknown twist {twist!r}")
        defects = {}
        for k, e in enumerate(_get(payload, "nu_defects", list, "multicat", [])):
            where = f"multicat.nu_defects[{k}]"
            f, g = parse_map(_get(e, "f", dict, where), where + ".f"), parse_map(_get(e, "g", dict, where), where + ".g")
            if f.cod != g.dom:
                raise SchemaError(f"{where}: f and g are not composable")
            defects[(f, g)] = _get(e, "delta", int, where)
        return finite_set_multicat(sizes, _get(payload, "max_arity", int, "multicat"),
                                   _get(payload, "grading", int, "multicat"), twist, defects,
                                   _get(payload, "name", str, "multicat", None))

    def multifunctor(self, doc: Mapping, caps: Caps):
        S = self.multicat(_get(doc, "source", dict, "fixture"), caps)
        T = self.multicat(_get(doc, "target", dict, "fixture"), caps)
        payload = _get(doc, "functor", dict, "fixture")
        try:
            F = self._build_multifunctor(S, T, payload)
        except (KeyError, AttributeError) as e:
            raise SchemaError(f"functor: does not fit its source and target ({type(e).__name__}: {e})") from None
        corrupt = _get(doc, "corrupt", dict, "fixture", None)
        if corrupt is not None:
            F = corrupt_multifunctor(F, parse_map(_get(corrupt, "at", dict, "corrupt"), "corrupt.at"),
                                     _get(corrupt, "delta", int, "corrupt"))
        return F

    def _build_multifunctor(self, S, T, payload: Mapping):
        builtin = _get(payload, "builtin", str, "functor")
        if builtin == "identity":
            if S is not T:
                raise SchemaError("functor.identity: source and target differ")
            F = identity_multifunctor(S)
        elif builtin == "relabel":
            F = relabel_multifunctor(S, T, _get(payload, "colour_map", dict, "functor"))
        elif builtin == "terminal-inclusion":
            F = terminal_inclusion(S, T, _get(payload, "colour", str, "functor"))
        elif builtin == "reverse":
            if S is not T:
                raise SchemaError("functor.reverse: source and target differ")
            F = reverse_multifunctor(S)
        elif builtin == "twist-comparison":
            F = twist_comparison(S, T)
        else:
            raise SchemaError(f"functor.builtin: unknown multifunctor {builtin!r}")
        return F

    def registry(self, payload: Mapping) -> CatRegistry:
        limits = dict(max_objects=_get(payload, "max_objects", int, "registry", 2),
                      max_morphisms=_get(payload, "max_morphisms", int, "registry", 4))
        if "categories" in payload:
            cats = {}
            for name, d in _get(payload, "categories", dict, "registry").items():
                try:
                    cats[name] = category_from_dict(d, name)
                except (KeyError, TypeError, ValueError) as e:
                    raise SchemaError(f"registry.categories.{name}: malformed ({e})") from None
            return CatRegistry(cats, **limits)
        known = {"1": TERMINAL, "D2": discrete(2, "D2")}
        names = _get(payload, "names", list, "registry")
        for n in names:
            if n not in known:
                raise SchemaError(f"registry.names: unknown category {n!r}; known are {', '.join(known)}")
        return CatRegistry({n: known[n] for n in names}, **limits)

    def biprop(self, doc: Mapping, caps: Caps):
        payload = _get(doc, "biprop", dict, "fixture")
        builtin = _get(payload, "builtin", str, "biprop")
        if builtin == "envelope":
            return EnvelopeBiprop(self.multicat(_get(payload, "multicat", dict, "biprop"), caps))
        if builtin == "catprop":
            g = _get(payload, "graph", str, "biprop", "lex")
            if g not in ("lex", "reversed"):
                raise SchemaError(f"biprop.graph: expected 'lex' or 'reversed', got {g!r}")
            return CatpropBiprop(self.registry(_get(payload, "registry", dict, "biprop")),
                                 graph_fn=graph if g == "lex" else reversed_graph)
        raise SchemaError(f"biprop.builtin: unknown biprop {builtin!r}")


def _expect(doc: Mapping, *kinds: str):
    if doc["kind"] not in kinds:
        raise SchemaError(f"fixture kind {doc['kind']!r} not accepted here; expected {' or '.join(kinds)}")


def parse_word(s: str, colours) -> tuple:
    """Words are dot-separated colour names; the empty string is the empty word."""
    w = tuple(s.split(".")) if s else ()
    for c in w:
        if c not in colours:
            raise SchemaError(f"unknown colour {c!r} in word {s!r}")
    return w


def parse_perm(s: str) -> FinMap:
    try:
        image = tuple(int(v) for v in s.split(",")) if s else ()
    except ValueError:
        raise SchemaError(f"permutation {s!r}: expected comma-separated integers") from None
    beta = FinMap(len(image), len(image), image) if all(0 <= v < len(image) for v in image) else None
    if beta is None or not beta.is_bijection:
        raise SchemaError(f"permutation {s!r} is not a bijection")
    return beta


# -- commands ----------------------------------------------------------------------------------

def _emit(out, rep: Report, fmt: str):
    out.write((rep.structured() if fmt == "structured" else rep.text()) + "\n")
    if not rep.passed:
        raise CheckFailed


def _emit_doc(out, doc: dict, lines: list[str], fmt: str):
    out.write((json.dumps(doc, indent=2) if fmt == "structured" else "\n".join(lines)) + "\n")


def cmd_validate_multicat(args, out):
    doc = load_document(args.file)
    _expect(doc, "multicat")
    caps = parse_caps(doc)
    C = Loader().multicat(_get(doc, "multicat", dict, "fixture"), caps)
    _emit(out, validate_multicat(C, caps), args.format)


def cmd_envelope(args, out):
    doc = load_document(args.file)
    _expect(doc, "multicat")
    caps = parse_caps(doc)
    C = Loader().multicat(_get(doc, "multicat", dict, "fixture"), caps)
    bp = EnvelopeBiprop(C)
    if args.dump_hom:
        A, B = (parse_word(w, C.colours) for w in args.dump_hom)
        H = bp.hom(A, B)
        data = category_to_dict(H)
        data["labels"] = [repr(x) for x in H.objects()]
        lines = [f"# hom {fmt_word(A)} -> {fmt_word(B)} in {bp.name}", json.dumps(data)]
        _emit_doc(out, {"hom": [list(A), list(B)], "category": data}, lines, args.format)
    if args.check:
        rep = merge_reports(f"envelope of {C.name}", [validate_multicat(C, caps), check_biprop(bp, caps)])
        _emit(out, rep, args.format)
    if not args.check and not args.dump_hom:
        rows, lines = [], [f"# {bp.name}: colours {', '.join(C.colours)}, arity cap {C.max_arity}"]
        n = min(2, caps.max_word, C.max_arity)
        for a in range(n + 1):
            for A in words(C.colours, a):
                for b in range(n + 1):
                    for B in words(C.colours, b):
                        H = bp.hom(A, B)
                        rows.append({"source": list(A), "target": list(B),
                                     "objects": H.n_objects, "morphisms": H.n_morphisms})
                        lines.append(f"hom {fmt_word(A)} -> {fmt_word(B)}: "
                                     f"objects={H.n_objects} morphisms={H.n_morphisms}")
        _emit_doc(out, {"biprop": bp.name, "homs": rows}, lines, args.format)


def cmd_check_biprop(args, out):
    doc = load_document(args.file)
    _expect(doc, "biprop-reference")
    caps = parse_caps(doc)
    bp = Loader().biprop(doc, caps)
    if isinstance(bp, CatpropBiprop):
        rep = check_catprop(bp.reg, caps, bp.graph_fn)
    else:
        rep = check_biprop(bp, caps)
    if args.actions:
        rep.merge(check_actions(bp, caps))
    _emit(out, rep, args.format)


def cmd_act(args, out):
    doc = load_document(args.file)
    _expect(doc, "multicat", "biprop-reference")
    caps = parse_caps(doc)
    loader = Loader()
    if doc["kind"] == "multicat":
        bp = EnvelopeBiprop(loader.multicat(_get(doc, "multicat", dict, "fixture"), caps))
    else:
        bp = loader.biprop(doc, caps)
    if args.hom.count(",") != 1:
        raise SchemaError(f"--hom {args.hom!r}: expected two words separated by one comma")
    A, B = (parse_word(w, bp.colours) for w in args.hom.split(","))
    beta = parse_perm(args.perm)
    if args.side == "l":
        if beta.dom != len(A):
            raise SchemaError(f"permutation of {beta.dom} letters for a source word of {len(A)}")
        # the domain of l_beta is hom(Z, B) with Z = A; the blocks Y are Z read through beta
        F = l_action(bp, beta, tuple((A[beta.image[i]],) for i in range(beta.dom)), B)
    else:
        if beta.dom != len(B):
            raise SchemaError(f"permutation of {beta.dom} letters for a target word of {len(B)}")
        F = r_action(bp, beta, tuple((c,) for c in B), A)
    budget = None if args.all else caps.max_hom
    objs = [(x, F.obj(x)) for x in F.src.sample_objects(budget)]
    mors = [(u, F.mor(u)) for u in F.src.sample_morphisms(budget)]
    lines = [f"# {F.name} on hom {fmt_word(A)} -> {fmt_word(B)} of {bp.name}"]
    lines += [f"object {F.src.object_rank(x)}: {x!r} |-> {y!r}" for x, y in objs]
    lines += [f"morphism {F.src.morphism_rank(u)}: {u!r} |-> {v!r}" for u, v in mors]
    _emit_doc(out, {"action": F.name, "hom": [list(A), list(B)],
                    "objects": [{"rank": F.src.object_rank(x), "source": repr(x), "image": repr(y)} for x, y in objs],
                    "morphisms": [{"rank": F.src.morphism_rank(u), "source": repr(u), "image": repr(v)}
                                  for u, v in mors]},
              lines, args.format)


def _registry_from_args(args, loader: Loader) -> CatRegistry:
    if args.registry_file:
        doc = load_document(args.registry_file)
        _expect(doc, "registry")
        return loader.registry(_get(doc, "registry", dict, "fixture"))
    names = tuple(n for n in args.registry.split(",") if n)
    try:
        return default_registry(names)
    except KeyError as e:
        raise SchemaError(f"--registry: unknown category {e.args[0]!r}; known are 1, D2") from None


def cmd_catprop_demo(args, out):
    reg = _registry_from_args(args, Loader())
    graph_fn = reversed_graph if args.reversed_graph else graph
    if args.check:
        _emit(out, check_catprop(reg, graph_fn=graph_fn), args.format)
        return
    bp = CatpropBiprop(reg, graph_fn=graph_fn)
    rows, lines = [], [f"# Cat example on {', '.join(reg.colours)}"]
    for a in range(2):
        for A in words(reg.colours, a + 1):
            for B in words(reg.colours, a + 1):
                H = bp.hom(A, B)
                rows.append({"source": list(A), "target": list(B),
                             "objects": H.n_objects, "morphisms": H.n_morphisms})
                lines.append(f"hom {fmt_word(A)} -> {fmt_word(B)}: objects={H.n_objects} morphisms={H.n_morphisms}")
    _emit_doc(out, {"registry": list(reg.colours), "homs": rows}, lines, args.format)


def cmd_compose_morphisms(args, out):
    loader = Loader()
    docs = [load_document(p) for p in (args.first, args.second)]
    for d in docs:
        _expect(d, "multifunctor")
    caps = parse_caps(docs[0])
    F, G = (loader.multifunctor(d, caps) for d in docs)
    if F.dst is not G.src:
        raise SchemaError(f"{F.name} and {G.name} are not composable: target and source fixtures differ")
    P, Q, R = EnvelopeBiprop(F.src), EnvelopeBiprop(F.dst), EnvelopeBiprop(G.dst)
    comp = compose_morphisms(env_morphism(F, P, Q), env_morphism(G, Q, R))
    if args.check:
        rep = merge_reports(f"composite {comp.name}", [validate_morphism(comp, caps), check_functoriality(F, G, caps)])
        _emit(out, rep, args.format)
        return
    cmap = {c: comp.colour_map[c] for c in F.src.colours}
    lines = [f"# {comp.name}: {P.name} -> {R.name}"] + [f"colour {c} |-> {d}" for c, d in cmap.items()]
    _emit_doc(out, {"morphism": comp.name, "source": P.name, "target": R.name, "colour_map": cmap},
              lines, args.format)


# -- entry point -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biprops", description="Build and check biprop envelopes on finite fixtures.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate-multicat", help="check the multicategory relations of a fixture")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate_multicat)

    s = sub.add_parser("envelope", help="build the envelope of a multicategory fixture")
    s.add_argument("file")
    s.add_argument("--check", action="store_true", help="run the multicategory and biprop suites")
    s.add_argument("--dump-hom", nargs=2, metavar=("A", "B"), help="print one hom category (dot-separated words)")
    s.set_defaults(run=cmd_envelope)

    s = sub.add_parser("check-biprop", help="run the biprop suite on a biprop-reference fixture")
    s.add_argument("file")
    s.add_argument("--actions", action="store_true", help="also run the symmetric-action suite")
    s.set_defaults(run=cmd_check_biprop)

    s = sub.add_parser("act", help="apply l_beta or r_beta to a hom")
    s.add_argument("file")
    s.add_argument("--hom", required=True, help="source and target words, e.g. X.X,X")
    s.add_argument("--side", choices=("l", "r"), required=True)
    s.add_argument("--perm", required=True, help="bijection as an image sequence, e.g. 1,0")
    s.add_argument("--all", action="store_true", help="print every object and morphism, not a sample")
    s.set_defaults(run=cmd_act)

    s = sub.add_parser("catprop-demo", help="the biprop of finite categories")
    s.add_argument("--check", action="store_true")
    s.add_argument("--registry", default="1,D2", help="comma-separated built-in categories (1, D2)")
    s.add_argument("--registry-file", help="a registry fixture")
    s.add_argument("--reversed-graph", action="store_true", help="use the order-reversing graph (fails)")
    s.set_defaults(run=cmd_catprop_demo)

    s = sub.add_parser("compose-morphisms", help="compose the envelope morphisms of two multifunctors")
    s.add_argument("first", metavar="F")
    s.add_argument("second", metavar="G")
    s.add_argument("--check", action="store_true")
    s.set_defaults(run=cmd_compose_morphisms)
    return p


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        args.run(args, out)
    except CheckFailed:
        return EXIT_FAIL
    except CapExceeded as e:
        err.write(f"cap exceeded: {e}\n")
        return EXIT_CAP
    except EnvelopeError as e:
        err.write(f"check failed: {e}\n")
        return EXIT_FAIL
    except (SchemaError, MulticatError, BipropError, FinCatError, FinOrdError) as e:
        err.write(f"schema error: {e}\n")
        return EXIT_SCHEMA
    return EXIT_PASS


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
