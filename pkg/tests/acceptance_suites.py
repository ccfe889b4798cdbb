"""The acceptance suites, each returning a Report.

Run as a script to print every report as JSON; the determinism criterion
compares that output, produced in a fresh interpreter, with in-process runs.
"""

import json
import sys
import time
from itertools import product

from biprops.biprop import (check_bicategory, check_derived_identities, check_tensor_axioms, compose_morphisms,
                            identity_morphism, morphism_difference, validate_morphism)
from biprops.catprop import check_catprop, default_registry
from biprops.configs import Caps, fmt_map, fmt_word
from biprops.envelope import EnvelopeBiprop, build_envelope, check_functoriality, env_morphism
from biprops.finord import FinMap, all_bijections, all_maps, check_graph_functoriality, graph, identity, terminal
from biprops.multicat import (finite_set_multicat, relabel_multifunctor, reverse_multifunctor, twist_comparison,
                              validate_multicat)
from biprops.report import Report, merge_reports
from biprops.symaction import check_actions, l_action, permute_arguments_oracle, r_action, retag_outputs_oracle

ENVELOPE_CAPS = Caps(max_word=2, max_index=2, max_hom=4)
PENTAGON_CAPS = Caps(max_word=2, max_index=2, max_hom=64)
MULTICAT_CAPS = Caps(max_word=3, max_index=3, max_hom=4)
MORPHISM_CAPS = Caps(max_word=2, max_index=2, max_hom=None)
ACTION_CAPS = Caps(max_word=3, max_index=3, max_hom=3)


def finite_set():
    return finite_set_multicat({"X": 2}, max_arity=3)


def twisted():
    return finite_set_multicat({"X": 2}, max_arity=3, grading=3, twist="graph", name="twisted")


def graded():
    return finite_set_multicat({"X": 2}, max_arity=3, grading=3, name="graded")


def corrupted():
    f, g = FinMap(2, 2, (0, 1)), FinMap(2, 1, (0, 0))
    return finite_set_multicat({"X": 2}, max_arity=3, grading=2, nu_defects={(f, g): 1}, name="corrupt")


def graph_functoriality() -> Report:
    rep = Report("graph functoriality, all sizes up to 4")
    maps = {(a, b): list(all_maps(a, b)) for a, b in product(range(5), repeat=2)}
    for I, K, L in product(range(5), repeat=3):
        rep.config("graph functoriality")
        for f in maps[I, K]:
            for h in maps[K, L]:
                rep.check("graph functoriality", check_graph_functoriality(f, h),
                          lambda: f"f={fmt_map(f)} h={fmt_map(h)}")
    return rep


def graph_of_terminal() -> Report:
    rep = Report("graph of the terminal map")
    for n in range(7):
        rep.config("graph of terminal map is identity")
        rep.check("graph of terminal map is identity", graph(terminal(n)) == identity(n), f"n={n}")
    return rep


def envelope_suite() -> Report:
    bp = build_envelope(finite_set(), ENVELOPE_CAPS)
    return merge_reports("envelope of the finite-set multicategory",
                         [check_bicategory(bp, ENVELOPE_CAPS), check_tensor_axioms(bp, ENVELOPE_CAPS),
                          check_derived_identities(bp, ENVELOPE_CAPS)])


def _only(rep: Report, tags) -> Report:
    out = Report(rep.title)
    for t in tags:
        out.laws[t] = rep[t]
    return out


def pentagon() -> Report:
    """The envelope pentagon, next to the multicategory pentagon it reduces to, on a weak instance."""
    W = twisted()
    rep = Report("pentagon")
    rep.merge(_only(check_bicategory(EnvelopeBiprop(W), PENTAGON_CAPS), ["pentagon"]))
    rep.merge(_only(validate_multicat(W, MULTICAT_CAPS), ["nu pentagon"]))
    # a single corrupted associativity iso breaks both, and nothing else
    bad_env = check_bicategory(EnvelopeBiprop(corrupted()), ENVELOPE_CAPS)
    bad_mc = validate_multicat(corrupted(), ENVELOPE_CAPS)
    rep.config("corruption is seen by both pentagons")
    rep.check("corruption is seen by both pentagons",
              bad_env.failures() == ["pentagon"] and bad_mc.failures() == ["nu pentagon"],
              lambda: f"envelope={bad_env.failures()} multicategory={bad_mc.failures()}")
    return rep


def unitors() -> Report:
    rep = check_bicategory(EnvelopeBiprop(twisted()), PENTAGON_CAPS)
    return _only(rep, ["left unitor natural", "left unitor invertible", "right unitor natural",
                       "right unitor invertible", "unit triangle", "unitors agree at units"])


def envelope_functor() -> Report:
    W, S = twisted(), graded()
    F, G = twist_comparison(W, S), reverse_multifunctor(S)
    rep = check_functoriality(F, G, MORPHISM_CAPS)
    H = relabel_multifunctor(S, S, {"X": "X"})
    rep.merge(check_functoriality(G, H, MORPHISM_CAPS))
    rep.merge(validate_morphism(env_morphism(F), ENVELOPE_CAPS))
    return rep


def morphism_algebra() -> Report:
    W, S = twisted(), graded()
    P, Q = EnvelopeBiprop(W), EnvelopeBiprop(S)
    F = env_morphism(twist_comparison(W, S), P, Q)
    G = env_morphism(reverse_multifunctor(S), Q, Q)
    H = env_morphism(relabel_multifunctor(S, S, {"X": "X"}), Q, Q)
    rep = Report("morphism algebra")
    for tag, lhs, rhs in (
            ("composition associative", compose_morphisms(compose_morphisms(F, G), H),
             compose_morphisms(F, compose_morphisms(G, H))),
            ("left identity", compose_morphisms(identity_morphism(P), F), F),
            ("right identity", compose_morphisms(F, identity_morphism(Q)), F),
            ("identity is two-sided", compose_morphisms(identity_morphism(Q), identity_morphism(Q)),
             identity_morphism(Q))):
        rep.config(tag)
        diff = morphism_difference(lhs, rhs, MORPHISM_CAPS)
        rep.check(tag, diff is None, lambda: repr(diff))
    return rep


def cat_example() -> Report:
    return check_catprop(default_registry(("1", "D2")))


def action_oracle() -> Report:
    C = finite_set()
    bp = EnvelopeBiprop(C)
    rep = Report("actions against direct oracles")
    for n in (2, 3):
        Ys = (("X",),) * n
        letters = ("X",) * n
        for beta in all_bijections(n):
            for k in range(3):
                other = ("X",) * k
                H = bp.hom(letters, other)
                if H.n_objects:
                    rep.config("left action permutes arguments")
                    lf = l_action(bp, beta, Ys, other)
                    for h in H.objects():
                        rep.check("left action permutes arguments", lf.obj(h) == permute_arguments_oracle(C, beta, h),
                                  lambda: f"beta={fmt_map(beta)} other={fmt_word(other)} h={h!r}")
                H = bp.hom(other, letters)
                if H.n_objects:
                    rep.config("right action retags outputs")
                    rf = r_action(bp, beta, Ys, other)
                    for h in H.objects():
                        rep.check("right action retags outputs", rf.obj(h) == retag_outputs_oracle(beta, h),
                                  lambda: f"beta={fmt_map(beta)} other={fmt_word(other)} h={h!r}")
    return rep


def weak_actions() -> Report:
    return check_actions(EnvelopeBiprop(twisted()), ACTION_CAPS)


SUITES = {
    "graph functoriality": graph_functoriality,
    "graph of terminal map": graph_of_terminal,
    "envelope axiom suite": envelope_suite,
    "pentagon": pentagon,
    "unitors": unitors,
    "envelope functor": envelope_functor,
    "morphism algebra": morphism_algebra,
    "cat example": cat_example,
    "action oracle": action_oracle,
    "weak action coherence": weak_actions,
}


def run_all() -> dict:
    out = {}
    for name, fn in SUITES.items():
        start = time.perf_counter()
        text = fn().text()
        out[name] = {"text": text, "seconds": time.perf_counter() - start}
    return out


if __name__ == "__main__":
    json.dump(run_all(), sys.stdout, indent=1)
