from math import comb

import pytest

from biprops.biprop import (TENSOR_TAGS, DERIVED_TAGS, chains, check_bicategory, check_derived_identities,
                            check_tensor_axioms, pentagon_sides, permute_blocks, triangle_sides, word_tuples)
from biprops.configs import Caps, block_families
from biprops.envelope import EnvelopeBiprop
from biprops.finord import FinMap
from biprops.multicat import finite_set_multicat
from biprops.report import LawResult, Report, merge_reports

from conftest import TINY


def test_caps_validation():
    with pytest.raises(ValueError):
        Caps(max_hom=0)
    with pytest.raises(ValueError):
        Caps(max_word=-1)
    assert Caps() == Caps(3, 3, 4, None)
    assert Caps(max_letters=2).letters_ok(2) and not Caps(max_letters=2).letters_ok(3)


def test_block_family_count():
    # one colour: compositions of at most t letters into n blocks
    for n in range(4):
        for t in range(4):
            want = sum(comb(k + n - 1, n - 1) if n else int(k == 0) for k in range(t + 1))
            assert sum(1 for _ in block_families(("X",), n, t)) == want


def test_permute_blocks():
    beta = FinMap(3, 3, (2, 0, 1))
    assert permute_blocks(beta, (("a",), ("b",), ("c",))) == (("b",), ("c",), ("a",))


def test_word_tuples_skip_empty_homs(env_fs2):
    # hom(A, ()) is empty unless A is empty
    for ws in word_tuples(env_fs2, TINY, 3):
        assert all(env_fs2.hom(ws[k], ws[k + 1]).n_objects for k in range(2))
    assert ((), ("X",), ()) not in set(word_tuples(env_fs2, TINY, 3))


def test_chains_respect_letter_cap(env_fs2):
    caps = Caps(2, 2, 2, max_letters=2)
    for L in range(3):
        for legs in chains(env_fs2, caps, 2, L):
            assert sum(len(b) for leg in legs for b in leg[1]) <= 2


def test_report_lines():
    rep = Report("demo")
    rep.config("law")
    rep.check("law", True)
    rep.check("law", False, lambda: "first")
    rep.check("law", False, "second")
    assert rep.failures() == ["law"]
    assert rep["law"].witness == "first"
    assert rep.text().splitlines()[1] == f"{'law':<34} FAIL configs=1 instances=3 witness: first"
    assert rep.text().endswith("RESULT FAIL")
    merged = merge_reports("m", [rep, Report()])
    assert merged["law"].instances == 3 and not merged.passed
    assert LawResult("ok", configs=2, instances=5).line() == f"{'ok':<34} PASS configs=2 instances=5"


def test_envelope_bicategory_laws(env_fs2):
    rep = check_bicategory(env_fs2, TINY)
    assert rep.passed, rep.text()
    for tag in ("pentagon", "unit triangle", "unitors agree at units", "associator natural"):
        assert rep[tag].instances > 0


def test_envelope_tensor_axioms_and_derived(env_twisted):
    rep = check_tensor_axioms(env_twisted, TINY)
    assert rep.passed, rep.text()
    assert set(TENSOR_TAGS.values()) <= set(rep.laws)
    rep = check_derived_identities(env_twisted, TINY)
    assert rep.passed, rep.text()
    assert set(DERIVED_TAGS.values()) <= set(rep.laws)


def test_pentagon_sides_differ_on_corruption():
    f, g = FinMap(2, 2, (0, 1)), FinMap(2, 1, (0, 0))
    C = finite_set_multicat({"X": 2}, grading=2, nu_defects={(f, g): 1}, name="corrupt")
    bp = EnvelopeBiprop(C)
    rep = check_bicategory(bp, TINY)
    assert rep.failures() == ["pentagon"]
    assert "words=" in rep["pentagon"].witness


def test_sides_are_parallel(env_twisted):
    bp = env_twisted
    A = B = C = D = E = ("X",)
    H = bp.hom(A, A)
    xs = list(H.sample_objects(2))
    left, right = pentagon_sides(bp, (A, B, C, D, E), xs[0], xs[1], xs[0], xs[1])
    assert H.src(left) == H.src(right) and H.dst(left) == H.dst(right)
    left, right = triangle_sides(bp, (A, B, C), xs[0], xs[1])
    assert left == right
