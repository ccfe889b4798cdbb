import io
import json
import pathlib
import subprocess
import sys

import pytest

from biprops.cli import run

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_terminal_validates():
    code, out, _ = call("validate-multicat", FIX / "terminal")
    assert code == 0
    assert out.rstrip().endswith("RESULT PASS")


def test_corrupt_associator_reports_pentagon():
    code, out, _ = call("--format", "structured", "check-biprop", FIX / "corrupt-assoc")
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    fails = [law for law in doc["laws"] if not law["passed"]]
    assert [law["tag"] for law in fails] == ["pentagon"]
    assert fails[0]["witness"].startswith("words=")


def test_reports_are_deterministic():
    first = call("check-biprop", FIX / "catprop-reversed")
    second = call("check-biprop", FIX / "catprop-reversed")
    assert first == second
    assert first[0] == 1 and "tensor strict associativity" in first[1]


def test_schema_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("validate-multicat", bad)[0] == 2
    bad.write_text(json.dumps({"kind": "mystery"}))
    assert call("validate-multicat", bad)[0] == 2
    bad.write_text(json.dumps({"kind": "multicat", "caps": {"max_word": 0}, "multicat": {"builtin": "terminal"}}))
    assert call("validate-multicat", bad)[0] == 2
    # a registry is not a biprop
    assert call("check-biprop", FIX / "registry")[0] == 2
    # the target of the first functor is not the source of the second
    assert call("compose-morphisms", FIX / "reverse", FIX / "untwist")[0] == 2
    assert call("act", FIX / "twisted", "--hom", "X.X,X", "--side", "l", "--perm", "1,1")[0] == 2


def test_tampered_tables_rejected(tmp_path):
    doc = json.loads((FIX / "finite-set-tables.json").read_text())
    row = doc["multicat"]["mu"][5]
    row["result"] = (row["result"] + 1) % 4
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    code, _, err = call("validate-multicat", path)
    assert code == 2 and "schema error" in err


def test_cap_exceeded():
    code, _, err = call("envelope", FIX / "finite-set", "--dump-hom", "X.X.X.X", "X")
    assert code == 3 and "cap exceeded" in err


def test_dump_hom_is_a_finite_category():
    code, out, _ = call("envelope", FIX / "finite-set", "--dump-hom", "X", "X.X")
    assert code == 0
    header, body = out.split("\n", 1)
    assert header.startswith("# hom (X) -> (X,X)")
    doc = json.loads(body)
    assert doc["objects"] == 16 and len(doc["labels"]) == 16


def test_act():
    code, out, _ = call("act", FIX / "twisted", "--hom", "X.X,X", "--side", "l", "--perm", "1,0")
    assert code == 0
    # swapping the arguments of (x, y) -> x and not y gives (x, y) -> y and not x
    assert "<X,X->X:0100> |-> FinMap(2->1: [0, 0]):<X,X->X:0010>" in out


def test_compose_morphisms():
    code, out, _ = call("compose-morphisms", FIX / "untwist", FIX / "reverse", "--check")
    assert code == 0, out
    code, out, _ = call("compose-morphisms", FIX / "corrupt-untwist", FIX / "reverse", "--check")
    assert code == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biprops.cli", "--format", "structured",
                           "validate-multicat", str(FIX / "twisted")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True


@pytest.mark.parametrize("name", ["twisted", "finite-set-tables"])
def test_fixtures_validate(name):
    assert call("validate-multicat", FIX / name)[0] == 0
