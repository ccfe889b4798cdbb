"""Regenerate the JSON fixtures under fixtures/ (deterministic output)."""

import json
import pathlib

from biprops.multicat import finite_set_multicat, table_document, terminal_multicat

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

FINITE_SET = {"builtin": "finite-set", "sizes": {"X": 2}, "max_arity": 3, "grading": 1, "twist": None}
TWISTED = {"builtin": "finite-set", "sizes": {"X": 2}, "max_arity": 3, "grading": 3, "twist": "graph",
           "name": "twisted"}
STRICT_GRADED = {"builtin": "finite-set", "sizes": {"X": 2}, "max_arity": 3, "grading": 3, "twist": None,
                 "name": "graded"}
SMALL = {"max_word": 2, "max_index": 2, "max_hom": 4}
TINY = {"max_word": 2, "max_index": 2, "max_hom": 2}

FIXTURES = {
    "terminal": {"kind": "multicat", "caps": {"max_word": 3, "max_index": 3, "max_hom": 4},
                 "multicat": table_document(terminal_multicat(), 3)},
    "finite-set": {"kind": "multicat", "caps": SMALL, "multicat": FINITE_SET},
    "finite-set-tables": {"kind": "multicat", "caps": {"max_word": 2, "max_index": 2, "max_hom": 4},
                          "multicat": table_document(finite_set_multicat({"X": 2}, max_arity=2), 2)},
    "twisted": {"kind": "multicat", "caps": SMALL, "multicat": TWISTED},
    "corrupt-assoc": {
        "kind": "biprop-reference", "caps": TINY,
        "biprop": {"builtin": "envelope", "multicat": {
            "builtin": "finite-set", "sizes": {"X": 2}, "max_arity": 3, "grading": 2, "twist": None,
            "name": "corrupt", "nu_defects": [
                {"f": {"image": [0, 1], "cod": 2}, "g": {"image": [0, 0], "cod": 1}, "delta": 1}]}}},
    "envelope-ref": {"kind": "biprop-reference", "caps": TINY,
                     "biprop": {"builtin": "envelope", "multicat": FINITE_SET}},
    "registry": {"kind": "registry", "registry": {"names": ["1", "D2"]}},
    "catprop": {"kind": "biprop-reference",
                "caps": {"max_word": 2, "max_index": 2, "max_hom": 2, "max_letters": 2},
                "biprop": {"builtin": "catprop", "registry": {"names": ["1", "D2"]}, "graph": "lex"}},
    "catprop-reversed": {"kind": "biprop-reference",
                         "caps": {"max_word": 2, "max_index": 2, "max_hom": 2, "max_letters": 2},
                         "biprop": {"builtin": "catprop", "registry": {"names": ["D2"]}, "graph": "reversed"}},
    "untwist": {"kind": "multifunctor", "caps": TINY, "source": TWISTED, "target": STRICT_GRADED,
                "functor": {"builtin": "twist-comparison"}},
    "reverse": {"kind": "multifunctor", "caps": TINY, "source": STRICT_GRADED, "target": STRICT_GRADED,
                "functor": {"builtin": "reverse"}},
    "corrupt-untwist": {"kind": "multifunctor", "caps": TINY, "source": TWISTED, "target": STRICT_GRADED,
                        "functor": {"builtin": "twist-comparison"},
                        "corrupt": {"at": {"image": [0, 0], "cod": 1}, "delta": 1}},
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, doc in FIXTURES.items():
        path = OUT / f"{name}.json"
        # explicit tables are large; keep them on few lines
        compact = "homs" in doc.get("multicat", {})
        path.write_text(json.dumps(doc, indent=None if compact else 1, separators=(",", ":") if compact else None) + "\n")
        print(f"{path.relative_to(OUT.parent)}: {path.stat().st_size} bytes")


if __name__ == "__main__":
    main()
