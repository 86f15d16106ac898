import io
import json
import subprocess
import sys

import pytest

from sphersheets.cli import CatalogDocument, catalog_document, main, parse_element, render_csv
from sphersheets.golden import shipped_documents
from sphersheets.rootcore import build_root_system
from sphersheets.symoracle import CAP_VARIABLE


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# catalog ------------------------------------------------------------------------------------------


def test_catalog_md_c2():
    code, text, _ = run("catalog", "--type", "C", "--rank", "2", "--format", "md")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "**Type $\\mathsf{C}_2$.**"
    assert len([l for l in lines if l.startswith("| ") and not l.startswith("| τ")]) == 4


def test_catalog_json_e8():
    code, text, _ = run("catalog", "--type", "E", "--rank", "8", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema_version"] == 1 and len(doc["rows"]) == 6


def test_catalog_csv_a1_counts_central_rows():
    code, text, _ = run("catalog", "--type", "A", "--rank", "1", "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("index,tau,kind")
    assert len(lines) - 1 == 3


@pytest.mark.parametrize("fmt", ["json", "csv", "md"])
def test_catalog_is_deterministic(fmt):
    first = run("catalog", "--type", "C", "--rank", "4", "--format", fmt)
    second = run("catalog", "--type", "C", "--rank", "4", "--format", fmt)
    assert first == second


@pytest.mark.parametrize("t,n", [("A", 3), ("C", 4), ("D", 4), ("E", 7), ("G", 2)])
def test_json_round_trip(t, n):
    doc = catalog_document(t, n, include_central=True)
    text = doc.to_json()
    again = CatalogDocument.from_json(text)
    assert again == doc
    assert again.to_json() == text
    assert json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) + "\n" == text


def test_csv_has_header_and_empty_central_d():
    text = render_csv(catalog_document("C", 2, include_central=True))
    rows = text.splitlines()
    assert len(rows) == 1 + 4 + 2
    assert all(r.endswith(",") for r in rows[-2:])


@pytest.mark.parametrize(
    "argv",
    [
        ("catalog", "--type", "Q", "--rank", "2"),
        ("catalog", "--type", "C", "--rank", "x"),
        ("catalog", "--type", "C", "--rank", "2", "--format", "xml"),
        ("catalog", "--type", "B", "--rank", "2"),
        ("catalog", "--type", "E", "--rank", "5"),
        ("frobnicate",),
        (),
    ],
)
def test_bad_arguments_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2 and err


# verify -------------------------------------------------------------------------------------------


def test_verify_c4_warns_but_passes():
    code, text, _ = run("verify", "--type", "C", "--rank", "4")
    assert code == 0
    assert text.startswith("== C4")
    assert "WARN" in text and "[2^2,1^4]" in text


def test_verify_all():
    code, text, _ = run("verify", "--all")
    assert code == 0
    assert "== summary:" in text and "FAIL" not in text


def test_verify_b2_exit_2():
    assert run("verify", "--type", "B", "--rank", "2")[0] == 2


def test_verify_argument_combinations():
    assert run("verify")[0] == 2
    assert run("verify", "--all", "--type", "C")[0] == 2


def test_verify_modified_golden_fails(tmp_path):
    doc = next(d for name, d in shipped_documents() if name == "C2.json")
    doc = json.loads(json.dumps(doc))
    doc["rows"][2]["d"] = "2"
    path = tmp_path / "C2.json"
    path.write_text(json.dumps(doc))
    code, text, _ = run("verify", "--type", "C", "--rank", "2", "--golden", str(path))
    assert code == 1
    assert "FAIL row 2" in text


def test_verify_unmodified_golden_copy_passes(tmp_path):
    doc = next(d for name, d in shipped_documents() if name == "C2.json")
    (tmp_path / "C2.json").write_text(json.dumps(doc))
    assert run("verify", "--type", "C", "--rank", "2", "--golden", str(tmp_path))[0] == 0


def test_verify_missing_golden_exit_3(tmp_path):
    assert run("verify", "--type", "C", "--rank", "2", "--golden", str(tmp_path / "nowhere.json"))[0] == 3
    assert run("verify", "--type", "C", "--rank", "2", "--golden", str(tmp_path))[0] == 3


# oracle ------------------------------------------------------------------------------------------


def test_oracle_kostka_4():
    code, text, _ = run("oracle", "kostka", "--n", "4")
    assert code == 0
    rows = [l for l in text.splitlines() if l[:1] == "[" or l[:1].isdigit()]
    assert len(rows) == 5 and all(len(r.split(": ")[1].split()) == 5 for r in rows)
    assert "unitriangular: yes" in text and "agree: yes" in text


def test_oracle_characters_3():
    code, text, _ = run("oracle", "characters", "--n", "3")
    assert code == 0
    values = {l.split(": ")[0]: l.split(": ")[1] for l in text.splitlines() if ": " in l}
    standard = next(v for k, v in values.items() if k in ("[2,1]", "21", "[2, 1]"))
    assert standard == "2 0 -1"


def test_oracle_separation_6():
    code, text, _ = run("oracle", "separation", "--n", "6")
    assert code == 0
    assert "separated pairs: 55" in text


def test_oracle_cap(monkeypatch):
    monkeypatch.delenv(CAP_VARIABLE, raising=False)
    assert run("oracle", "kostka", "--n", "11")[0] == 2
    monkeypatch.setenv(CAP_VARIABLE, "bad")
    assert run("oracle", "kostka", "--n", "3")[0] == 2


# conjugacy ----------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv,answer",
    [
        (("--type", "B", "--rank", "5", "--x", "sigma:2", "--y", "sigma:2+z"), "yes"),
        (("--type", "D", "--rank", "6", "--x", "sigma:2", "--y", "sigma:2+zn"), "no"),
        (("--type", "A", "--rank", "3", "--x", "0", "--y", "0"), "yes"),
        (("--type", "D", "--rank", "6", "--x", "sigma:3", "--y", "sigma:3+zn"), "yes"),
        (("--type", "C", "--rank", "4", "--x", "sigma:2", "--y", "sigma:2+z"), "yes"),
        (("--type", "A", "--rank", "2", "--x", "1/3,0", "--y", "0,1/3"), "no"),
    ],
)
def test_conjugacy(argv, answer):
    code, text, _ = run("conjugacy", *argv)
    assert code == 0 and text == answer + "\n"


@pytest.mark.parametrize("spec", ["sigma:9", "sigma:x", "1,2", "w", "0++0", "1/0,0,0"])
def test_conjugacy_bad_specs(spec):
    assert run("conjugacy", "--type", "B", "--rank", "3", "--x", spec, "--y", "0")[0] == 2


def test_parse_element_adds_terms():
    rs = build_root_system("C", 2)
    assert parse_element(rs, "sigma:1 + sigma:1") == parse_element(rs, "1,0")


# entry points -----------------------------------------------------------------------------------------


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sphersheets", "conjugacy", "--type", "A", "--rank", "3", "--x", "0", "--y", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "yes\n"
