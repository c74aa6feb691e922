from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bruhat_tits import cli
from bruhat_tits.compare import WallComparison
from bruhat_tits.descriptor import DescriptorError, parse_descriptor
from bruhat_tits.echelonnage import EchelonnageError
from conftest import DESCRIPTORS, REPORTS

Q = Fraction

MINIMAL = """
[group]
label = A
rank = 1

[ray.all]
case = RES_SL2
"""


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="g.desc"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- descriptors ---------------------------------------------------------------------


def test_parse_minimal():
    d = parse_descriptor(MINIMAL)
    assert (d.label, d.rank, d.residue_char) == ("A", 1, None)
    assert str(d.rays["all"]) == "RES_SL2(e2=1)"
    assert d.compare_mode is None
    assert d.datum().gp(0).member(3)


def test_parse_bc1_corpus_file():
    d = parse_descriptor((DESCRIPTORS / "bc1.desc").read_text())
    assert d.rays["multipliable"].gamma == Q(-1, 4)
    assert d.compare_mode == "bc"


def test_parse_degrees():
    d = parse_descriptor((DESCRIPTORS / "exotic_c2.desc").read_text())
    assert d.degrees == {"short": 2, "long": 1}
    text = MINIMAL + "[compare]\nmode = exotic\ndegrees = all:1/2\n"
    assert parse_descriptor(text).degrees == {"all": Q(1, 2)}


@pytest.mark.parametrize(
    "text,line,column,fragment",
    [
        ("[group]\nlabel = A\nrank = 1\ncolour = red\n", 4, 1, "unknown key 'colour'"),
        ("[group]\nlabel = A\nrank = x\n[ray.all]\ncase = RES_SL2\n", 3, 8, "rank must be an integer"),
        ("[group\n", 1, 1, "malformed section header"),
        ("[group]\n  label A\n", 2, 3, "expected 'key = value'"),
        ("[groups]\n", 1, 1, "unknown section"),
        ("[group]\nlabel = A\nrank = 1\n[ray.all]\ncase = RES_SL2\ngamma = 1/0\n", 6, 9, "zero denominator"),
        ("[group]\nlabel = Q\nrank = 1\n", 2, 9, "unknown root system label"),
        ("[group]\nlabel = A\nrank = 1\nresidue_char = 4\n", 4, 16, "must be a prime"),
        ("[group]\nlabel = A\nrank = 1\n[ray.all]\ncase = SL3\n", 5, 8, "unknown case"),
        ("[group]\nlabel = A\n", 1, 1, "lacks rank"),
        ("label = A\n", 1, 1, "outside of any section"),
        ("[group]\nlabel = A\nlabel = B\n", 3, 1, "duplicate key"),
    ],
)
def test_syntax_errors_carry_position(text, line, column, fragment):
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(text)
    exc = info.value
    assert fragment in exc.message
    assert (exc.line, exc.column) == (line, column)
    assert str(exc).startswith(f"line {line}, column {column}: ")


def test_exotic_without_degrees():
    with pytest.raises(DescriptorError, match="needs degrees"):
        parse_descriptor(MINIMAL + "[compare]\nmode = exotic\n")


def test_semantic_errors_at_assembly():
    bad = "[group]\nlabel = BC\nrank = 1\nresidue_char = 3\n[ray.multipliable]\ncase = BC1\n"
    with pytest.raises(EchelonnageError, match="BC case requires characteristic 2"):
        parse_descriptor(bad).datum()
    third = "[group]\nlabel = BC\nrank = 1\nresidue_char = 2\n[ray.multipliable]\ncase = BC1\ngamma = 1/3\n"
    with pytest.raises(EchelonnageError):
        parse_descriptor(third).datum()
    with pytest.raises(EchelonnageError):
        parse_descriptor(MINIMAL.replace("all", "short")).datum()


# -- commands and exit codes -------------------------------------------------------------


def test_bc1_char_3_exits_1(tmp_path):
    path = write(tmp_path, "[group]\nlabel = BC\nrank = 1\nresidue_char = 3\n[ray.multipliable]\ncase = BC1\n")
    code, out, err = invoke("apartment", "--group", path)
    assert code == 1 and out == ""
    assert "BC case requires characteristic 2" in err


def test_gamma_third_exits_1(tmp_path):
    path = write(tmp_path, "[group]\nlabel = BC\nrank = 1\nresidue_char = 2\n[ray.multipliable]\ncase = BC1\ngamma = 1/3\n")
    code, _, err = invoke("apartment", "--group", path)
    assert code == 1 and "gamma" in err


def test_usage_errors_exit_1(tmp_path):
    assert invoke()[0] == 1
    assert invoke("apartment")[0] == 1
    assert invoke("frobnicate", "--group", "x")[0] == 1
    assert invoke("apartment", "--group", str(tmp_path / "missing.desc"))[0] == 1
    path = str(DESCRIPTORS / "split_a2.desc")
    code, _, err = invoke("facet", "--group", path, "0")
    assert code == 1 and "dimension 2" in err
    assert invoke("cosets", "--group", path, "{}", "{}", "x")[0] == 1
    assert invoke("cosets", "--group", path, "{7}", "{}", "2")[0] == 1
    assert invoke("compare", "--group", path)[0] == 1


def test_verify_needs_characteristic(tmp_path):
    code, _, err = invoke("verify", "--group", write(tmp_path, MINIMAL))
    assert code == 1 and "residue_char" in err


def test_theorem_failure_exits_2(monkeypatch):
    bad = WallComparison(False, Q(4), Q(1), 0, "wall a(x) = 1/2 only in the second", [])
    monkeypatch.setattr(cli.compare, "walls_equal", lambda *a, **k: bad)
    code, out, _ = invoke("compare", "--group", str(DESCRIPTORS / "bc1.desc"))
    assert code == 2
    assert "DIFFERENT" in out and "first discrepancy" in out


def test_facet_split_a2_origin():
    code, out, _ = invoke("facet", "--group", str(DESCRIPTORS / "split_a2.desc"), "0,0")
    assert code == 0
    assert "facet: vertex (special)" in out
    assert "Phi_f: A2 (6 roots" in out


def test_negative_point():
    code, out, _ = invoke("facet", "--group", str(DESCRIPTORS / "split_a1.desc"), "--", "-1/2")
    assert code == 0 and "point: (-1/2)" in out and "alcove" in out


def test_star_split_a1():
    code, out, _ = invoke("star", "--group", str(DESCRIPTORS / "split_a1.desc"), "0")
    assert code == 0
    assert "star: 3 facets; parabolic subsets of Phi_f: 3" in out
    assert "bijection onto parabolic subsets: verified" in out


def test_cosets_split_a1():
    code, out, _ = invoke("cosets", "--group", str(DESCRIPTORS / "split_a1.desc"), "{}", "{}", "3")
    assert code == 0 and "representatives: 7" in out


def test_json_format():
    code, out, _ = invoke("cosets", "--group", str(DESCRIPTORS / "split_a1.desc"), "--format", "json", "{s0}", "{0}", "5")
    data = json.loads(out)
    assert code == 0
    assert data["J"] == [0] and data["J_prime"] == [0]
    assert [r["length"] for r in data["representatives"]] == [0, 1, 3, 5]
    code, out, _ = invoke("compare", "--group", str(DESCRIPTORS / "exotic_g2.desc"), "--format", "json")
    data = json.loads(out)
    assert all(r["equal"] for r in data["results"])


def test_window_option():
    code, out, _ = invoke("apartment", "--group", str(DESCRIPTORS / "bc1.desc"), "--window", "1/2")
    assert code == 0 and "walls with |a(x)| <= 1/2" in out


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "bruhat_tits.cli", "cosets", "--group", str(DESCRIPTORS / "split_a1.desc"), "{}", "{}", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "representatives: 3" in proc.stdout


# -- golden reports ---------------------------------------------------------------------


def test_golden_reports_match(rendered):
    on_disk = {str(p.relative_to(REPORTS)): p.read_text() for p in REPORTS.rglob("*.txt")}
    assert set(on_disk) == set(rendered)
    for rel, (code, text) in rendered.items():
        assert code == 0, rel
        assert text == on_disk[rel], rel


def test_reports_independent_of_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = invoke("apartment", "--group", str(DESCRIPTORS / "bc2.desc"))
    assert code == 0 and out == (REPORTS / "bc2" / "apartment.txt").read_text()
