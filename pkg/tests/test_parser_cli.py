from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixlocus.catalog import fermat_instance, schottky_instance
from fixlocus.cli import run_cli
from fixlocus.counting import component_count
from fixlocus.errors import ParseError, UnknownGenerator, ValidationError
from fixlocus.parser import parse_instance, parse_word, render_instance, render_word
from fixlocus.report import Report
from fixlocus.words import Word, commutator

NAMES = ("x1", "x2", "a1", "b1")
FIXTURES = ("fermat_3_3", "schottky", "genus2_hyperelliptic", "torus_z3", "real_hyperelliptic_g2")
FIXTURES_2D = ("genus2_hyperelliptic", "torus_z3")


def x(i, e=1):
    return Word.generator(i, e)


def test_word_examples():
    assert parse_word("x1^3", NAMES) == x(0, 3)
    assert parse_word("(x1*x2^-1)^2", NAMES) == x(0) * x(1, -1) * x(0) * x(1, -1)
    assert parse_word("[a1,b1]", NAMES) == commutator(x(2), x(3))
    assert parse_word(" x1  x2 ", NAMES) == x(0) * x(1)
    assert parse_word("1", NAMES) == Word()
    assert parse_word("x1 x1^-1", NAMES).is_identity()


def test_positioned_errors():
    with pytest.raises(UnknownGenerator) as info:
        parse_word("x1*y7", NAMES, line=4, column=5)
    assert (info.value.line, info.value.column) == (4, 8)
    for bad in ("x1^", "(x1", "[x1 x2]", "x1)", "", "x1^-"):
        with pytest.raises(ParseError):
            parse_word(bad, NAMES)


words = st.recursive(
    st.builds(Word.generator, st.integers(0, 3), st.integers(-4, 4)),
    lambda inner: st.one_of(
        st.builds(lambda a, b: a * b, inner, inner),
        st.builds(commutator, inner, inner),
        st.builds(lambda a, e: a ** e, inner, st.integers(-3, 3))),
    max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(words)
def test_word_round_trip(w):
    assert parse_word(render_word(w, NAMES), NAMES) == w


def test_fixture_round_trip(data_dir):
    for name in FIXTURES:
        text = (data_dir / f"{name}.fix").read_text()
        bundle = parse_instance(text)
        again = parse_instance(render_instance(bundle))
        assert again == bundle, name
        assert render_instance(again) == render_instance(bundle)


def test_fermat_fixture_matches_catalog(data_dir):
    bundle = parse_instance((data_dir / "fermat_3_3.fix").read_text())
    inst = fermat_instance(3, 3)
    assert bundle.epi == inst.epi
    assert bundle.specs == inst.specs
    assert bundle.merge == inst.merge


def test_missing_images_section(data_dir):
    text = (data_dir / "torus_z3.fix").read_text()
    text = text[:text.index("[images]")]
    with pytest.raises(ValidationError) as info:
        parse_instance(text)
    assert info.value.section == "images"


def test_order_check_is_reported(data_dir):
    with pytest.raises(ValidationError) as info:
        parse_instance((data_dir / "broken_order.fix").read_text())
    assert info.value.check == "order check" and info.value.section == "ecs"
    # the parser itself does not mind
    assert parse_instance((data_dir / "broken_order.fix").read_text(), validate=False)


def test_document_errors_have_positions():
    doc = "[group]\ndegree = 3\na = (1 2 3)\n\n[signature]\ngenus = 0\nperiods = 3 3 3\n\n[images]\nx1 = a\nx2 = q\nx3 = a\n"
    with pytest.raises(ParseError) as info:
        parse_instance(doc)
    assert info.value.line == 11
    with pytest.raises(ParseError):
        parse_instance("[group]\ndegree = 3\na = (1 4)\n")
    with pytest.raises(ParseError):
        parse_instance("[nonsense]\n")


def test_catalog_check_exit_codes(capsys):
    assert run_cli(["catalog", "schottky", "--check"]) == 0
    assert capsys.readouterr().out == "a1: 4, a2: 4, a3: 4\n"
    assert run_cli(["catalog", "fermat", "--m", "3", "--k", "3", "--check"]) == 0
    assert capsys.readouterr().out == "a1: 9, a2: 9, a3: 9\n"
    assert run_cli(["catalog", "fermat", "--m", "2", "--k", "3"]) == 1


def test_emitted_fixtures_are_shipped(capsys, data_dir):
    assert run_cli(["catalog", "fermat", "--m", "3", "--k", "3"]) == 0
    assert capsys.readouterr().out == (data_dir / "fermat_3_3.fix").read_text()
    assert run_cli(["catalog", "schottky"]) == 0
    assert capsys.readouterr().out == (data_dir / "schottky.fix").read_text()


def test_validate_and_parse_exit_codes(capsys, data_dir, tmp_path):
    assert run_cli(["validate", str(data_dir / "broken_order.fix")]) == 1
    assert "order check" in capsys.readouterr().out
    assert run_cli(["validate", str(data_dir / "torus_z3.fix")]) == 0
    bad = tmp_path / "bad.fix"
    bad.write_text("[group]\ndegree = two\n")
    assert run_cli(["count", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run_cli(["count", str(data_dir / "broken_order.fix")]) == 1


def test_count_rows(capsys, data_dir):
    assert run_cli(["count", str(data_dir / "schottky.fix"), "--element", "a1", "--element", "a1*a2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:2] == ["a1: 4", "a1*a2: 0"]
    assert run_cli(["ovals", str(data_dir / "real_hyperelliptic_g2.fix")]) == 0
    assert capsys.readouterr().out.splitlines()[:3] == ["i: 0", "s: 3", "s*i: 3"]
    assert run_cli(["count", str(data_dir / "genus2_hyperelliptic.fix")]) == 1
    assert "MissingSpec" in capsys.readouterr().err


def test_json_report_round_trip(capsys, data_dir):
    for command in ("count", "bound", "oracle"):
        target = "schottky" if command != "oracle" else "torus_z3"
        run_cli([command, str(data_dir / f"{target}.fix"), "--json"])
        text = capsys.readouterr().out
        report = Report.from_json(text)
        assert report.to_json() == text
        assert json.loads(text)["command"] == command


def test_report_rows_match_library(capsys, data_dir):
    inst = schottky_instance()
    run_cli(["count", str(data_dir / "schottky.fix"), "--element", "a2", "--json"])
    row = Report.from_json(capsys.readouterr().out).rows[0]
    direct = component_count(inst.epi, inst.element("a2"), inst.merge, inst.specs, name="a2")
    assert row == direct


def test_macbeath_and_oracle_agree_on_2d_fixtures(capsys, data_dir):
    for name in FIXTURES_2D:
        path = str(data_dir / f"{name}.fix")
        assert run_cli(["macbeath", path]) == 0
        mac = [line for line in capsys.readouterr().out.splitlines() if not line.startswith("*")]
        assert run_cli(["oracle", path]) == 0
        orc = [line for line in capsys.readouterr().out.splitlines() if not line.startswith("*")]
        assert mac == orc


@pytest.mark.parametrize("name", FIXTURES + ("broken_order",))
def test_cli_output_is_byte_stable(name, data_dir):
    path = str(data_dir / f"{name}.fix")
    for command in (["validate"], ["bound", "--json"], ["count"]):
        args = [sys.executable, "-m", "fixlocus.cli", command[0], path, *command[1:]]
        runs = [subprocess.run(args, capture_output=True, check=False) for _ in range(2)]
        assert runs[0].stdout == runs[1].stdout
        assert runs[0].stderr == runs[1].stderr
        assert runs[0].returncode == runs[1].returncode
