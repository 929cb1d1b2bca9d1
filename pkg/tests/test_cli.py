"""Command line interface: exit codes, formats, and file outputs."""

from __future__ import annotations

import json

import pytest

from c3control import c3_mro
from c3control.cli import (
    EXIT_DOMAIN,
    EXIT_INPUT,
    EXIT_OK,
    fixture_path,
    main,
)
from c3control.hierarchy import parse_hierarchy


def fx(name: str) -> str:
    return str(fixture_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", fx("c3deviates"), "E")
    assert code == EXIT_OK
    assert out.strip() == "E D B A C"


def test_compute_machine(capsys):
    code, out, _ = run(capsys, "compute", fx("c3fixed"), "E", "--format", "machine")
    assert code == EXIT_OK
    assert json.loads(out) == {"ok": True, "mro": ["E", "D", "C", "B", "A"]}


def test_compute_failure_reports_conflict(capsys):
    code, out, err = run(capsys, "compute", fx("clash"), "E")
    assert code == EXIT_DOMAIN
    assert "could not find a consistent method resolution order" in err
    assert "A" in err and "B" in err


def test_compute_failure_machine(capsys):
    code, out, _ = run(capsys, "compute", fx("clash"), "E", "--format", "machine")
    assert code == EXIT_DOMAIN
    payload = json.loads(out)
    assert payload["ok"] is False
    assert payload["at"] == "E"


def test_compute_unknown_element(capsys):
    code, _, err = run(capsys, "compute", fx("c3deviates"), "Q")
    assert code == EXIT_INPUT
    assert "unknown element" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "compute", "/nonexistent.hier", "E")
    assert code == EXIT_INPUT


def test_instrument_text_marks_insertions(capsys):
    code, out, _ = run(capsys, "instrument", fx("h_alt_order"))
    assert code == EXIT_OK
    assert "E2: D2 B +A" in out
    assert "total additions: 1" in out


def test_instrument_machine(capsys):
    code, out, _ = run(capsys, "instrument", fx("c3deviates"), "--format", "machine")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["total_added"] == 1
    assert payload["additions"] == {"E": ["B"]}
    assert payload["assignment"]["E"] == ["D", "C", "B"]


def test_instrument_requires_global_order(capsys):
    code, _, err = run(capsys, "instrument", fx("clash"))
    assert code == EXIT_INPUT
    assert "global_order" in err


def test_instrument_write_back(tmp_path, capsys):
    out_file = tmp_path / "fixed.hier"
    code, _, _ = run(capsys, "instrument", fx("h_alt_order"), "--write-back", str(out_file))
    assert code == EXIT_OK
    h = parse_hierarchy(out_file.read_text())
    p = h.to_poset()
    order = h.global_order_ids(p)
    mro = c3_mro(p, h.assignment_for(p), order[0])
    assert list(mro) == order


def test_check_fixed_passes_with_deviation_note(capsys):
    code, out, _ = run(capsys, "check", fx("c3fixed"))
    assert code == EXIT_OK
    assert "deviates" in out


def test_check_covers_only_all_ok(capsys):
    code, out, _ = run(capsys, "check", fx("c3deviates"))
    assert code == EXIT_OK
    assert "FAIL" not in out and "deviates" not in out


def test_check_clash_fails(capsys):
    code, out, _ = run(capsys, "check", fx("clash"))
    assert code == EXIT_DOMAIN
    assert "FAIL" in out


def test_check_dot_export(tmp_path, capsys):
    dot_file = tmp_path / "h.dot"
    code, _, _ = run(capsys, "check", fx("c3deviates"), "--dot", str(dot_file))
    assert dot_file.read_text().startswith("digraph")


def test_search_text(capsys):
    code, out, _ = run(capsys, "search", "4")
    assert code == EXIT_OK
    assert "labeled posets : 40" in out
    assert "iso classes    : 16" in out
    assert "infeasible     : none" in out


def test_search_machine(capsys):
    code, out, _ = run(capsys, "search", "3", "--format", "machine")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["labeled_poset_count"] == 7
    assert payload["iso_class_count"] == 5
    assert payload["records_infeasible"] == []


def test_search_depth_gate(capsys):
    code, _, err = run(capsys, "search", "8")
    assert code == EXIT_DOMAIN
    assert "allow_large" in err


def test_search_budget(capsys):
    code, _, err = run(capsys, "search", "5", "--budget", "10")
    assert code == EXIT_DOMAIN
    assert "budget" in err


def test_demo_h_quiet(capsys):
    code, out, _ = run(capsys, "demo-h", "--quiet")
    assert code == EXIT_OK
    assert out.strip() == "demo-h: noMRO ok, histogram ok"


def test_demo_h_full(capsys):
    code, out, _ = run(capsys, "demo-h")
    assert code == EXIT_OK
    assert "720/720" in out
    assert "histogram matches" in out
