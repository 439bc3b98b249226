import json

import pytest

from wabrep.catalog import build_module
from wabrep.classifier.constraints import WUnknown
from wabrep.classifier.cases import (WFormula, case_by_name, dump_cases, load_cases,
                                     select_cases, stacked_general_case, verify_w_formula)
from wabrep.errors import BadParams, SpecFileError
from wabrep.scalar import parse_scalar
from wabrep.verifier import w_coefficient


@pytest.fixture(scope="module")
def cases():
    return load_cases()


def test_table_size_and_groups(cases):
    assert len(cases) == 39
    groups = {c.group for c in cases}
    assert groups == {"two_layer", "boundary_up", "boundary_down", "boundary_up_bprime",
                      "boundary_down_bprime", "three_layer"}
    assert len({c.name for c in cases}) == len(cases)


@pytest.mark.parametrize("name", [c.name for c in load_cases()])
def test_every_case_first_order_small_window(name):
    report = verify_w_formula(case_by_name(name), K=2, M=2, second=False)
    assert report.passed, report.summary()
    assert report.checked > 0


@pytest.mark.parametrize("name", ["two_layer.1", "two_layer.4", "boundary_up.3",
                                  "boundary_down.2", "three_layer.2"])
def test_second_order_small_window(name):
    assert verify_w_formula(case_by_name(name), K=2, M=2).passed


def test_generic_two_layer_formula_is_the_B_module(cases):
    # independent route: the catalog module B carries the same coefficient and
    # passes the module-relation checker
    case = case_by_name("two_layer.1", cases)
    w = case.w_function()
    spec = build_module("B")
    for k in range(-3, 4):
        for m in range(-3, 4):
            assert w(WUnknown(0, k, m)) == w_coefficient(spec, 0, k, m)


def test_symbolic_constant_case_holds_for_all_c(cases):
    case = case_by_name("two_layer.4", cases)
    assert "c" in parse_scalar(case.w[0]).free_symbols()
    report = verify_w_formula(case, K=2, M=2)
    assert report.passed
    # the residuals are identically zero in c, not just at a sample value
    assert verify_w_formula(case.with_b(1), K=1, M=1).passed


def test_mu_b_plus_two_boundary_case(cases):
    case = case_by_name("boundary_up.3", cases)
    assert case.layers[1]["mu"] == "b + 2"
    for b in (0, 2, "1/2"):
        assert verify_w_formula(case.with_b(parse_scalar(str(b))), K=2, M=2).passed


def test_printed_three_layer_4_fails(cases):
    case = case_by_name("three_layer.4", cases)
    printed = case.printed()
    assert printed is not None and printed.name.endswith(":printed")
    assert not verify_w_formula(printed, K=2, M=2, second=False).passed
    assert case_by_name("three_layer.5", cases).printed() is None


def test_stacked_control_fails_unless_b_zero():
    bad = verify_w_formula(stacked_general_case(2), K=2, M=2, second=False)
    assert not bad.passed
    assert {r.relation for r in bad.residuals} == {"wsq"}
    assert verify_w_formula(stacked_general_case(0), K=2, M=2, second=False).passed


def test_wrong_formula_is_caught(cases):
    case = case_by_name("two_layer.2", cases)
    # the constraints are linear and homogeneous, so use a non-multiple
    wrong = WFormula(case.name, "", case.layers, {0: "1 + m"}, case.bindings, case.shifts)
    assert verify_w_formula(case, K=2, M=2).passed
    report = verify_w_formula(wrong, K=2, M=2, second=False)
    assert not report.passed and report.first().relation == "first"


def test_round_trip(cases, tmp_path):
    text = dump_cases(cases)
    path = tmp_path / "cases.json"
    path.write_text(text)
    again = load_cases(path)
    assert [c.to_dict() for c in again] == [c.to_dict() for c in cases]
    assert dump_cases(again) == text


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpecFileError):
        load_cases(bad)
    bad.write_text(json.dumps({"schema": 2, "cases": []}))
    with pytest.raises(SpecFileError):
        load_cases(bad)
    bad.write_text(json.dumps({"schema": 1, "cases": [{"name": "x"}]}))
    with pytest.raises(SpecFileError):
        load_cases(bad)
    bad.write_text(json.dumps({"schema": 1, "cases": [
        {"name": "x", "layers": [{"layer": 0, "kind": "weird"}], "w": {"0": "1"}}]}))
    with pytest.raises(SpecFileError):
        load_cases(bad)


def test_case_by_name_unknown(cases):
    with pytest.raises(BadParams):
        case_by_name("nope", cases)


def test_select_cases(cases):
    assert len(select_cases(cases)) == 39
    at2 = select_cases(cases, 2)
    assert all(c.requires_b is None or c.bindings["b"] == "2" for c in at2)
    assert all(c.bindings["b"] == "2" for c in at2)
    assert len(at2) == sum(1 for c in cases if c.requires_b is None)
    assert len(select_cases(cases, 1)) == 39


def test_with_b(cases):
    assert case_by_name("two_layer.3", cases).with_b(2) is None
    general = case_by_name("two_layer.1", cases).with_b(3)
    assert general.requires_b == parse_scalar("3")
    assert case_by_name("two_layer.1", cases).requires_b is None
