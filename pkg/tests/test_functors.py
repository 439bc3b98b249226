import pytest

from wabrep.catalog import build_module, default_catalog
from wabrep.errors import BadParams
from wabrep.functors import (TWIST_SIGNS, TWIST_TARGET, check_dual, check_twist,
                             expected_dual, expected_twist, twist_source)


@pytest.mark.parametrize("family", ["A", "B", "VirA'"])
def test_tabulated_duals(family):
    assert expected_dual(build_module(family)) is not None
    assert check_dual(build_module(family), 2, 2).passed


@pytest.mark.parametrize("family", ["A2", "B2", "A1"])
def test_untabulated_duals_still_checked(family):
    spec = build_module(family)
    assert expected_dual(spec) is None
    report = check_dual(spec, 2, 2)
    assert report.passed and report.checked > 0
    assert "no tabulated dual" in report.notes[0]


def test_dual_with_wrong_target_fails():
    from wabrep.verifier import check_isomorphic, dualize
    spec = build_module("A")
    target, bmap = expected_dual(spec)
    wrong = build_module("A", lam=target.lam, mu=target.mu + 1)
    assert not check_isomorphic(dualize(spec), wrong, bmap, 2, 2).passed


@pytest.mark.parametrize("family", sorted(TWIST_TARGET))
def test_twists(family):
    assert check_twist(twist_source(family), 2, 2).passed


def test_A3_needs_sign_map():
    spec = twist_source("A3")
    assert "A3" in TWIST_SIGNS
    literal = check_twist(spec, 2, 2, literal=True)
    assert not literal.passed and literal.first().relation == "iso"
    assert check_twist(spec, 2, 2).passed


def test_other_twists_pass_literally():
    for family in TWIST_TARGET:
        if family not in TWIST_SIGNS:
            assert check_twist(twist_source(family), 2, 2, literal=True).passed


def test_expected_twist_rejects_untwistable():
    with pytest.raises(BadParams):
        expected_twist(build_module("VirA'"))
    target, bmap = expected_twist(twist_source("A"))
    assert target.family == "A~" and target.algebra.b == 1
