import pytest

from wabrep.catalog import BasisIndex, build_module
from wabrep.classifier.injectivity import check_psi_injectivity, weight_vectors
from wabrep.errors import BadParams, WeightAbsent
from wabrep.scalar import sym
from wabrep.verifier import TrivialModule


def test_integer_family_is_injective():
    spec = build_module("Abar_integer", a=2, b=1)
    assert check_psi_injectivity(spec, 2, "lam + 3")


def test_trivial_module_is_not():
    assert not check_psi_injectivity(TrivialModule(), 2, 0)


def test_A_with_symbolic_weight():
    spec = build_module("A")
    lam = sym("lam") + 2 * sym("a") + 1
    assert weight_vectors(spec, lam) == [BasisIndex(2, 1)]
    assert check_psi_injectivity(spec, 3, lam)


def test_excluded_indices():
    for m in (-1, 0):
        with pytest.raises(BadParams):
            check_psi_injectivity(TrivialModule(), m, 0)


def test_absent_weight():
    with pytest.raises(WeightAbsent):
        check_psi_injectivity(TrivialModule(), 2, 5)


def test_weight_space_must_be_one_dimensional():
    spec = build_module("A", a=0)
    with pytest.raises(BadParams):
        check_psi_injectivity(spec, 2, "lam")
