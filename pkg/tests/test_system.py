import random
from fractions import Fraction

import pytest

from wabrep.classifier.system import (MU_FAMILIES, T_FAMILY_RATIONAL_ROOTS, check_mu_families,
                                      check_rows_agree, check_t_family_roots, delta_polynomials,
                                      derived_system, determinant, determinant_rhs,
                                      enumerate_mu_families, factor_determinant, printed_system,
                                      row_factor, t_family_reductions, vanishing_factor,
                                      verify_determinant_identity)
from wabrep.errors import VerificationFailed
from wabrep.scalar import ONE, as_scalar, parse_scalar, sym

NAMES = ("a", "b", "lam", "n", "i", "mu0", "mu1")


@pytest.fixture(scope="module")
def derived():
    return derived_system()


@pytest.fixture(scope="module")
def det(derived):
    return determinant(derived)


def gauss_det(rows):
    """Determinant by Fraction elimination, independent of cofactor expansion."""
    m = [list(r) for r in rows]
    n, sign, out = len(m), 1, Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * out


def random_point(rng):
    return {k: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for k in NAMES}


def test_determinant_matches_elimination_oracle(derived):
    rng = random.Random(7)
    rhs = determinant_rhs(a_power=1)
    for _ in range(8):
        pt = random_point(rng)
        numeric = gauss_det([[x.evaluate(pt) for x in row] for row in derived])
        assert numeric == rhs.evaluate(pt)


def test_printed_prefactor_power_is_off_by_one(derived):
    rng = random.Random(11)
    printed = determinant_rhs()
    pt = random_point(rng)
    pt["a"] = Fraction(3)
    numeric = gauss_det([[x.evaluate(pt) for x in row] for row in derived])
    assert printed.evaluate(pt) == 3 * numeric


def test_identity_with_a_to_the_first(derived):
    assert verify_determinant_identity(derived, a_power=1).passed


def test_identity_as_printed_fails(derived):
    report = verify_determinant_identity(derived)
    assert not report.passed
    assert report.first().indices == ("given", 2)


def test_factorization(derived):
    assert factor_determinant(derived).passed


def test_linear_factor_families_kill_det(det):
    mu0, b = sym("mu0"), sym("b")
    assert det.substitute({"mu1": mu0 + b}).is_zero()
    assert det.substitute({"mu1": mu0 + b + 1}).is_zero()


def test_first_row_symmetry(derived):
    first, last = derived[0][0], derived[0][2]
    assert last == first.substitute({"i": -sym("i")})


def test_first_entry_at_zero_parameters():
    entry = printed_system(mu0=0, mu1=0, lam=0, n=0)[0][0]
    # a (i mu0 - x)(i (mu1 - 1) + a + x) with mu0 = x = 0 vanishes
    assert entry.is_zero()
    assert printed_system()[0][0].substitute({"mu0": 0, "mu1": 0, "lam": 0}) == \
        parse_scalar("a*(-n)*(-i + a + n)")


def test_rows_proportional_after_correction(derived):
    report = check_rows_agree(derived, printed_system(corrected=True))
    assert report.passed
    for s in range(3):
        assert row_factor(derived[s], printed_system(corrected=True)[s]) == ONE


def test_printed_row_two_disagrees(derived):
    report = check_rows_agree(derived, printed_system())
    assert not report.passed
    assert {r.indices[0] for r in report.residuals} == {2, 3}
    # row 1 agrees as printed
    assert row_factor(derived[0], printed_system()[0]) is not None


def test_mu_families_listed():
    assert len(MU_FAMILIES) == 10
    assert len(enumerate_mu_families()) == 10


def test_mu_families_vanish(det):
    assert check_mu_families().passed
    for fam in MU_FAMILIES:
        assert vanishing_factor(fam) is not None
        assert det.substitute(fam.values()).is_zero()


def test_b_one_reflection_family_kills_cubic():
    fam = next(f for f in MU_FAMILIES if f.name == "b=1,mu1=1-mu0")
    assert vanishing_factor(fam) == "cubic"
    for d in delta_polynomials():
        assert d.substitute(fam.values()).is_zero()


def test_two_b_plus_one_family_keeps_its_denominator():
    fam = next(f for f in MU_FAMILIES if f.name == "2b+1-family")
    mu0 = fam.values()["mu0"]
    assert not mu0.is_polynomial()
    assert vanishing_factor(fam) == "cubic"


def test_t_family_symbolic():
    fam = next(f for f in MU_FAMILIES if f.name == "b=1,t-family")
    assert "t" in fam.values()["mu0"].free_symbols()
    assert vanishing_factor(fam) == "cubic"


def test_enumerate_with_concrete_b():
    at2 = enumerate_mu_families(2)
    assert len(at2) == 7
    assert all(f.bindings["b"] == "2" for f in at2)
    assert len(enumerate_mu_families(1)) == 10
    assert len(enumerate_mu_families(Fraction(-1, 2))) == 6


def test_bad_family_raises(monkeypatch):
    import wabrep.classifier.system as system
    from wabrep.classifier.system import MuFamily
    monkeypatch.setattr(system, "MU_FAMILIES", (MuFamily("bogus", {"mu1": "mu0 + 7"}, "main"),))
    with pytest.raises(VerificationFailed):
        system.enumerate_mu_families()


def test_t_roots():
    assert check_t_family_roots().passed
    red = t_family_reductions()
    assert set(red) == set(T_FAMILY_RATIONAL_ROOTS)
    assert all(red.values())
