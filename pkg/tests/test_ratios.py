"""The twelve tabulated breakpoint ratios."""

from fractions import Fraction

import pytest

from bidisc.ratios import RATIO_TABLE, ratio, ratio_interval, ratio_polynomial

# 16-digit reference doubles, frozen from exact bisection of the minimal
# polynomials at 30 decimal digits
REFERENCE = {
    "r1": 0.6375559772319458,
    "ra": 0.619914404421775,
    "r2": 0.5451510421225727,
    "r3": 0.5332964166603129,
    "r4": 0.41421356237309503,
    "r5": 0.3861061048585385,
    "rb": 0.3691023861848554,
    "r6": 0.34919818620854987,
    "r7": 0.28077640640441515,
    "rc": 0.2168453354374751,
    "r8": 0.15470053837925152,
    "r9": 0.10102051443364381,
}


def test_table_is_complete():
    assert set(RATIO_TABLE) == set(REFERENCE)


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_certified_value(name):
    iv = ratio_interval(name, tol=1e-12)
    assert iv.width <= 1e-12
    assert abs(iv.mid - REFERENCE[name]) < 1e-11
    assert abs(ratio(name) - REFERENCE[name]) < 1e-11


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_enclosure_brackets_a_sign_change(name):
    # independent of Sturm: the minimal polynomial changes sign across the
    # certified enclosure (endpoints evaluated exactly)
    p = ratio_polynomial(name)
    iv = ratio_interval(name, tol=1e-12)
    if iv.lo == iv.hi:
        assert p.eval_exact(Fraction(iv.lo)) == 0
    else:
        assert (p.eval_exact(Fraction(iv.lo)) * p.eval_exact(Fraction(iv.hi))) < 0


def test_ordering_matches_subscripts():
    order = ["r1", "ra", "r2", "r3", "r4", "r5", "rb", "r6", "r7", "rc", "r8", "r9"]
    values = [ratio(n) for n in order]
    assert values == sorted(values, reverse=True)


def test_unknown_name():
    with pytest.raises(KeyError):
        ratio_polynomial("r99")
