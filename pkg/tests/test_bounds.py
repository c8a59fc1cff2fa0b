"""Pinned values of the bound recurrences.

The anchors below were computed twice: by hand-unrolling the recurrences
and by the independent evaluator in bounds_oracle.py.  They are frozen
here as plain integers; the full-matrix comparison lives in the
acceptance tests.
"""

import pytest

from minplus.bounds import (
    InfeasibleValue,
    UndefinedPointError,
    digits10,
    evaluate,
    length_function,
    main_bound,
    w_closed_form,
)

from bounds_oracle import oracle_point


def test_unit_machine_anchors():
    assert int(evaluate("simp", "Cov", 1, d=1, i=0)) == 8
    assert int(evaluate("simp", "Typ", 1, d=1, i=1)) == 48
    assert int(evaluate("simp", "Amp", 1, d=1, i=0)) == 128
    assert int(evaluate("simp", "Amp", 1, d=1, i=1)) == 64 * (48 ** 144 + 1)
    assert int(evaluate("simp", "H", 1)) == 128
    assert int(evaluate("gen", "Cov", 1, d=1, i=0)) == 1032
    assert int(main_bound(1)) == 8320


def test_two_state_anchors():
    assert int(evaluate("simp", "Len", 2, d=1, i=1)) == 0
    assert int(evaluate("simp", "Len", 2, d=0, i=1)) == 1
    assert int(evaluate("simp", "Len", 2, d=0, i=3)) == 1
    assert int(evaluate("simp", "MaxW", 2, d=1)) == 0
    assert int(evaluate("simp", "Cov", 2, d=1, i=1)) == 128
    assert int(evaluate("simp", "Cov", 2, d=2, i=1)) == 128
    assert int(evaluate("simp", "Cov", 2, d=1, i=0)) == 16384
    assert int(evaluate("simp", "Typ", 2, d=1, i=1)) == 3 * 258 ** 4
    assert int(evaluate("simp", "Typ", 2, d=1, i=2)) == 589824
    assert int(evaluate("simp", "Amp", 2, d=1, i=0)) == 2048


def test_zero_lengths_collapse_the_two_state_tail():
    # Len(1,1) = 0 at unit base weight zeroes every product above it
    assert int(evaluate("simp", "Amp", 2, d=2, i=0)) == 0
    assert int(evaluate("simp", "H", 2)) == 0
    assert int(main_bound(2)) == 0
    # a roomy cap lets the zero short-circuit; a tiny cap saturates an
    # earlier factor first, and saturation absorbs even a zero
    roomy = main_bound(2, saturate=10 ** 9)
    assert int(roomy) == 0 and not roomy.saturated
    assert main_bound(2, saturate=10).saturated


def test_infeasible_points_estimate_their_digits():
    with pytest.raises(InfeasibleValue) as err:
        evaluate("simp", "Amp", 2, d=1, i=1)
    assert err.value.digits_estimate == 438645843504
    with pytest.raises(InfeasibleValue) as err2:
        evaluate("upper", "Len2", 2, d=2)
    assert err2.value.digits_estimate == 129650831034192


def test_feasible_giant_is_exact_and_saturates_under_a_cap():
    giant = evaluate("simp", "Amp", 2, d=1, i=2)
    assert not giant.saturated
    assert giant.digits() == 10211135
    capped = evaluate("simp", "Amp", 2, d=1, i=2, saturate=10 ** 9)
    assert capped.saturated
    assert capped.cap == 10 ** 9
    with pytest.raises(ValueError, match="saturated"):
        int(capped)
    with pytest.raises(ValueError, match="saturated"):
        capped.digits()


def test_undefined_points_raise():
    with pytest.raises(UndefinedPointError):
        evaluate("simp", "Cov", 2, d=0, i=1)
    with pytest.raises(ValueError, match="unknown family"):
        evaluate("weird", "Cov", 1, d=1)
    with pytest.raises(ValueError, match="unknown simp function"):
        evaluate("simp", "Nope", 1, d=1)
    with pytest.raises(ValueError, match="unknown upper function"):
        evaluate("upper", "Nope", 1, d=1)


def test_upper_family_anchors():
    assert int(evaluate("upper", "W", 2, d=2, ld=3)) == 1152
    assert int(evaluate("upper", "Len2", 1, d=1)) == 0
    assert int(evaluate("upper", "C", 2, d=1, i=1, ld=1, li=0)) == 512


def test_w_closed_form_dominates_below_full_depth():
    for n in (1, 2, 3):
        for d in range(n):
            for ld in (1, 2, 3):
                rec = int(evaluate("upper", "W", n, d=d, ld=ld))
                assert rec <= w_closed_form(n, d, ld)
    # at full depth the closed form undershoots; kept as a cross-check only
    assert int(evaluate("upper", "W", 2, d=2, ld=3)) == 1152
    assert w_closed_form(2, 2, 3) == 578


def test_length_budget_callable():
    fn = length_function(2)
    assert int(fn(1)) == 0
    with pytest.raises(ValueError):
        length_function(1, family="upper")


def test_digit_count_is_formulaic():
    assert digits10(1) == 1
    assert digits10(999) == 4   # bit-length estimate overshoots on purpose
    assert digits10(1000) == 4
    assert digits10(10 ** 6) == 7


def test_spot_agreement_with_the_independent_oracle():
    for family, name, n, kw in (
            ("simp", "Amp", 1, dict(d=1, i=1)),
            ("gen", "Cov", 1, dict(d=1, i=0)),
            ("simp", "Typ", 2, dict(d=1, i=1)),
            ("upper", "C", 2, dict(d=1, i=1, ld=1, li=0))):
        ours = int(evaluate(family, name, n, **kw))
        theirs, saturated = oracle_point(family, name, n, **kw)
        assert not saturated and ours == theirs, (family, name, n, kw)
