"""Structured rigid intervals on two-lane fixtures.

The banded machine keeps its lanes 100 apart: ``c`` enters both lanes
from the initial state, ``a`` loops each lane, and the h-lane climbs or
sinks by the chosen rate while the baseline lane stays flat.
"""

import pytest

from minplus import AugState, AugWfa, Wfa
from minplus.analysis import DominanceParams
from minplus.cactus import Cycle, NotStableError, stabilise
from minplus.letters import Spine
from minplus.sri import (
    Classification,
    NoNegativeCycleError,
    NotDegenerateError,
    PositivityViolatedError,
    bud,
    check_sri,
    check_sri_verbose,
    classify,
    degenerate_shorten,
    shift_kill_positive,
)


def banded(h_rate, entry=100):
    wfa = Wfa(["z", "h"], ["a", "c"], "z",
              [("z", "c", 0, "z"), ("z", "c", entry, "h"),
               ("z", "a", 0, "z"), ("h", "a", h_rate, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base, frozenset({"z", "h"})


def banded_words(base):
    return (base[("z", "c", "z")],), (base[("z", "a", "z")],)


def test_climbing_band_is_a_simple_sri():
    aug, base, reach = banded(1)
    u, x = banded_words(base)
    sri, reason = check_sri_verbose(aug, u, x, x, (), "simple")
    assert reason == "ok"
    assert sri.partition == ((AugState("z", "z", reach),), (AugState("h", "z", reach),))
    assert sri.shifts_x == (0, 1)
    assert sri.shifts_y == (0, 1)
    assert sri.gap == 64
    assert sri.parts == 2
    assert sri.word == u + x + x
    assert sri.part_of(AugState("h", "z", reach)) == 1
    assert sri.part_of(AugState("z", "h", reach)) is None


def test_sinking_band_is_a_general_sri():
    aug, base, _ = banded(-1)
    u, x = banded_words(base)
    sri, reason = check_sri_verbose(aug, u, x, x, (), "general")
    assert reason == "ok"
    assert sri.shifts_x == (0, -1)
    assert sri.shifts_y == (0, -1)
    assert sri.gap == 64


def test_classification_of_the_bands():
    aug, base, _ = banded(1)
    u, x = banded_words(base)
    up = check_sri(aug, u, x, x, ())
    assert classify(aug, up) == Classification("positive", stable=True, degenerate=False)
    aug2, base2, _ = banded(-1)
    u2, x2 = banded_words(base2)
    down = check_sri(aug2, u2, x2, x2, (), kind="general")
    # the sinking cycle is improper at h, so no degeneracy verdict
    assert classify(aug2, down) == Classification("negative", stable=False, degenerate=None)


def test_bud_agrees_with_the_pumped_word_on_the_climbing_band():
    aug, base, _ = banded(1)
    u, x = banded_words(base)
    sri = check_sri(aug, u, x, x, ())
    report = bud(aug, sri)
    assert report.ok
    assert (report.weights_ok, report.charge_ok, report.potential_ok) == (True, True, True)
    assert report.witness_tuple is None
    assert report.witness_verdict is None
    assert report.cactus.is_cactus
    assert report.word == u + (report.cactus,)


def test_bud_needs_a_stable_nondegenerate_cycle():
    aug, base, _ = banded(-1)
    u, x = banded_words(base)
    sri = check_sri(aug, u, x, x, (), kind="general")
    with pytest.raises(NotStableError):
        bud(aug, sri)


def test_bud_reports_a_potential_drop_with_a_witness_tuple():
    # u-lane climbs and t is readable only there: the stabilised cactus
    # kills it, dropping the jump-aware potential from 102 to 0
    wfa = Wfa(["z", "u"], ["a", "c", "t"], "z",
              [("z", "c", 0, "z"), ("z", "c", 100, "u"),
               ("z", "a", 0, "z"), ("u", "a", 1, "u"), ("u", "t", 0, "u")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "u"})
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "u", reach))
    params = DominanceParams(horizon=4, alphabet=tuple(aug.base_letters()) + (jump,))
    u, x = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    sri, reason = check_sri_verbose(aug, u, x, x, (), "simple", params=params)
    assert reason == "ok"
    report = bud(aug, sri, params=params)
    assert (report.weights_ok, report.charge_ok) == (True, True)
    assert not report.potential_ok
    assert not report.ok
    w1, cactus, certificate = report.witness_tuple
    assert cactus is report.cactus
    assert w1[0] is u[0] and len(w1) == 209
    assert certificate == (jump, base[("u", "t", "u")])
    # the certificate ends with a base letter, so the tuple is not yet a
    # full witness; the verdict records exactly that
    assert not report.witness_verdict.ok
    assert report.witness_verdict.failed_clause == "alphabet"


def test_shift_kill_on_the_sinking_band():
    aug, base, reach = banded(-1)
    u, x = banded_words(base)
    sri = check_sri(aug, u, x, x, (), kind="general")
    report = shift_kill_positive(aug, sri)
    assert report.repetitions == 1
    assert report.killed_parts == 1
    assert aug.letter_pairs(report.cactus) == {"h": (("h", 0),)}
    anchor = report.anchor
    assert anchor.start == AugState("h", "z", reach)
    assert anchor.end == anchor.start
    assert [step.weight for step in anchor.steps] == [-1]
    with pytest.raises(PositivityViolatedError):
        shift_kill_positive(aug, sri, ell_prime=2)
    with pytest.raises(ValueError, match="out of range"):
        shift_kill_positive(aug, sri, ell_prime=5)


def test_shift_kill_needs_a_sinking_lane():
    aug, base, _ = banded(1)
    u, x = banded_words(base)
    sri = check_sri(aug, u, x, x, ())
    with pytest.raises(NoNegativeCycleError):
        shift_kill_positive(aug, sri)


def test_degenerate_loop_shortens():
    wfa = Wfa(["q"], ["a"], "q", [("q", "a", 0, "q")])
    aug = AugWfa(wfa)
    ga = aug.base_letters()[0]
    sri, reason = check_sri_verbose(aug, (), (ga,), (ga,), ())
    assert reason == "ok"
    assert sri.partition == ((AugState("q", "q", frozenset({"q"})),),)
    assert sri.gap == 0
    assert classify(aug, sri) == Classification("positive", stable=True, degenerate=True)
    assert degenerate_shorten(aug, sri) == (ga,)
    with pytest.raises(NotDegenerateError, match="shorten instead"):
        bud(aug, sri)


def test_shorten_rejects_nondegenerate_middles():
    aug, base, _ = banded(1)
    u, x = banded_words(base)
    sri = check_sri(aug, u, x, x, ())
    with pytest.raises(NotDegenerateError):
        degenerate_shorten(aug, sri)


def test_sri_rejections_name_the_failing_condition():
    aug, base, reach = banded(1)
    u, x = banded_words(base)
    assert check_sri_verbose(aug, u, (), x, ())[1] == "x and y must be nonempty"
    with pytest.raises(ValueError, match="unknown SRI kind"):
        check_sri_verbose(aug, u, x, x, (), "weird")
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "h", reach))
    with pytest.raises(ValueError, match="top level"):
        check_sri_verbose(aug, u, (jump,), x, ())
    alpha = stabilise(aug, Cycle(aug, Spine("z", reach), x))
    assert check_sri_verbose(aug, u, (alpha,), x, ())[1] == "support changes across the cuts"
    assert "bounded-letter" in check_sri_verbose(
        aug, u + (alpha,), x, x, (), length_fn=lambda d: 0)[1]
    assert check_sri_verbose(
        aug, u, x * 5, x, (), length_fn=lambda d: 8)[1] == "|x|=5 exceeds its depth budget over mbar"
    assert check_sri(aug, u, (), x, ()) is None


def test_close_lanes_do_not_move_as_a_block():
    aug, base, _ = banded(1, entry=10)
    u, x = banded_words(base)
    assert check_sri_verbose(aug, u, x, x, ())[1] == "part 0 does not move as a block"


def test_gap_may_not_close_at_a_later_cut():
    aug, base, _ = banded(-1, entry=65)
    u, x = banded_words(base)
    assert check_sri_verbose(
        aug, u, x, x, (), "general")[1] == "gap between parts closes at cut ux"


def test_shift_signs_must_agree_between_x_and_y():
    wfa = Wfa(["z", "h"], ["a", "b", "c"], "z",
              [("z", "c", 0, "z"), ("z", "c", 100, "h"),
               ("z", "a", 0, "z"), ("h", "a", 1, "h"),
               ("z", "b", 0, "z"), ("h", "b", -1, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    u = (base[("z", "c", "z")],)
    assert check_sri_verbose(
        aug, u, (base[("z", "a", "z")],), (base[("z", "b", "z")],),
        ())[1] == "part 1 shift signs differ (1 vs -1)"


def test_monotonicity_clauses_see_the_sunken_lane():
    # lane n enters 100 below the baseline and keeps sinking; no base
    # letter kills it, so both the charge and the raw potential track it
    wfa = Wfa(["z", "n"], ["a", "c"], "z",
              [("z", "c", 0, "z"), ("z", "c", -100, "n"), ("n", "c", 0, "n"),
               ("z", "a", 0, "z"), ("n", "a", -1, "n")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    u, x = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    assert check_sri_verbose(
        aug, u, x, x, (), "general")[1] == "charge not antitone: 100, 101, 102"
    assert check_sri_verbose(
        aug, u, x, x, (), "simple")[1] == "potential not monotone: -100, -101, -102"
