"""Charge, potential, growth and witness checks on small hand-built machines.

The crash gadget used throughout: one lane sinks one unit per ``a`` while
the baseline stays flat, ``b`` keeps both lanes alive, and ``t`` is only
readable from the baseline lane, so it kills the sunken runs.
"""

import pytest

from minplus import AugState, AugWfa, Configuration, Wfa, xconf
from minplus.analysis import (
    DominanceParams,
    JumpPresentError,
    NoSeamlessBaselineError,
    bounded_growth_check,
    charge,
    check_witness,
    construct_high_potential,
    default_params,
    monotonicity_check,
    potential,
    potential_of_config,
    verify_dominance,
)
from minplus.cactus import Cycle, stabilise
from minplus.letters import Spine


def crash_gadget():
    wfa = Wfa(
        ["z", "n"], ["a", "b", "t"], "z",
        [("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
         ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base, frozenset({"z", "n"})


def drift_machine():
    # u climbs one unit per a; t is readable from u only
    wfa = Wfa(
        ["z", "u"], ["a", "c", "t"], "z",
        [("z", "c", 0, "z"), ("z", "c", 0, "u"),
         ("z", "a", 0, "z"), ("u", "a", 1, "u"), ("u", "t", 0, "u")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base, frozenset({"z", "u"})


def test_charge_counts_the_fall_below_the_baseline():
    aug, base, reach = crash_gadget()
    ga = base[("z", "a", "z")]
    for p in (1, 3, 7):
        report = charge(aug, (ga,) * p)
        assert report.psi == p - 1
        assert report.state == AugState("n", "z", reach)


def test_charge_of_the_empty_word_is_zero():
    aug, _, _ = crash_gadget()
    report = charge(aug, ())
    assert report.psi == 0
    assert report.state == AugState("z", "z", frozenset({"z"}))


def test_potential_stays_at_zero_under_base_letters():
    aug, base, reach = crash_gadget()
    ga, gt = base[("z", "a", "z")], base[("z", "t", "z")]
    params = default_params(aug)
    for p in (3, 7):
        report = potential(aug, (ga,) * p, params)
        assert report.phi == 0
        assert report.dominant == AugState("z", "z", reach)
        assert report.suffix == (gt,)
    # with both lanes level the minimum itself is dominant via the empty suffix
    flat = potential(aug, (ga,), params)
    assert flat.phi == 0
    assert flat.dominant == AugState("n", "z", reach)
    assert flat.suffix == ()


def test_potential_with_jump_letters_sees_the_climbing_lane():
    aug, base, reach = drift_machine()
    entry, ga = base[("z", "c", "z")], base[("z", "a", "z")]
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "u", reach))
    params = DominanceParams(horizon=4, alphabet=tuple(aug.base_letters()) + (jump,))
    word = (entry,) + (ga,) * 4
    report = potential(aug, word, params)
    assert report.phi == 4
    assert report.dominant == AugState("u", "z", reach)
    assert report.suffix == (jump, base[("u", "t", "u")])
    # base letters alone cannot certify a state above the baseline
    assert potential(aug, word, default_params(aug)).phi == 0


def test_potential_reports_raw_configuration_values():
    aug, base, reach = crash_gadget()
    config = Configuration({AugState("z", "z", reach): 0,
                            AugState("n", "z", reach): -4})
    full = potential_of_config(aug, config, default_params(aug))
    assert (full.phi, full.dominant) == (0, AugState("z", "z", reach))
    assert full.suffix == (base[("z", "t", "z")],)
    # without t nothing kills the sunken lane, so the minimum is the
    # only dominant state and phi sits below zero
    only_b = DominanceParams(horizon=3, alphabet=(base[("z", "b", "z")],))
    report = potential_of_config(aug, config, only_b)
    assert (report.phi, report.suffix) == (-4, ())
    assert report.dominant == AugState("n", "z", reach)


def test_verify_dominance_checks_the_survivor_set():
    aug, base, reach = crash_gadget()
    config = xconf(aug, Configuration.unit(aug.initial), (base[("z", "a", "z")],) * 3)
    top, low = AugState("z", "z", reach), AugState("n", "z", reach)
    assert verify_dominance(aug, config, top, (base[("z", "t", "z")],))
    assert not verify_dominance(aug, config, top, (base[("z", "a", "z")],))
    assert verify_dominance(aug, config, low, ())


def test_dominance_params_validation():
    aug, base, _ = crash_gadget()
    with pytest.raises(ValueError):
        DominanceParams(horizon=-1, alphabet=(base[("z", "b", "z")],))
    with pytest.raises(ValueError):
        DominanceParams(horizon=2, alphabet=())
    params = default_params(aug)
    assert params.horizon == 4
    assert params.alphabet == tuple(aug.base_letters())


def test_jump_words_are_rejected():
    aug, base, reach = crash_gadget()
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "n", reach))
    with pytest.raises(JumpPresentError):
        charge(aug, (jump,))
    with pytest.raises(JumpPresentError):
        potential(aug, (jump,), default_params(aug))


def test_non_seamless_baseline_is_rejected():
    wfa = Wfa(["z", "w"], ["a"], "z",
              [("z", "a", 0, "z"), ("z", "a", -5, "w"), ("w", "a", 0, "z")])
    aug = AugWfa(wfa)
    la = aug.base_letters()[0]
    with pytest.raises(NoSeamlessBaselineError):
        charge(aug, (la, la))


def test_bounded_growth_holds_on_the_crash_gadget():
    aug, base, _ = crash_gadget()
    samples = [(base[("z", "a", "z")],) * p for p in range(4)]
    report = bounded_growth_check(aug, aug.base_letters(), samples)
    assert report.checked == 13
    assert report.findings == ()


def test_construct_high_potential_certifies_the_crash():
    aug, base, reach = crash_gadget()
    ga, gt = base[("z", "a", "z")], base[("z", "t", "z")]
    shifted, report = construct_high_potential(aug, (ga,) * 7, gt, 5)
    assert report.phi == 6
    assert report.dominant == AugState("z", "n", reach)
    assert [l.kind for l in report.suffix] == ["jump", "base"]
    assert report.suffix[1] is gt
    # the word was re-anchored onto the sinking run
    assert [l.weight for l in shifted] == [0, -1, -1, -1, -1, -1, -1]
    config = xconf(aug, Configuration.unit(aug.initial), shifted)
    assert {s.inner: w for s, w in config.items()} == {"n": 0, "z": 6}
    assert verify_dominance(aug, config, report.dominant, report.suffix)


def test_construct_high_potential_requires_a_real_drop():
    aug, base, reach = crash_gadget()
    ga, gt = base[("z", "a", "z")], base[("z", "t", "z")]
    word = (ga,) * 7
    with pytest.raises(ValueError, match="drop 6 does not exceed 6"):
        construct_high_potential(aug, word, gt, 6)
    with pytest.raises(ValueError, match="end baseline"):
        construct_high_potential(aug, word, base[("n", "a", "n")], 1)
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "n", reach))
    with pytest.raises(ValueError):
        construct_high_potential(aug, word, jump, 1)


def test_monotonicity_on_comparable_crash_configurations():
    aug, base, reach = crash_gadget()
    superior = Configuration({AugState("z", "z", reach): 0,
                              AugState("n", "z", reach): -4})
    inferior = Configuration({AugState("z", "z", reach): 0,
                              AugState("n", "z", reach): -1})
    report = monotonicity_check(aug, superior, inferior,
                                (base[("z", "a", "z")],), default_params(aug))
    assert report.ok
    assert report.failures == ()
    assert (report.phi_superior, report.phi_inferior) == (0, 0)
    assert (report.psi_superior, report.psi_inferior) == (5, 2)


def test_monotonicity_preconditions():
    aug, base, reach = crash_gadget()
    params = default_params(aug)
    z0, n0 = AugState("z", "z", reach), AugState("n", "z", reach)
    word = (base[("z", "a", "z")],)
    with pytest.raises(ValueError, match="support"):
        monotonicity_check(aug, Configuration({z0: 0}),
                           Configuration({z0: 0, n0: 1}), word, params)
    with pytest.raises(ValueError, match="not superior"):
        monotonicity_check(aug, Configuration({z0: 0, n0: 2}),
                           Configuration({z0: 0, n0: 1}), word, params)
    with pytest.raises(ValueError, match="baseline"):
        monotonicity_check(aug, Configuration({z0: 1, n0: 2}),
                           Configuration({z0: 1, n0: 2}), word, params)
    jump = aug.jump_letter(z0, AugState("z", "n", reach))
    with pytest.raises(JumpPresentError):
        monotonicity_check(aug, Configuration({z0: 0, n0: -2}),
                           Configuration({z0: 0, n0: -1}), (jump,), params)


# -- witness checking ---------------------------------------------------------


def witness_machine():
    """Two lanes that never mix: a climbs h, e climbs z.

    The z-anchored a-cycle grounds only (z, z), so its stabilised letter
    kills h; the h-anchored e-cycle grounds only (h, h) and kills z.
    """
    wfa = Wfa(["z", "h"], ["a", "c", "e"], "z",
              [("z", "c", 0, "z"), ("z", "c", 100, "h"),
               ("z", "a", 0, "z"), ("h", "a", 1, "h"),
               ("z", "e", 1, "z"), ("h", "e", 0, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "h"})
    alpha_a = stabilise(aug, Cycle(aug, Spine("z", reach), (base[("z", "a", "z")],)))
    alpha_e = stabilise(aug, Cycle(aug, Spine("h", reach), (base[("h", "e", "h")],)))
    assert aug.letter_pairs(alpha_a) == {"z": (("z", 0),)}
    assert aug.letter_pairs(alpha_e) == {"h": (("h", 0),)}
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "h", reach))
    prefix = (base[("z", "c", "z")],)
    return aug, base, reach, prefix, alpha_a, (jump, alpha_e)


def test_witness_accepts_the_hand_built_pair():
    aug, _, _, prefix, alpha_a, tail = witness_machine()
    for witness_type in (0, 1):
        verdict = check_witness(aug, prefix, alpha_a, tail, witness_type)
        assert verdict.ok, verdict.details
        assert verdict.witness_type == witness_type
        assert verdict.failed_clause is None


def test_witness_type_must_be_zero_or_one():
    aug, _, _, prefix, alpha_a, tail = witness_machine()
    with pytest.raises(ValueError):
        check_witness(aug, prefix, alpha_a, tail, 2)


def test_witness_alphabet_clause():
    aug, base, reach, prefix, alpha_a, tail = witness_machine()
    jump = tail[0]
    no_cactus_end = check_witness(aug, prefix, alpha_a, (jump,), 0)
    assert (no_cactus_end.ok, no_cactus_end.failed_clause) == (False, "alphabet")
    assert "end with a cactus" in no_cactus_end.details
    base_middle = check_witness(aug, prefix, base[("z", "a", "z")], tail, 0)
    assert (base_middle.ok, base_middle.failed_clause) == (False, "alphabet")
    jump_prefix = check_witness(aug, (jump,), alpha_a, tail, 0)
    assert (jump_prefix.ok, jump_prefix.failed_clause) == (False, "alphabet")
    assert "prefix" in jump_prefix.details


def test_witness_ghost_set_clause():
    aug, _, _, _, alpha_a, tail = witness_machine()
    verdict = check_witness(aug, (), alpha_a, tail, 0)
    assert (verdict.ok, verdict.failed_clause) == (False, "ghost-set")


def test_witness_run_weight_clauses():
    aug, base, reach, prefix, alpha_a, tail = witness_machine()
    # a tail the stabilised a-cycle survives leaves the cactus side finite
    benign = check_witness(aug, prefix, alpha_a, (base[("z", "a", "z")], alpha_a), 0)
    assert (benign.ok, benign.failed_clause) == (False, "infinite-with-cactus")
    # rejoining lane z after alpha_e kills the pumped side as well
    back = aug.jump_letter(AugState("h", "h", reach), AugState("h", "z", reach))
    lethal = check_witness(aug, prefix, alpha_a, tail + (back, alpha_a), 0)
    assert (lethal.ok, lethal.failed_clause) == (False, "finite-with-pump")


def test_witness_reach_invariance_clause():
    # pumping the a-cycle re-populates lane h from z, changing boolean reach
    wfa = Wfa(["z", "h"], ["a", "c", "x"], "z",
              [("z", "c", 0, "z"), ("z", "c", 100, "h"),
               ("z", "a", 0, "z"), ("z", "a", 5, "h"), ("h", "a", 1, "h"),
               ("z", "x", 0, "z"), ("h", "x", 1, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "h"})
    alpha_x = stabilise(aug, Cycle(aug, Spine("z", reach), (base[("z", "x", "z")],)))
    alpha_a = stabilise(aug, Cycle(aug, Spine("z", reach), (base[("z", "a", "z")],)))
    assert aug.letter_pairs(alpha_x) == {"z": (("z", 0),)}
    assert aug.letter_pairs(alpha_a) == {"z": (("z", 0), ("h", 5))}
    verdict = check_witness(aug, (base[("z", "c", "z")], alpha_x), alpha_a,
                            (alpha_x,), 0)
    assert (verdict.ok, verdict.failed_clause) == (False, "reach-invariance")
