"""Zooming machinery: profile decompositions, covers and the step itself.

Desk-scale thresholds throughout; the recursion-derived thresholds are
only touched to pin their first saturating values.
"""

import pytest

from minplus import INF, AugState, AugWfa, Configuration, Wfa
from minplus.analysis import DominanceParams, NoSeamlessBaselineError
from minplus.wfa import minimal_run
from minplus.zoom import (
    AmplitudeInsufficientError,
    HighPotentialOpportunity,
    NoLevelSetError,
    QuantumMisalignedError,
    ZoomThresholds,
    check_cover,
    decompose_phi_bounded,
    decompose_phi_increasing,
    decompose_psi,
    independent_gap,
    near,
    paper_thresholds,
    zoom_step,
)

DESK = ZoomThresholds(gap=4, cover=4, amp=1000, seg_min_len=1, seg_count=3,
                      seg_quantum=2)


def drift_machine():
    # lane u climbs one unit per a; only jumps make it dominant
    wfa = Wfa(["z", "u"], ["a", "c", "t"], "z",
              [("z", "c", 0, "z"), ("z", "c", 0, "u"),
               ("z", "a", 0, "z"), ("u", "a", 1, "u"), ("u", "t", 0, "u")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "u"})
    jump = aug.jump_letter(AugState("z", "z", reach), AugState("z", "u", reach))
    params = DominanceParams(horizon=4, alphabet=tuple(aug.base_letters()) + (jump,))
    return aug, base, params


def crash_gadget():
    wfa = Wfa(["z", "n"], ["a", "b", "t"], "z",
              [("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
               ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base


def banded_machine():
    wfa = Wfa(["z", "h"], ["a", "c"], "z",
              [("z", "c", 0, "z"), ("z", "c", 100, "h"),
               ("z", "a", 0, "z"), ("h", "a", 1, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base, frozenset({"z", "h"})


def test_threshold_validation():
    with pytest.raises(ValueError, match="seg_count"):
        ZoomThresholds(gap=1, cover=1, amp=1, seg_min_len=1, seg_count=2,
                       seg_quantum=1)
    with pytest.raises(ValueError, match="cover"):
        ZoomThresholds(gap=1, cover=0, amp=1, seg_min_len=1, seg_count=3,
                       seg_quantum=1)


def test_increasing_potential_decomposition():
    aug, base, params = drift_machine()
    word = (base[("z", "c", "z")],) + (base[("z", "a", "z")],) * 13
    dec = decompose_phi_increasing(aug, word, DESK, params)
    assert dec.cuts == (5, 9, 13)
    assert dec.levels == (4, 8, 12)
    assert dec.step == 4
    with pytest.raises(AmplitudeInsufficientError, match="only 1 of 3"):
        decompose_phi_increasing(
            aug, word[:7], DESK, params)


def test_bounded_potential_decomposition_needs_a_level_set():
    aug, base, params = drift_machine()
    climb = (base[("z", "c", "z")],) + (base[("z", "a", "z")],) * 11
    with pytest.raises(NoLevelSetError, match="level 11 holds only 1"):
        decompose_phi_bounded(aug, climb, DESK, params)
    with pytest.raises(QuantumMisalignedError):
        decompose_phi_bounded(aug, climb[:1], DESK, params)


def test_bounded_potential_decomposition_on_a_flat_profile():
    aug = AugWfa(Wfa(["q"], ["a"], "q", [("q", "a", 0, "q")]))
    word = (aug.base_letters()[0],) * 12
    dec = decompose_phi_bounded(aug, word, DESK)
    assert dec.level == 0
    assert dec.prefix == 2
    assert dec.cuts == (2, 4, 6, 8, 10, 12)
    assert dec.nested is None


def test_charge_decomposition_cuts_at_the_running_peak():
    aug, base = crash_gadget()
    word = (base[("z", "a", "z")],) * 30 + (base[("z", "b", "z")],) * 14
    dec = decompose_psi(aug, word, DESK, drop_bound=5)
    assert dec.cuts == (34, 38, 42)
    assert dec.levels == (21, 13, 5)
    assert dec.step == 8
    with pytest.raises(AmplitudeInsufficientError, match="only 0 of 3"):
        decompose_psi(aug, (base[("z", "a", "z")],) * 6, DESK, drop_bound=5)


def test_charge_decomposition_surfaces_crash_opportunities():
    aug, base = crash_gadget()
    word = (base[("z", "a", "z")],) * 4 + (base[("z", "b", "z")],)
    with pytest.raises(HighPotentialOpportunity) as err:
        decompose_psi(aug, word, DESK, drop_bound=1)
    assert err.value.position == 5
    assert err.value.letter is base[("z", "b", "z")]
    assert err.value.drop == 2


def test_charge_decomposition_needs_a_seamless_baseline():
    wfa = Wfa(["z", "w"], ["a"], "z",
              [("z", "a", 0, "z"), ("z", "a", -5, "w"), ("w", "a", 0, "z")])
    aug = AugWfa(wfa)
    la = aug.base_letters()[0]
    with pytest.raises(NoSeamlessBaselineError):
        decompose_psi(aug, (la, la), DESK, drop_bound=50)


def test_independent_gap_and_near():
    aug, base, reach = banded_machine()
    w1, w2 = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    full = w1 + w2 * 3
    run_z = minimal_run(aug, full, target=AugState("z", "z", reach))
    run_h = minimal_run(aug, full, target=AugState("h", "z", reach))
    assert (run_z.weight, run_h.weight) == (0, 103)
    assert independent_gap([run_z, run_h], skip=1) == 101
    assert independent_gap([run_z, run_h]) == 100
    assert independent_gap([run_z]) is INF
    config = Configuration({AugState("z", "z", reach): 5,
                            AugState("h", "z", reach): 20})
    assert near(config, 4, 3) == {AugState("z", "z", reach): 1}


def test_check_cover_validates_its_inputs():
    aug, base, reach = banded_machine()
    w1, w2 = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    full = w1 + w2 * 3
    run_z = minimal_run(aug, full, target=AugState("z", "z", reach))
    run_h = minimal_run(aug, full, target=AugState("h", "z", reach))
    assert check_cover(aug, w1, w2, [run_z, run_h], 3, 4).ok
    with pytest.raises(ValueError, match="nonempty"):
        check_cover(aug, w1, (), [run_z], 3, 4)
    with pytest.raises(ValueError, match="traverse"):
        check_cover(aug, w1, w2, [run_z], 2, 4)


def test_zoom_step_extracts_an_sri_from_covered_cuts():
    aug, base, reach = banded_machine()
    w1, w2 = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    full = w1 + w2 * 3
    runs = [minimal_run(aug, full, target=AugState("z", "z", reach)),
            minimal_run(aug, full, target=AugState("h", "z", reach))]
    outcome = zoom_step(aug, w1, w2, runs, DESK)
    assert outcome.kind == "sri"
    assert outcome.gap == 101
    assert (outcome.w1, outcome.w2) == (w1, w2)
    sri = outcome.sri
    assert sri.u == w1
    assert sri.x == w2 and sri.y == w2 and sri.v == w2
    assert sri.shifts_x == (0, 1)


def test_zoom_step_rejects_inconsistent_thresholds():
    aug, base, reach = banded_machine()
    w1, w2 = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
    full = w1 + w2 * 3
    runs = [minimal_run(aug, full, target=AugState("z", "z", reach))]
    narrow = ZoomThresholds(gap=4, cover=4, amp=1000, seg_min_len=2,
                            seg_count=3, seg_quantum=2)
    outcome = zoom_step(aug, w1, w2, runs, narrow)
    assert outcome.kind == "error"
    assert outcome.reason.startswith("thresholds-inconsistent")


def test_zoom_step_tracks_an_escaping_lane():
    # lane e gains two per a and leaves the cover of the baseline run
    wfa = Wfa(["s", "z", "e"], ["a", "c"], "s",
              [("s", "c", 0, "z"), ("s", "c", 0, "e"),
               ("z", "a", 0, "z"), ("e", "a", 2, "e")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "e"})
    thresholds = ZoomThresholds(gap=4, cover=8, amp=1000, seg_min_len=1,
                                seg_count=5, seg_quantum=2)
    w1, w2 = (base[("s", "c", "z")],), (base[("z", "a", "z")],)
    run = minimal_run(aug, w1 + w2 * 5, target=AugState("z", "z", reach))
    report = check_cover(aug, w1, w2, [run], 5, 8)
    assert not report.ok
    assert report.failures == ((5, AugState("e", "z", reach), 10),)
    outcome = zoom_step(aug, w1, w2, [run], thresholds)
    assert outcome.kind == "new-run"
    assert outcome.gap is INF
    assert (len(outcome.w1), len(outcome.w2)) == (5, 1)
    assert outcome.run.end == AugState("e", "z", reach)
    assert outcome.run.weight == 10


def test_zoom_step_detects_entangled_runs():
    # z and h ride one unit apart while e escapes: no safe new run
    wfa = Wfa(["s", "z", "h", "e"], ["a", "c"], "s",
              [("s", "c", 0, "z"), ("s", "c", 1, "h"), ("s", "c", 50, "e"),
               ("z", "a", 0, "z"), ("h", "a", 0, "h"), ("e", "a", 2, "e")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    reach = frozenset({"z", "h", "e"})
    thresholds = ZoomThresholds(gap=4, cover=8, amp=1000, seg_min_len=1,
                                seg_count=3, seg_quantum=2)
    w1, w2 = (base[("s", "c", "z")],), (base[("z", "a", "z")],)
    full = w1 + w2 * 3
    runs = [minimal_run(aug, full, target=AugState("z", "z", reach)),
            minimal_run(aug, full, target=AugState("h", "z", reach))]
    outcome = zoom_step(aug, w1, w2, runs, thresholds)
    assert outcome.kind == "error"
    assert outcome.gap == 1
    assert "entangle" in outcome.reason


def test_recursion_derived_thresholds_saturate():
    assert paper_thresholds(1) == ZoomThresholds(
        gap=8, cover=8, amp=128, seg_min_len=1, seg_count=3, seg_quantum=2)
    assert paper_thresholds(2, cap=10 ** 6) == ZoomThresholds(
        gap=16384, cover=16384, amp=2048, seg_min_len=1, seg_count=3,
        seg_quantum=8)
