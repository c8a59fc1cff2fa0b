"""Baseline augmentation: states, letters, shifts, ghost reachability."""

import random

import pytest

from minplus.weights import INF
from minplus.wfa import (Configuration, Wfa, eval_word, is_seamless,
                         min_letter_counter, minimal_run, xconf)
from minplus.augmented import (AugState, AugWfa, InvariantViolation, Spine,
                               UnreadableWordError, augment, baseline_run,
                               baseline_shift_config, baseline_shift_run,
                               baseline_shift_word, encode_run, ghost_reach,
                               shift_state)

from oracles import random_wfa, random_words


def counter_aug() -> AugWfa:
    return augment(min_letter_counter())


# -- states and sizes ------------------------------------------------------------


def test_aug_state_components_validated():
    AugState("p", "q", frozenset(["p", "q"]))
    with pytest.raises(ValueError):
        AugState("x", "q", frozenset(["p", "q"]))
    with pytest.raises(ValueError):
        AugState("p", "x", frozenset(["p", "q"]))


def test_initial_and_sizes():
    aug = counter_aug()
    assert aug.initial == AugState("q0", "q0", frozenset(["q0"]))
    assert aug.declared_size() == 3 * 3 * 2**3
    assert aug.stab_n(4) == 4
    assert augment(min_letter_counter(), mode="declared").stab_n(4) == 72
    with pytest.raises(ValueError):
        augment(min_letter_counter(), mode="loose")


# -- base letters ------------------------------------------------------------------


def test_base_letters_interned():
    aug = counter_aug()
    a = aug.base_letter("q0", "a", "qa")
    b = aug.base_letter("q0", "a", "qa")
    assert a is b and a.weight == 1 and a.is_base
    with pytest.raises(ValueError):
        aug.base_letter("qa", "a", "qb")
    assert len(aug.base_letters()) == 8


def test_base_letter_successors_subtract_letter_weight():
    aug = counter_aug()
    letter = aug.base_letter("q0", "a", "qb")  # weight 0
    succ = dict()
    for state, w in aug.successors(aug.initial, letter):
        succ[state.inner] = w
    # underlying: q0 -a/1-> qa, q0 -a/0-> qb; letter weight 0 is subtracted
    assert succ == {"qa": 1, "qb": 0}
    ends = {s for s, _ in aug.successors(aug.initial, letter)}
    for s in ends:
        assert s.baseline == "qb" and s.reachable == frozenset(["qa", "qb"])


def test_base_letter_gated_by_baseline():
    aug = counter_aug()
    wrong = aug.base_letter("qa", "a", "qa")
    assert aug.successors(aug.initial, wrong) == []


def test_spine_after_and_unreadable():
    aug = counter_aug()
    word = (aug.base_letter("q0", "a", "qa"), aug.base_letter("qa", "b", "qa"))
    spine = aug.spine_after(word)
    assert spine == Spine("qa", frozenset(["qa", "qb"]))
    with pytest.raises(UnreadableWordError):
        aug.spine_after(word + (aug.base_letter("q0", "a", "qa"),))


def test_ghost_set_saturates_spine():
    aug = counter_aug()
    spine = Spine("qa", frozenset(["qa", "qb"]))
    ghosts = aug.ghost_set(spine)
    assert {g.inner for g in ghosts} == {"qa", "qb"}
    assert all(g.baseline == "qa" for g in ghosts)


# -- encoded runs and the baseline -------------------------------------------------


def test_encode_run_makes_that_run_free():
    aug = counter_aug()
    m = aug.underlying
    run = minimal_run(m, "ab")
    word = encode_run(aug, run)
    base = baseline_run(aug, word)
    assert all(st.weight == 0 for st in base.steps)
    assert base.end.inner == run.end
    # every run on the same underlying word appears at its relative cost
    final = xconf(aug, Configuration.unit(aug.initial), word)
    inner_costs = {s.inner: w for s, w in final.items()}
    run_cost = sum(st.weight for st in run.steps)
    for state, rel in inner_costs.items():
        absolute = rel + run_cost
        from oracles import oracle_mwt
        assert absolute == oracle_mwt(m, [m.initial], "ab", [state])


def test_baseline_run_rejects_jumps():
    aug = counter_aug()
    j = aug.jump_letter(AugState("qa", "qa", frozenset(["qa", "qb"])),
                        AugState("qb", "qb", frozenset(["qa", "qb"])))
    word = (aug.base_letter("q0", "a", "qa"), j)
    with pytest.raises(ValueError):
        baseline_run(aug, word)


def test_baseline_seamless_on_encoded_minimal_runs():
    rng = random.Random(21)
    for _ in range(25):
        m = random_wfa(rng)
        aug = augment(m)
        for word in random_words(rng, m.alphabet, 4, 5):
            run = minimal_run(m, word)
            if run is None:
                continue
            encoded = encode_run(aug, run)
            assert is_seamless(aug, baseline_run(aug, encoded))


# -- baseline shifts -----------------------------------------------------------------


def _two_run_fixture():
    # p loops at cost 1, q loops at cost 0; both read the same symbol word
    m = Wfa.trimmed(
        ["s", "p", "q"], ["a", "b"], "s",
        [("s", "a", 1, "p"), ("s", "a", 0, "q"),
         ("p", "b", 1, "p"), ("q", "b", 0, "q")])
    return m, augment(m)


def test_shift_weights_are_differences():
    m, aug = _two_run_fixture()
    word = (aug.base_letter("s", "a", "p"), aug.base_letter("p", "b", "p"))
    base = baseline_run(aug, word)
    spine = aug.spine_after(word)
    # the q-run on the same word, expressed over the augmented machine
    q_run = minimal_run(aug, word)
    assert q_run.end.inner == "q"
    anchor = q_run
    shifted_word = baseline_shift_word(aug, word, anchor)
    assert [letter.weight for letter in shifted_word] == [0, 0]
    shifted_base = baseline_shift_run(aug, base, anchor)
    # a_i - d_i: baseline costs 0 each step, anchor costs -1 relative
    assert [st.weight for st in shifted_base.steps] == [1, 1]
    # re-anchored positions follow the anchor run: start still at s, end over q
    assert shifted_base.start.baseline == "s"
    assert shifted_base.end.baseline == "q"
    assert shifted_base.end.inner == "p"


def test_shift_onto_itself_is_zero_and_seamless():
    m, aug = _two_run_fixture()
    word = (aug.base_letter("s", "a", "q"), aug.base_letter("q", "b", "q"))
    base = baseline_run(aug, word)
    shifted = baseline_shift_run(aug, base, base)
    assert all(st.weight == 0 for st in shifted.steps)
    assert is_seamless(aug, shifted)
    assert baseline_shift_word(aug, word, base) == word


def test_shift_preserves_pairwise_gaps():
    rng = random.Random(22)
    checked = 0
    for _ in range(60):
        m = random_wfa(rng)
        aug = augment(m)
        for sym_word in random_words(rng, m.alphabet, 3, 4):
            base_run = minimal_run(m, sym_word)
            if base_run is None:
                continue
            word = encode_run(aug, base_run)
            final = xconf(aug, Configuration.unit(aug.initial), word)
            anchor = minimal_run(aug, word)
            if anchor is None:
                continue
            shifted_word = baseline_shift_word(aug, word, anchor)
            final2 = xconf(aug, Configuration.unit(aug.initial), shifted_word)
            vals1 = sorted(w for _s, w in final.items())
            vals2 = sorted(w for _s, w in final2.items())
            gaps1 = [b - a for a, b in zip(vals1, vals1[1:])]
            gaps2 = [b - a for a, b in zip(vals2, vals2[1:])]
            assert gaps1 == gaps2
            checked += 1
    assert checked > 20


def test_shift_config_permutes_baseline():
    aug = counter_aug()
    R = frozenset(["qa", "qb"])
    config = Configuration({AugState("qa", "qa", R): 0, AugState("qb", "qa", R): 3})
    anchor = AugState("qb", "qa", R)
    out = baseline_shift_config(config, anchor)
    assert out[AugState("qa", "qb", R)] == 0 and out[AugState("qb", "qb", R)] == 3
    with pytest.raises(ValueError):
        baseline_shift_config(
            Configuration({AugState("qa", "qb", R): 0}), anchor)


def test_shift_rejects_jump_words():
    aug = counter_aug()
    R = frozenset(["qa", "qb"])
    j = aug.jump_letter(AugState("qa", "qa", R), AugState("qb", "qb", R))
    first = aug.base_letter("q0", "a", "qa")
    word = (first, j)
    start = AugState("q0", "q0", frozenset(["q0"]))
    from minplus.wfa import RunStep, RunTrace
    s1 = AugState("qa", "qa", R)
    s2 = AugState("qa", "qb", R)
    run = RunTrace(start, (RunStep(start, first, 1, s1), RunStep(s1, j, 0, s2)))
    with pytest.raises(ValueError):
        baseline_shift_word(aug, word, run)


# -- ghost reachability ---------------------------------------------------------------


def test_ghost_reach_references_and_reached():
    aug = counter_aug()
    word = (aug.base_letter("q0", "a", "qa"),)
    reached, ghosts = ghost_reach(aug, word)
    assert {s.inner for s in reached} == {"qa", "qb"}
    # no jumps were read, so every ghost position is actually occupied
    assert reached == ghosts
    assert all(s.baseline == "qa" for s in ghosts)
