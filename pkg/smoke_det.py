import itertools
import random
import time

from minplus.wfa import Wfa, eval_word, min_letter_counter, single_loop, find_gap_witness
from minplus.weights import INF, is_finite
from minplus.determinise import (
    BudgetExceededError, check_equiv, config_name, decide_at_gap, det_step,
    determinize, export_wfa, initial_config)

# deterministic machine: exact at gap 0
det = determinize(single_loop(), 0)
print("single_loop det size:", det.size, "eval aaa:", det.evaluate("aaa"))
rep = check_equiv(single_loop(), det)
print("single_loop equivalent:", rep.equivalent, "rounds:", rep.rounds)

# FIG counter machine: never determinisable
fig = min_letter_counter()
t0 = time.time()
for B in range(9):
    d = decide_at_gap(fig, B)
    assert not d.equivalent, B
    assert d.word is not None
    vs, vr = eval_word(fig, d.word), d.machine.evaluate(d.word)
    ok = (vr is INF and is_finite(vs)) or (is_finite(vr) and vr > vs)
    print(f"B={B}: states={d.restricted_states} kind={d.kind} "
          f"word={''.join(d.word)!r} src={vs} res={vr} ok={ok}")
print("counter sweep: %.2fs" % (time.time() - t0))

# bounded-gap fixture: determinisable at gap 1
bounded = Wfa.trimmed(
    states=["q0", "u", "v"], alphabet=["a", "b"], initial="q0",
    transitions=[
        ("q0", "a", 0, "u"), ("u", "a", 1, "u"),
        ("q0", "a", 1, "v"), ("v", "a", 1, "v"), ("v", "b", 0, "v"),
    ])
db = determinize(bounded, 1)
rb = check_equiv(bounded, db)
print("bounded at gap 1:", rb.equivalent, "det size:", db.size)
agree = True
for n in range(0, 9):
    for w in itertools.product("ab", repeat=n):
        if eval_word(bounded, w) != db.evaluate(w):
            agree = False
            print("MISMATCH", w)
print("exhaustive |w|<=8 agreement:", agree)
d0 = decide_at_gap(bounded, 0)
print("bounded at gap 0:", d0.equivalent, d0.kind, d0.word, d0.value_source, d0.value_restricted)

# export round-trip
x = export_wfa(db)
print("export states:", sorted(x.states))
for w in ["", "a", "aa", "aab", "aabb"]:
    assert eval_word(x, w) == db.evaluate(w), w
print("export evaluates identically")

# det_step basics
c0 = initial_config(fig)
c1, s1 = det_step(fig, c0, "a", 3)
print("fig step a:", config_name(c1), "shift", s1)

# budget
try:
    determinize(fig, 50, max_states=10)
    print("budget: MISSED")
except BudgetExceededError as e:
    print("budget raised:", e)

# random agreement: det value always >= source, equivalence verdict matches
# the exhaustive check
rng = random.Random(7)
t0 = time.time()
checked = mismatches = 0
for trial in range(200):
    nstates = rng.randint(1, 3)
    names = [f"s{i}" for i in range(nstates)]
    trans = []
    for src in names:
        for sym in "ab":
            for dst in names:
                if rng.random() < 0.4:
                    trans.append((src, sym, rng.randint(-2, 2), dst))
    try:
        m = Wfa.trimmed(names, ["a", "b"], "s0", trans)
    except Exception:
        continue
    B = rng.randint(0, 3)
    try:
        dm = determinize(m, B, max_states=4000)
    except BudgetExceededError:
        continue
    verdict = check_equiv(m, dm)
    exh_bad = None
    for n in range(0, 11):
        for w in itertools.product("ab", repeat=n):
            a, r = eval_word(m, w), dm.evaluate(w)
            if a != r and not (a is INF and r is INF):
                exh_bad = w
                break
        if exh_bad:
            break
    checked += 1
    if exh_bad is not None and verdict.equivalent:
        mismatches += 1
        print("DISAGREE", trial, exh_bad)
    if verdict.word is not None:
        vs, vr = eval_word(m, verdict.word), dm.evaluate(verdict.word)
        assert (vr is INF and is_finite(vs)) or (is_finite(vr) and is_finite(vs) and vr > vs)
print(f"random: {checked} checked, {mismatches} disagreements, %.1fs" % (time.time() - t0))
