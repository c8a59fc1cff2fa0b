import itertools
import random

from minplus.determinise import (DetWfa, check_equiv, decide_at_gap, det_step,
                                 determinize, export_wfa, initial_config,
                                 config_name)
from minplus.weights import INF
from minplus.wfa import Wfa, eval_word, min_letter_counter, single_loop

# single loop
sl = single_loop()
det = determinize(sl, 0)
print("single_loop size", det.size, "aaa", det.evaluate(("a", "a", "a")))
rep = check_equiv(sl, det)
print("  equiv", rep.equivalent, "rounds", rep.rounds)

# counter at several gaps
ctr = min_letter_counter()
for b in (0, 1, 2, 8):
    dec = decide_at_gap(ctr, b)
    print("counter B=%d:" % b, "states", dec.restricted_states, "equiv", dec.equivalent,
          "word", dec.word, "src", dec.value_source, "det", dec.value_restricted,
          "kind", dec.kind)

# bounded-gap fixture
bg = Wfa.trimmed(
    ["q0", "u", "v"], ["a", "b"], "q0",
    [("q0", "a", 0, "u"), ("u", "a", 1, "u"),
     ("q0", "a", 1, "v"), ("v", "a", 1, "v"), ("v", "b", 0, "v")])
dec1 = decide_at_gap(bg, 1)
print("bounded gap1:", dec1.equivalent, "states", dec1.restricted_states)
dec0 = decide_at_gap(bg, 0)
print("bounded gap0:", dec0.equivalent, "word", dec0.word, "src", dec0.value_source,
      "det", dec0.value_restricted, "kind", dec0.kind)

# export names at gap 1
det_bg = determinize(bg, 1)
exported = export_wfa(det_bg)
print("export states", sorted(exported.states), "initial", exported.initial)

# det_step on counter
cfg0 = initial_config(ctr)
print("cfg0", cfg0, "name", config_name(cfg0))
step = det_step(ctr, cfg0, "a", 0)
print("step a:", step, "name", config_name(step[0]))

# negative cycle fixture
neg = Wfa.trimmed(
    ["q0", "c", "d"], ["a"], "q0",
    [("q0", "a", 10, "c"), ("q0", "a", 0, "d"),
     ("d", "a", 0, "d"), ("c", "a", -1, "c")])
decn = decide_at_gap(neg, 0)
print("neg gap0:", decn.equivalent, "word", decn.word, "len", len(decn.word),
      "src", decn.value_source, "det", decn.value_restricted, "kind", decn.kind)

# random property: restricted >= source
rng = random.Random(7)
checked = 0
for trial in range(60):
    n = rng.randint(1, 3)
    states = [f"s{i}" for i in range(n)]
    trans = []
    for p in states:
        for a in "ab":
            for q in states:
                if rng.random() < 0.5:
                    trans.append((p, a, rng.randint(-2, 2), q))
    try:
        wfa = Wfa.trimmed(states, ["a", "b"], "s0", trans)
    except ValueError:
        continue
    gap = rng.randint(0, 3)
    det = determinize(wfa, gap)
    for k in range(0, 5):
        for word in itertools.product("ab", repeat=k):
            a_val = eval_word(wfa, word)
            d_val = det.evaluate(word)
            assert d_val is INF or (a_val is not INF and d_val >= a_val), (word, a_val, d_val)
            checked += 1
print("random monotone ok, checked", checked)
