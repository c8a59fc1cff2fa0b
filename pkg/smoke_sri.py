from minplus.wfa import Wfa
from minplus.augmented import augment
from minplus.sri import (
    check_sri_verbose, classify, degenerate_shorten, bud,
    shift_kill_positive, NoNegativeCycleError,
)

# two bands: z stays at 0, h rides 100 above and climbs under 'a'
up = Wfa.trimmed(
    states=["z", "h"], alphabet=["c", "a"], initial="z",
    transitions=[("z", "c", 0, "z"), ("z", "c", 100, "h"),
                 ("z", "a", 0, "z"), ("h", "a", 1, "h")])
aug = augment(up)
u = (aug.base_letter("z", "c", "z"),)
ga = aug.base_letter("z", "a", "z")
sri, why = check_sri_verbose(aug, u, (ga,), (ga,), ())
print("positive sri:", why, sri.partition if sri else None,
      sri.shifts_x if sri else None, sri.gap if sri else None)
tags = classify(aug, sri)
print("tags:", tags)
rep = bud(aug, sri)
print("bud:", rep.ok, rep.cactus, rep.word)
try:
    shift_kill_positive(aug, sri)
except NoNegativeCycleError as exc:
    print("shift-kill refuses:", exc)

# same shape but h sinks under 'a': negative flavour, killable
down = Wfa.trimmed(
    states=["z", "h"], alphabet=["c", "a"], initial="z",
    transitions=[("z", "c", 0, "z"), ("z", "c", 100, "h"),
                 ("z", "a", 0, "z"), ("h", "a", -1, "h")])
aug2 = augment(down)
u2 = (aug2.base_letter("z", "c", "z"),)
ga2 = aug2.base_letter("z", "a", "z")
sri2, why2 = check_sri_verbose(aug2, u2, (ga2,), (ga2,), (), kind="general")
print("negative sri:", why2, sri2.shifts_x if sri2 else None)
print("tags2:", classify(aug2, sri2))
kill = shift_kill_positive(aug2, sri2)
print("kill:", kill.cactus, kill.repetitions, kill.killed_parts,
      kill.anchor.start)

# degenerate single loop: x drops wholesale
single = Wfa.trimmed(states=["q0"], alphabet=["a"], initial="q0",
                     transitions=[("q0", "a", 0, "q0")])
aug3 = augment(single)
g3 = aug3.base_letter("q0", "a", "q0")
sri3, why3 = check_sri_verbose(aug3, (), (g3,), (g3,), ())
print("degen sri:", why3)
print("tags3:", classify(aug3, sri3))
print("shortened:", degenerate_shorten(aug3, sri3))
