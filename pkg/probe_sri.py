import sys
sys.path.insert(0, "src")
from minplus import Wfa, AugWfa, AugState, Configuration, xconf
from minplus.analysis import DominanceParams, default_params
from minplus.sri import (
    check_sri, check_sri_verbose, classify, degenerate_shorten, bud,
    shift_kill_positive, NotDegenerateError, PositivityViolatedError,
    NoNegativeCycleError,
)
from minplus.cactus import Cycle, stabilise, NotStableError
from minplus.letters import Spine

def banded(hw, cw=100):
    wfa = Wfa(["z", "h"], ["a", "c"], "z",
              [("z", "c", 0, "z"), ("z", "c", cw, "h"),
               ("z", "a", 0, "z"), ("h", "a", hw, "h")])
    aug = AugWfa(wfa)
    base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
    return aug, base, frozenset({"z", "h"})

R = None
aug, base, R = banded(1)
u, x = (base[("z", "c", "z")],), (base[("z", "a", "z")],)
sri, reason = check_sri_verbose(aug, u, x, x, (), "simple")
print("up:", reason, sri.partition, sri.shifts_x, sri.shifts_y, sri.gap, sri.parts)
print("word:", sri.word == u + x + x, "part_of:", sri.part_of(AugState("h", "z", R)), sri.part_of(AugState("z", "h", R)))
tags = classify(aug, sri)
print("up classify:", tags)
b = bud(aug, sri)
print("up bud:", b.ok, b.weights_ok, b.charge_ok, b.potential_ok, b.witness_tuple, b.cactus)
try:
    shift_kill_positive(aug, sri)
except NoNegativeCycleError as e:
    print("up kill:", e)
try:
    degenerate_shorten(aug, sri)
except NotDegenerateError as e:
    print("up shorten:", e)

aug2, base2, _ = banded(-1)
u2, x2 = (base2[("z", "c", "z")],), (base2[("z", "a", "z")],)
sri2, reason2 = check_sri_verbose(aug2, u2, x2, x2, (), "general")
print("down:", reason2, sri2.shifts_x, sri2.shifts_y, sri2.gap)
print("down classify:", classify(aug2, sri2))
kr = shift_kill_positive(aug2, sri2)
print("down kill:", kr.repetitions, kr.killed_parts, kr.cactus, aug2.letter_pairs(kr.cactus))
print("anchor:", kr.anchor.start, kr.anchor.end, [(st.letter, st.weight) for st in kr.anchor.steps], kr.anchor.weight)
try:
    shift_kill_positive(aug2, sri2, ell_prime=2)
except PositivityViolatedError as e:
    print("down ell2:", e)
try:
    shift_kill_positive(aug2, sri2, ell_prime=5)
except ValueError as e:
    print("down ell5:", e)
try:
    bud(aug2, sri2)
except NotStableError as e:
    print("down bud:", e)

# degenerate single loop
dg = Wfa(["q"], ["a"], "q", [("q", "a", 0, "q")])
aug3 = AugWfa(dg)
ga3 = aug3.base_letters()[0]
sri3, reason3 = check_sri_verbose(aug3, (), (ga3,), (ga3,), (), "simple")
print("loop:", reason3, sri3.partition, sri3.gap)
print("loop classify:", classify(aug3, sri3))
print("loop shorten:", degenerate_shorten(aug3, sri3) == (ga3,))
try:
    bud(aug3, sri3)
except NotDegenerateError as e:
    print("loop bud:", e)

# failure reasons
print("empty x:", check_sri_verbose(aug, u, (), x, ())[1])
try:
    check_sri_verbose(aug, u, x, x, (), "weird")
except ValueError as e:
    print("kind:", e)
jmp = aug.jump_letter(AugState("z", "z", R), AugState("z", "h", R))
try:
    check_sri_verbose(aug, u, (jmp,), x, ())
except ValueError as e:
    print("jump top:", e)
alpha_up = stabilise(aug, Cycle(aug, Spine("z", R), x))
print("support:", check_sri_verbose(aug, u, (alpha_up,), x, ())[1])
print("lenfn cactus:", check_sri_verbose(aug, u + (alpha_up,), x, x, (), length_fn=lambda d: 0)[1])
print("lenfn x:", check_sri_verbose(aug, u, x * 5, x, (), length_fn=lambda d: 8)[1])

# one part, not a block
augb, baseb, _ = banded(1, cw=10)
print("block:", check_sri_verbose(augb, (baseb[("z", "c", "z")],), (baseb[("z", "a", "z")],), (baseb[("z", "a", "z")],), ())[1])

# gap closes at cut ux
augc, basec, _ = banded(-1, cw=65)
print("closes:", check_sri_verbose(augc, (basec[("z", "c", "z")],), (basec[("z", "a", "z")],), (basec[("z", "a", "z")],), (), "general")[1])

# sign mismatch
sg = Wfa(["z", "h"], ["a", "b", "c"], "z",
         [("z", "c", 0, "z"), ("z", "c", 100, "h"),
          ("z", "a", 0, "z"), ("h", "a", 1, "h"),
          ("z", "b", 0, "z"), ("h", "b", -1, "h")])
augs = AugWfa(sg)
bs = {(l.source, l.symbol, l.target): l for l in augs.base_letters()}
print("signs:", check_sri_verbose(augs, (bs[("z", "c", "z")],), (bs[("z", "a", "z")],), (bs[("z", "b", "z")],), ())[1])

# sinking baseline: charge not antitone (general), potential not monotone (simple)
sk = Wfa(["z", "h"], ["a", "c"], "z",
         [("z", "c", 0, "z"), ("z", "c", 100, "h"),
          ("z", "a", -1, "z"), ("h", "a", 0, "h")])
augk = AugWfa(sk)
bk = {(l.source, l.symbol, l.target): l for l in augk.base_letters()}
uk, xk = (bk[("z", "c", "z")],), (bk[("z", "a", "z")],)
print("antitone:", check_sri_verbose(augk, uk, xk, xk, (), "general")[1])
print("monotone:", check_sri_verbose(augk, uk, xk, xk, (), "simple")[1])

# check_sri thin wrapper
print("wrapper:", check_sri(aug, u, (), x, ()) is None, check_sri(aug, u, x, x, ()) is not None)

# bud potential-drop branch on the drift machine with jump params
dr = Wfa(["z", "u"], ["a", "c", "t"], "z",
         [("z", "c", 0, "z"), ("z", "c", 0, "u"),
          ("z", "a", 0, "z"), ("u", "a", 1, "u"), ("u", "t", 0, "u")])
augd = AugWfa(dr)
bd = {(l.source, l.symbol, l.target): l for l in augd.base_letters()}
Rd = frozenset({"z", "u"})
jd = augd.jump_letter(AugState("z", "z", Rd), AugState("z", "u", Rd))
pd = DominanceParams(horizon=4, alphabet=tuple(augd.base_letters()) + (jd,))
ud, xd = (bd[("z", "c", "z")],), (bd[("z", "a", "z")],)
srid, reasond = check_sri_verbose(augd, ud, xd, xd, (), "simple", params=pd)
print("drift sri:", reasond, srid.shifts_x if srid else None)
bd_rep = bud(augd, srid, params=pd)
print("drift bud:", bd_rep.ok, bd_rep.weights_ok, bd_rep.charge_ok, bd_rep.potential_ok)
if bd_rep.witness_tuple:
    w1, ca, cert = bd_rep.witness_tuple
    print("drift witness: |w1|=", len(w1), "cactus:", ca, "cert:", cert)
    print("drift verdict:", bd_rep.witness_verdict)
