import sys
sys.path.insert(0, "src")
from minplus import Wfa, Configuration, INF, AugWfa, AugState, xconf
from minplus.analysis import (
    DominanceParams, default_params, charge, potential, potential_of_config,
    verify_dominance, bounded_growth_check, construct_high_potential,
    monotonicity_check, check_witness, JumpPresentError, NoSeamlessBaselineError,
)
from minplus.cactus import stabilise, Cycle
from minplus.letters import Spine

# crash gadget
crash = Wfa(
    ["z", "n"], ["a", "b", "t"], "z",
    [("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
     ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")])
aug = AugWfa(crash)
base = {(l.source, l.symbol, l.target): l for l in aug.base_letters()}
ga_zz, ga_zn = base[("z", "a", "z")], base[("z", "a", "n")]
gb, gt = base[("z", "b", "z")], base[("z", "t", "z")]
R = frozenset({"z", "n"})

for p in (1, 3, 7):
    word = (ga_zz,) * p
    cr = charge(aug, word)
    print(f"charge a^{p}: psi={cr.psi} state={cr.state}")
    pr = potential(aug, word, default_params(aug))
    print(f"potential a^{p}: phi={pr.phi} dom={pr.dominant} suffix={pr.suffix}")

print("verify z via t:", verify_dominance(aug, xconf(aug, Configuration.unit(aug.initial), (ga_zz,) * 3), AugState("z", "z", R), (gt,)))
print("verify z via a:", verify_dominance(aug, xconf(aug, Configuration.unit(aug.initial), (ga_zz,) * 3), AugState("z", "z", R), (ga_zz,)))
print("verify n empty:", verify_dominance(aug, xconf(aug, Configuration.unit(aug.initial), (ga_zz,) * 3), AugState("n", "z", R), ()))

gr = bounded_growth_check(aug, aug.base_letters(), [(ga_zz,) * p for p in range(4)])
print("growth:", gr.checked, gr.findings)

# construct_high_potential
word7 = (ga_zz,) * 7
sw, rep = construct_high_potential(aug, word7, gt, 5)
print("chp: phi=", rep.phi, "dom=", rep.dominant, "suffix=", rep.suffix)
print("chp shifted weights:", [l.weight for l in sw], [(l.source, l.target) for l in sw])
c_sh = xconf(aug, Configuration.unit(aug.initial), sw)
print("chp shifted conf:", sorted((s.inner, w) for s, w in c_sh.items()))
for thr, lab in ((6, "thr=6"),):
    try:
        construct_high_potential(aug, word7, gt, thr)
        print(lab, "no raise!")
    except ValueError as e:
        print(lab, "ValueError:", e)

# monotonicity
sup = Configuration({AugState("z", "z", R): 0, AugState("n", "z", R): -4})
inf_ = Configuration({AugState("z", "z", R): 0, AugState("n", "z", R): -1})
mr = monotonicity_check(aug, sup, inf_, (ga_zz,), default_params(aug))
print("mono:", mr.ok, mr.failures, mr.phi_superior, mr.phi_inferior, mr.psi_superior, mr.psi_inferior)

# non-seamless machine
ns = Wfa(["z", "w"], ["a"], "z",
         [("z", "a", 0, "z"), ("z", "a", -5, "w"), ("w", "a", 0, "z")])
aug_ns = AugWfa(ns)
l_ns = aug_ns.base_letters()[0]
try:
    charge(aug_ns, (l_ns, l_ns))
    print("ns charge: no raise!")
except NoSeamlessBaselineError as e:
    print("ns charge raises:", e)

# jump word
jmp = aug.jump_letter(AugState("z", "z", R), AugState("z", "n", R))
try:
    potential(aug, (jmp,), default_params(aug))
except JumpPresentError as e:
    print("jump potential raises:", e)

# ---- witness machine W ----
W = Wfa(["z", "h"], ["a", "c", "e"], "z",
        [("z", "c", 0, "z"), ("z", "c", 100, "h"),
         ("z", "a", 0, "z"), ("h", "a", 1, "h"),
         ("z", "e", 1, "z"), ("h", "e", 0, "h")])
augW = AugWfa(W)
bW = {(l.source, l.symbol, l.target): l for l in augW.base_letters()}
RW = frozenset({"z", "h"})
pre = (bW[("z", "c", "z")],)
spine_z = Spine("z", RW)
cyc_a = Cycle(augW, spine_z, (bW[("z", "a", "z")],))
alpha_a = stabilise(augW, cyc_a)
print("alpha_a pairs:", augW.letter_pairs(alpha_a))
spine_h = Spine("h", RW)
cyc_e = Cycle(augW, spine_h, (bW[("h", "e", "h")],))
alpha_e = stabilise(augW, cyc_e)
print("alpha_e pairs:", augW.letter_pairs(alpha_e))
jW = augW.jump_letter(AugState("z", "z", RW), AugState("z", "h", RW))
tail = (jW, alpha_e)
v = check_witness(augW, pre, alpha_a, tail, 0)
print("good witness:", v.ok, v.witness_type, v.failed_clause, v.details)
v1 = check_witness(augW, pre, alpha_a, tail, 1)
print("as type 1:", v1.ok, v1.failed_clause)
try:
    check_witness(augW, pre, alpha_a, tail, 2)
except ValueError as e:
    print("type 2:", e)

v_bad_tail = check_witness(augW, pre, alpha_a, (jW,), 0)
print("tail-no-cactus:", v_bad_tail.ok, v_bad_tail.failed_clause, v_bad_tail.details)
v_base_mid = check_witness(augW, pre, bW[("z", "a", "z")], tail, 0)
print("base middle:", v_base_mid.ok, v_base_mid.failed_clause, v_base_mid.details)
v_ghost = check_witness(augW, (), alpha_a, tail, 0)
print("empty prefix:", v_ghost.ok, v_ghost.failed_clause, v_ghost.details)
v_fin = check_witness(augW, pre, alpha_a, (bW[("z", "a", "z")], alpha_a), 0)
print("finite cactus side:", v_fin.ok, v_fin.failed_clause, v_fin.details)
tail3 = (jW, alpha_e, augW.jump_letter(AugState("h", "h", RW), AugState("h", "z", RW)), alpha_a)
v_pump = check_witness(augW, pre, alpha_a, tail3, 0)
print("pumped dies:", v_pump.ok, v_pump.failed_clause, v_pump.details)
v_jpre = check_witness(augW, (jW,), alpha_a, tail, 0)
print("jump in prefix:", v_jpre.ok, v_jpre.failed_clause, v_jpre.details)

# ---- reach-invariance machine V ----
V = Wfa(["z", "h"], ["a", "c", "x"], "z",
        [("z", "c", 0, "z"), ("z", "c", 100, "h"),
         ("z", "a", 0, "z"), ("z", "a", 5, "h"), ("h", "a", 1, "h"),
         ("z", "x", 0, "z"), ("h", "x", 1, "h")])
augV = AugWfa(V)
bV = {(l.source, l.symbol, l.target): l for l in augV.base_letters()}
RV = frozenset({"z", "h"})
spine_zV = Spine("z", RV)
alpha_x = stabilise(augV, Cycle(augV, spine_zV, (bV[("z", "x", "z")],)))
print("alpha_x pairs:", augV.letter_pairs(alpha_x))
cyc_aV = Cycle(augV, spine_zV, (bV[("z", "a", "z")],))
alpha_aV = stabilise(augV, cyc_aV)
print("alpha_aV pairs:", augV.letter_pairs(alpha_aV))
preV = (bV[("z", "c", "z")], alpha_x)
v_reach = check_witness(augV, preV, alpha_aV, (alpha_x,), 0)
print("reach-invariance:", v_reach.ok, v_reach.failed_clause, v_reach.details)
