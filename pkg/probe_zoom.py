import sys
sys.path.insert(0, "src")
from minplus import Wfa, AugWfa, AugState, Configuration, INF, xconf
from minplus.analysis import DominanceParams, NoSeamlessBaselineError
from minplus.wfa import minimal_run
from minplus.zoom import (
    ZoomThresholds, paper_thresholds, independent_gap, near, check_cover,
    decompose_phi_increasing, decompose_phi_bounded, decompose_psi,
    extract_sri, zoom_step, AmplitudeInsufficientError, NoLevelSetError,
    QuantumMisalignedError, HighPotentialOpportunity,
)

th = ZoomThresholds(gap=4, cover=4, amp=1000, seg_min_len=1, seg_count=3, seg_quantum=2)

# drift machine for phi profiles
dr = Wfa(["z", "u"], ["a", "c", "t"], "z",
         [("z", "c", 0, "z"), ("z", "c", 0, "u"),
          ("z", "a", 0, "z"), ("u", "a", 1, "u"), ("u", "t", 0, "u")])
augd = AugWfa(dr)
bd = {(l.source, l.symbol, l.target): l for l in augd.base_letters()}
Rd = frozenset({"z", "u"})
jd = augd.jump_letter(AugState("z", "z", Rd), AugState("z", "u", Rd))
pd = DominanceParams(horizon=4, alphabet=tuple(augd.base_letters()) + (jd,))
entry, ga = (bd[("z", "c", "z")],), bd[("z", "a", "z")]
word = entry + (ga,) * 13
inc = decompose_phi_increasing(augd, word, th, pd)
print("inc:", inc.cuts, inc.levels, inc.step)
try:
    decompose_phi_increasing(augd, entry + (ga,) * 6, th, pd)
except AmplitudeInsufficientError as e:
    print("inc short:", e)
try:
    decompose_phi_bounded(augd, entry + (ga,) * 11, th, pd)
except NoLevelSetError as e:
    print("bounded drift:", e)
try:
    decompose_phi_bounded(augd, entry, th, pd)
except QuantumMisalignedError as e:
    print("quantum:", e)

flat = Wfa(["q"], ["a"], "q", [("q", "a", 0, "q")])
augf = AugWfa(flat)
gf = augf.base_letters()[0]
bd_flat = decompose_phi_bounded(augf, (gf,) * 12, th)
print("flat:", bd_flat.level, bd_flat.prefix, bd_flat.cuts, bd_flat.nested)

# crash gadget for psi
crash = Wfa(["z", "n"], ["a", "b", "t"], "z",
            [("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
             ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")])
augc = AugWfa(crash)
bc = {(l.source, l.symbol, l.target): l for l in augc.base_letters()}
ca, cb, ct = bc[("z", "a", "z")], bc[("z", "b", "z")], bc[("z", "t", "z")]
psi_word = (ca,) * 30 + (cb,) * 14
ps = decompose_psi(augc, psi_word, th, drop_bound=5)
print("psi:", ps.cuts, ps.levels, ps.step)
try:
    decompose_psi(augc, (ca,) * 6, th, drop_bound=5)
except AmplitudeInsufficientError as e:
    print("psi short:", e)
try:
    decompose_psi(augc, (ca,) * 4 + (cb,), th, drop_bound=1)
except HighPotentialOpportunity as e:
    print("psi opp:", e.position, e.letter, e.drop)
ns = Wfa(["z", "w"], ["a"], "z",
         [("z", "a", 0, "z"), ("z", "a", -5, "w"), ("w", "a", 0, "z")])
augn = AugWfa(ns)
ln = augn.base_letters()[0]
try:
    decompose_psi(augn, (ln, ln), th, drop_bound=50)
except NoSeamlessBaselineError as e:
    print("psi seamless:", e)

# banded zoom_step -> sri
bm = Wfa(["z", "h"], ["a", "c"], "z",
         [("z", "c", 0, "z"), ("z", "c", 100, "h"),
          ("z", "a", 0, "z"), ("h", "a", 1, "h")])
augb = AugWfa(bm)
bb = {(l.source, l.symbol, l.target): l for l in augb.base_letters()}
Rb = frozenset({"z", "h"})
w1, w2 = (bb[("z", "c", "z")],), (bb[("z", "a", "z")],)
full = w1 + w2 * 3
run_z = minimal_run(augb, full, target=AugState("z", "z", Rb))
run_h = minimal_run(augb, full, target=AugState("h", "z", Rb))
print("runs:", run_z.weight, run_h.weight)
print("gap skip1:", independent_gap([run_z, run_h], skip=1))
print("gap skip0:", independent_gap([run_z, run_h]))
print("gap single:", independent_gap([run_z]))
cov = check_cover(augb, w1, w2, [run_z, run_h], 3, 4)
print("cover:", cov.ok, cov.failures)
out = zoom_step(augb, w1, w2, [run_z, run_h], th)
print("zoom:", out.kind, out.gap, out.reason)
if out.sri:
    print("zoom sri:", out.sri.u == w1, out.sri.x, out.sri.y, out.sri.v, out.sri.shifts_x)
th_bad = ZoomThresholds(gap=4, cover=4, amp=1000, seg_min_len=2, seg_count=3, seg_quantum=2)
out_bad = zoom_step(augb, w1, w2, [run_z, run_h], th_bad)
print("inconsistent:", out_bad.kind, out_bad.reason)

# escape machine -> new run
esc = Wfa(["s", "z", "e"], ["a", "c"], "s",
          [("s", "c", 0, "z"), ("s", "c", 0, "e"),
           ("z", "a", 0, "z"), ("e", "a", 2, "e")])
auge = AugWfa(esc)
be = {(l.source, l.symbol, l.target): l for l in auge.base_letters()}
Re = frozenset({"z", "e"})
th_esc = ZoomThresholds(gap=4, cover=8, amp=1000, seg_min_len=1, seg_count=5, seg_quantum=2)
we1, we2 = (be[("s", "c", "z")],), (be[("z", "a", "z")],)
rz = minimal_run(auge, we1 + we2 * 5, target=AugState("z", "z", Re))
out_esc = zoom_step(auge, we1, we2, [rz], th_esc)
print("escape:", out_esc.kind, out_esc.gap, len(out_esc.w1), len(out_esc.w2))
print("escape run:", out_esc.run.start, out_esc.run.end, out_esc.run.weight)
cov_esc = check_cover(auge, we1, we2, [rz], 5, 8)
print("escape cover:", cov_esc.ok, cov_esc.failures)

# entangled lanes
ent = Wfa(["s", "z", "h", "e"], ["a", "c"], "s",
          [("s", "c", 0, "z"), ("s", "c", 1, "h"), ("s", "c", 50, "e"),
           ("z", "a", 0, "z"), ("h", "a", 0, "h"), ("e", "a", 2, "e")])
augt = AugWfa(ent)
bt = {(l.source, l.symbol, l.target): l for l in augt.base_letters()}
Rt = frozenset({"z", "h", "e"})
th_ent = ZoomThresholds(gap=4, cover=8, amp=1000, seg_min_len=1, seg_count=3, seg_quantum=2)
wt1, wt2 = (bt[("s", "c", "z")],), (bt[("z", "a", "z")],)
full_t = wt1 + wt2 * 3
tr_z = minimal_run(augt, full_t, target=AugState("z", "z", Rt))
tr_h = minimal_run(augt, full_t, target=AugState("h", "z", Rt))
out_ent = zoom_step(augt, wt1, wt2, [tr_z, tr_h], th_ent)
print("entangle:", out_ent.kind, out_ent.gap, out_ent.reason)

# near
s1, s2 = AugState("z", "z", Rb), AugState("h", "z", Rb)
print("near:", near(Configuration({s1: 5, s2: 20}), 4, 3))

# paper thresholds
pt1 = paper_thresholds(1)
print("pt1:", pt1)
pt2 = paper_thresholds(2, cap=10 ** 6)
print("pt2:", pt2)

# error paths of cover
try:
    check_cover(augb, w1, (), [run_z], 3, 4)
except ValueError as e:
    print("cover w2:", e)
try:
    check_cover(augb, w1, w2, [run_z], 2, 4)
except ValueError as e:
    print("cover word:", e)
