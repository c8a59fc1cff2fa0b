from minplus.wfa import Wfa, minimal_run
from minplus.augmented import augment, AugState
from minplus.zoom import (
    ZoomThresholds, zoom_step, extract_sri, check_cover, independent_gap,
    decompose_phi_increasing, decompose_phi_bounded, decompose_psi,
    AmplitudeInsufficientError, NoLevelSetError, HighPotentialOpportunity,
)

th = ZoomThresholds(gap=4, cover=4, amp=1000, seg_min_len=1, seg_count=3,
                    seg_quantum=2)

# covered two-band fixture: an sri should fall out of the triangle argument
up = Wfa.trimmed(
    states=["z", "h"], alphabet=["c", "a"], initial="z",
    transitions=[("z", "c", 0, "z"), ("z", "c", 100, "h"),
                 ("z", "a", 0, "z"), ("h", "a", 1, "h")])
aug = augment(up)
w1 = (aug.base_letter("z", "c", "z"),)
w2 = (aug.base_letter("z", "a", "z"),)
full = w1 + w2 * th.seg_count
T = frozenset(["z", "h"])
runs = [minimal_run(aug, full, target=AugState("z", "z", T)),
        minimal_run(aug, full, target=AugState("h", "z", T))]
print("cover:", check_cover(aug, w1, w2, runs, th.seg_count, th.cover).ok)
print("gap:", independent_gap(runs, skip=len(w1)))
out = zoom_step(aug, w1, w2, runs, th)
print("zoom:", out.kind, out.reason or "",
      (out.sri.shifts_x, out.sri.shifts_y, len(out.sri.u), len(out.sri.x))
      if out.sri else None)

# escape fixture: e drifts 2 per block away from the only tracked run
esc = Wfa.trimmed(
    states=["s", "z", "e"], alphabet=["c", "a"], initial="s",
    transitions=[("s", "c", 0, "z"), ("s", "c", 0, "e"),
                 ("z", "a", 0, "z"), ("e", "a", 2, "e")])
aug2 = augment(esc)
th_esc = ZoomThresholds(gap=4, cover=8, amp=1000, seg_min_len=1, seg_count=5,
                        seg_quantum=2)
ga = aug2.base_letter("z", "a", "z")
w1e, w2e = (aug2.base_letter("s", "c", "z"),), (ga,)
fulle = w1e + w2e * th_esc.seg_count
Te = frozenset(["z", "e"])
runs2 = [minimal_run(aug2, fulle, target=AugState("z", "z", Te))]
out2 = zoom_step(aug2, w1e, w2e, runs2, th_esc)
print("escape:", out2.kind, out2.reason, out2.run.end if out2.run else None,
      len(out2.w1 or ()), len(out2.w2 or ()), out2.gap)

# crash gadget: strictly climbing potential, strictly sinking charge after b's
crash = Wfa.trimmed(
    states=["z", "n"], alphabet=["a", "b", "t"], initial="z",
    transitions=[("z", "a", 0, "z"), ("z", "a", 0, "n"), ("n", "a", -1, "n"),
                 ("z", "b", 0, "z"), ("n", "b", 2, "n"), ("z", "t", 0, "z")])
aug3 = augment(crash)
ga3 = aug3.base_letter("z", "a", "z")
gb3 = aug3.base_letter("z", "b", "z")
word = (ga3,) * 14
inc = decompose_phi_increasing(aug3, word, th)
print("phi-increasing:", inc.cuts, inc.levels, inc.step)
wordp = (ga3,) * 30 + (gb3,) * 14
psi = decompose_psi(aug3, wordp, th, drop_bound=5)
print("psi:", psi.cuts, psi.levels, psi.step)
try:
    decompose_psi(aug3, (ga3,) * 6, th, drop_bound=5)
except AmplitudeInsufficientError as exc:
    print("psi flat:", exc)

# flat potential on a one-letter loop: a level set everywhere
flat = Wfa.trimmed(states=["q"], alphabet=["a"], initial="q",
                   transitions=[("q", "a", 0, "q")])
aug4 = augment(flat)
g4 = aug4.base_letter("q", "a", "q")
bounded = decompose_phi_bounded(aug4, (g4,) * 12, th)
print("phi-bounded:", bounded.level, bounded.prefix, bounded.cuts, bounded.nested)
try:
    decompose_phi_bounded(aug3, (ga3,) * 12, th)
except NoLevelSetError as exc:
    print("no level set:", exc)
try:
    decompose_psi(aug3, (ga3,) * 4 + (gb3,), th, drop_bound=1)
except HighPotentialOpportunity as exc:
    print("opportunity:", exc.position, exc.drop)
