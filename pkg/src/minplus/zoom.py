"""Zooming: carve rigid intervals out of long words by repetition.

The scheme tracks a handful of seamless runs through a word w1.w2.w2...
and watches the configuration at the block cuts.  Either the runs cover
every supported state (then matching cut types yield a structured rigid
interval via a triangle argument), or some state escapes the cover (then
its minimal run joins the tracked set and the window shrinks).  All
thresholds are data: tiny hand-picked values make the machinery runnable
at desk scale, while the recursion-derived values show where saturation
sets in.

Decompositions of potential and charge profiles live here too; they cut
a word into segments at explicit levels, always re-verifying the claimed
profile rather than trusting the greedy walk that found it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .analysis import (
    DominanceParams,
    NoSeamlessBaselineError,
    default_params,
    potential,
)
from .augmented import AugState, AugWfa, InvariantViolation, baseline_run
from .letters import Letter
from .sri import SriDecomposition, check_sri_verbose
from .weights import INF, Weight
from .wfa import Configuration, RunTrace, is_seamless, minimal_run, xconf


class AmplitudeInsufficientError(ValueError):
    """The profile does not climb enough to cut the requested segments."""


class NoLevelSetError(ValueError):
    """No level is attained by enough aligned cuts."""


class QuantumMisalignedError(ValueError):
    """The word is too short to carry a single aligned cut."""


class HighPotentialOpportunity(RuntimeError):
    """A single letter crashes the charge past the caller's drop bound.

    Not a failure: the crashing position is exactly where
    :func:`minplus.analysis.construct_high_potential` applies.
    """

    def __init__(self, position: int, letter: Letter, drop: int):
        super().__init__(f"charge drops by {drop} at position {position}")
        self.position = position
        self.letter = letter
        self.drop = drop


@dataclass(frozen=True)
class ZoomThresholds:
    """Numeric knobs of one zoom level.

    gap: separation below which two runs count as entangled.
    cover: radius within which a run covers a state.
    amp: total amplitude a profile decomposition may assume.
    seg_min_len: shortest allowed segment, in letters.
    seg_count: how many segments or cuts a decomposition must produce.
    seg_quantum: cut positions must be multiples of this.
    """

    gap: int
    cover: int
    amp: int
    seg_min_len: int
    seg_count: int
    seg_quantum: int

    def __post_init__(self):
        if self.seg_count < 3:
            raise ValueError("seg_count must be at least 3")
        for name in ("gap", "cover", "amp", "seg_min_len", "seg_quantum"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def paper_thresholds(n: int, depth: int = 1, base_weight: int = 1,
                     cap: int = 10 ** 9) -> ZoomThresholds:
    """Thresholds a size-n machine would need, saturated at ``cap``.

    ``depth`` is the cactus depth the zoom level works at; the cover and
    amplitude recursions only define depths from 1 up.  Demonstrational:
    the recursion-derived values overflow any practical budget almost
    immediately, which is the point of printing them.
    """
    from . import bounds
    from .cactus import stabilisation_constant

    def sat(name: str) -> int:
        value = bounds.evaluate("simp", name, n, d=depth, base_weight=base_weight,
                                saturate=cap)
        return cap if value.saturated else max(1, int(value))

    return ZoomThresholds(gap=sat("Cov"), cover=sat("Cov"), amp=sat("Amp"),
                          seg_min_len=sat("Len"),
                          seg_count=max(3, min(cap, sat("Typ"))),
                          seg_quantum=2 * stabilisation_constant(n))


# -- run bookkeeping ----------------------------------------------------------


def _run_values(run: RunTrace, positions: Sequence[int]) -> List[int]:
    return [run.prefix_weight(p) for p in positions]


def independent_gap(runs: Sequence[RunTrace], skip: int = 0) -> Weight:
    """Smallest pairwise value separation after the skipped prefix.

    Inspects every cut strictly beyond ``skip``; with fewer than two runs
    there is nothing to separate and the gap is infinite.
    """
    if len(runs) < 2:
        return INF
    length = len(runs[0].word)
    if any(len(r.word) != length for r in runs):
        raise ValueError("runs must traverse the same word")
    best: Weight = INF
    for pos in range(skip + 1, length + 1):
        values = [r.prefix_weight(pos) for r in runs]
        values.sort()
        for lo, hi in zip(values, values[1:]):
            best = min(best, hi - lo)
    return best


def near(config: Configuration, value: int, radius: int) -> Dict[AugState, int]:
    """Signed offsets of the supported states within ``radius`` of ``value``."""
    return {s: w - value for s, w in config.items() if abs(w - value) <= radius}


def diff_type(aug: AugWfa, configs: Sequence[Configuration],
              runs: Sequence[RunTrace], positions: Sequence[int],
              i: int, j: int, radius: int) -> Tuple:
    """Color of the cut pair (i, j): near patterns at both ends plus drift sign.

    Two pairs of cuts with the same color move every covered state by the
    same per-band shift, which is what the triangle extraction needs.
    """
    color = []
    for run in runs:
        vi = run.prefix_weight(positions[i])
        vj = run.prefix_weight(positions[j])
        before = tuple(sorted((aug.state_key(s), off)
                              for s, off in near(configs[i], vi, radius).items()))
        after = tuple(sorted((aug.state_key(s), off)
                             for s, off in near(configs[j], vj, radius).items()))
        drift = (vj > vi) - (vj < vi)
        color.append((before, drift, after))
    return tuple(color)


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    failures: Tuple[Tuple[int, AugState, int], ...]   # (cut, state, distance)


def check_cover(aug: AugWfa, w1: Sequence[Letter], w2: Sequence[Letter],
                runs: Sequence[RunTrace], cuts: int, radius: int) -> CoverReport:
    """Is every supported state within ``radius`` of some run at cuts 1..t?"""
    w1, w2 = tuple(w1), tuple(w2)
    if not w2:
        raise ValueError("w2 must be nonempty")
    full = w1 + w2 * cuts
    for r in runs:
        if r.word != full:
            raise ValueError("every run must traverse w1 followed by all repetitions")
    failures = []
    config = xconf(aug, Configuration.unit(aug.initial), w1)
    for j in range(1, cuts + 1):
        config = xconf(aug, config, w2)
        pos = len(w1) + j * len(w2)
        values = [r.prefix_weight(pos) for r in runs]
        for s, w in config.items():
            dist = min((abs(w - v) for v in values), default=None)
            if dist is None or dist > radius:
                failures.append((j, s, -1 if dist is None else dist))
    return CoverReport(ok=not failures, failures=tuple(failures))


# -- profile decompositions ---------------------------------------------------


def _phi_profile(aug: AugWfa, word: Tuple[Letter, ...], positions: Sequence[int],
                 params: DominanceParams) -> List[int]:
    return [potential(aug, word[:p], params).phi for p in positions]


@dataclass(frozen=True)
class PhiIncreasingDecomposition:
    cuts: Tuple[int, ...]
    levels: Tuple[int, ...]
    step: int


def decompose_phi_increasing(aug: AugWfa, word: Sequence[Letter],
                             thresholds: ZoomThresholds,
                             params: Optional[DominanceParams] = None,
                             ) -> PhiIncreasingDecomposition:
    """Cut the word where the potential has climbed by one segment budget.

    The budget per segment is 4 * wmax * seg_min_len relative to the
    previous cut.  Runs out of amplitude before seg_count cuts: error.
    The found cuts are re-verified: strictly increasing levels, and no
    position inside a segment exceeds the segment's end level.
    """
    word = tuple(word)
    params = params or default_params(aug)
    letter_maxw = max((aug.letter_wmax(l) for l in word), default=0)
    step = 4 * letter_maxw * thresholds.seg_min_len
    cuts: List[int] = []
    levels: List[int] = []
    base = potential(aug, (), params).phi
    last = base
    for pos in range(1, len(word) + 1):
        phi = potential(aug, word[:pos], params).phi
        if phi >= last + max(step, 1):
            cuts.append(pos)
            levels.append(phi)
            last = phi
            if len(cuts) == thresholds.seg_count:
                break
    if len(cuts) < thresholds.seg_count:
        raise AmplitudeInsufficientError(
            f"only {len(cuts)} of {thresholds.seg_count} segments fit "
            f"(step {max(step, 1)}, amplitude budget {thresholds.amp})")
    for a, b in zip(levels, levels[1:]):
        if b <= a:
            raise InvariantViolation("cut levels fail to increase")
    prev = 0
    for cut, level in zip(cuts, levels):
        for pos in range(prev + 1, cut):
            if potential(aug, word[:pos], params).phi > level:
                raise InvariantViolation(
                    f"potential spikes above its segment end at {pos}")
        prev = cut
    return PhiIncreasingDecomposition(cuts=tuple(cuts), levels=tuple(levels),
                                      step=max(step, 1))


@dataclass(frozen=True)
class PhiBoundedDecomposition:
    level: int
    prefix: int                       # letters absorbed before the first cut
    cuts: Tuple[int, ...]
    nested: Optional["PhiBoundedDecomposition"]


def decompose_phi_bounded(aug: AugWfa, word: Sequence[Letter],
                          thresholds: ZoomThresholds,
                          params: Optional[DominanceParams] = None,
                          _lo: int = 0, _hi: Optional[int] = None,
                          ) -> PhiBoundedDecomposition:
    """Level-set decomposition of the potential profile at aligned cuts.

    The level is the maximum of the profile over quantum-aligned
    positions; at least seg_count + 1 cuts must attain it.  Everything
    before the first cut is absorbed into the head, and the longest
    strictly-below stretch between cuts is decomposed recursively while
    it still holds a full set of aligned positions.
    """
    word = tuple(word)
    params = params or default_params(aug)
    hi = len(word) if _hi is None else _hi
    q = thresholds.seg_quantum
    positions = [p for p in range(_lo + q - _lo % q if _lo % q else _lo + q, hi + 1, q)]
    if not positions:
        raise QuantumMisalignedError(
            f"no aligned cut fits in ({_lo}, {hi}] at quantum {q}")
    profile = _phi_profile(aug, word, positions, params)
    level = max(profile)
    cuts = [p for p, phi in zip(positions, profile) if phi == level]
    if len(cuts) < thresholds.seg_count + 1:
        raise NoLevelSetError(
            f"level {level} holds only {len(cuts)} aligned cuts, "
            f"need {thresholds.seg_count + 1}")
    for p, phi in zip(positions, profile):
        if phi > level:
            raise InvariantViolation("aligned position above the chosen level")
    nested = None
    stretch = max(zip(cuts, cuts[1:]), key=lambda ab: ab[1] - ab[0], default=None)
    if stretch and stretch[1] - stretch[0] > q * (thresholds.seg_count + 1):
        inner = [p for p in positions if stretch[0] < p < stretch[1]]
        if inner and all(phi < level for p, phi in zip(positions, profile)
                         if stretch[0] < p < stretch[1]):
            try:
                nested = decompose_phi_bounded(aug, word, thresholds, params,
                                               _lo=stretch[0], _hi=stretch[1])
            except (NoLevelSetError, QuantumMisalignedError):
                nested = None
    return PhiBoundedDecomposition(level=level, prefix=cuts[0], cuts=tuple(cuts),
                                   nested=nested)


@dataclass(frozen=True)
class PsiDecomposition:
    cuts: Tuple[int, ...]
    levels: Tuple[int, ...]
    step: int


def decompose_psi(aug: AugWfa, word: Sequence[Letter],
                  thresholds: ZoomThresholds, drop_bound: int,
                  params: Optional[DominanceParams] = None) -> PsiDecomposition:
    """Mirror image for the charge: cut where it has sunk by a budget.

    Any single letter dropping the charge by more than ``drop_bound``
    aborts with :class:`HighPotentialOpportunity` instead, since such a
    crash is worth more than the decomposition.  Drops are measured from
    the running peak since the previous cut, so a profile that first has
    to climb still decomposes.
    """
    word = tuple(word)
    params = params or default_params(aug)
    if not is_seamless(aug, baseline_run(aug, word)):
        raise NoSeamlessBaselineError("charge profile needs a seamless baseline")
    letter_maxw = max((aug.letter_wmax(l) for l in word), default=0)
    step = 4 * letter_maxw * thresholds.seg_min_len
    config = Configuration.unit(aug.initial)
    psis = [0]
    for pos, letter in enumerate(word, start=1):
        config = xconf(aug, config, (letter,))
        psi = -config.min_weight()
        if psi < 0:
            raise InvariantViolation("baseline at 0 forces a nonpositive minimum")
        psis.append(psi)
        fall = psis[-2] - psis[-1]
        if fall > drop_bound:
            raise HighPotentialOpportunity(pos, letter, fall)
    cuts: List[int] = []
    levels: List[int] = []
    peak = psis[0]
    for pos in range(1, len(word) + 1):
        peak = max(peak, psis[pos])
        if psis[pos] <= peak - max(step, 1):
            cuts.append(pos)
            levels.append(psis[pos])
            peak = psis[pos]
            if len(cuts) == thresholds.seg_count:
                break
    if len(cuts) < thresholds.seg_count:
        raise AmplitudeInsufficientError(
            f"charge sinks through only {len(cuts)} of "
            f"{thresholds.seg_count} segments")
    for a, b in zip(levels, levels[1:]):
        if b >= a:
            raise InvariantViolation("cut levels fail to decrease")
    return PsiDecomposition(cuts=tuple(cuts), levels=tuple(levels),
                            step=max(step, 1))


# -- the step -----------------------------------------------------------------


@dataclass(frozen=True)
class ZoomOutcome:
    """One of: a verified SRI, a new tracked run, or a reasoned failure."""

    kind: str                                   # "sri" | "new-run" | "error"
    sri: Optional[SriDecomposition] = None
    run: Optional[RunTrace] = None
    w1: Optional[Tuple[Letter, ...]] = None
    w2: Optional[Tuple[Letter, ...]] = None
    reason: str = ""
    gap: Optional[Weight] = None


def extract_sri(aug: AugWfa, w1: Sequence[Letter], w2: Sequence[Letter],
                runs: Sequence[RunTrace], thresholds: ZoomThresholds,
                params: Optional[DominanceParams] = None,
                kind: str = "simple",
                ) -> Tuple[Optional[SriDecomposition], str]:
    """Find a monochromatic cut triangle whose words verify as an SRI.

    Colors use the doubled cover radius so that covered states cannot
    drift between bands unnoticed.  Every candidate triangle is pushed
    through the full SRI check; the extraction never trusts its own
    coloring.
    """
    w1, w2 = tuple(w1), tuple(w2)
    t = thresholds.seg_count
    positions = [len(w1) + j * len(w2) for j in range(t + 1)]
    configs = []
    config = xconf(aug, Configuration.unit(aug.initial), w1)
    configs.append(config)
    for _ in range(t):
        config = xconf(aug, config, w2)
        configs.append(config)
    colors: Dict[Tuple[int, int], Tuple] = {}
    for i in range(t + 1):
        for j in range(i + 1, t + 1):
            colors[(i, j)] = diff_type(aug, configs, runs, positions, i, j,
                                       2 * thresholds.cover)
    tried = 0
    for i in range(t + 1):
        for j in range(i + 1, t + 1):
            for k in range(j + 1, t + 1):
                if not (colors[(i, j)] == colors[(j, k)] == colors[(i, k)]):
                    continue
                tried += 1
                u = w1 + w2 * i
                x = w2 * (j - i)
                y = w2 * (k - j)
                v = w2 * (t - k)
                sri, why = check_sri_verbose(aug, u, x, y, v, kind=kind,
                                             params=params)
                if sri is not None:
                    return sri, "ok"
    if tried:
        return None, f"{tried} monochromatic triangles, none verified: last said {why}"
    return None, "no monochromatic triangle among the cuts"


def zoom_step(aug: AugWfa, w1: Sequence[Letter], w2: Sequence[Letter],
              runs: Sequence[RunTrace], thresholds: ZoomThresholds,
              params: Optional[DominanceParams] = None,
              kind: str = "simple") -> ZoomOutcome:
    """One move of the zooming scheme.

    Checks the thresholds are mutually consistent, then the cover.  An
    uncovered state yields a new minimal run and a shrunk window (the
    tail of the witnessing prefix becomes the new repeated block); full
    cover hands over to the triangle extraction.
    """
    w1, w2 = tuple(w1), tuple(w2)
    if not w2:
        raise ValueError("w2 must be nonempty")
    letter_maxw = max(aug.letter_wmax(l) for l in w2)
    if thresholds.cover - 2 * letter_maxw * thresholds.seg_min_len < thresholds.cover // 2:
        return ZoomOutcome(kind="error", reason=(
            "thresholds-inconsistent: cover radius cannot absorb a window "
            f"({thresholds.cover} vs 2*{letter_maxw}*{thresholds.seg_min_len})"))
    t = thresholds.seg_count
    cover = check_cover(aug, w1, w2, runs, t, thresholds.cover)
    gap = independent_gap(runs, skip=len(w1))
    if cover.ok:
        sri, why = extract_sri(aug, w1, w2, runs, thresholds, params, kind)
        if sri is None:
            return ZoomOutcome(kind="error", reason=why, gap=gap)
        return ZoomOutcome(kind="sri", sri=sri, gap=gap, w1=w1, w2=w2)
    if not (gap is INF or 2 * gap >= thresholds.cover):
        return ZoomOutcome(kind="error", reason=(
            f"tracked runs entangle: gap {gap} below half the cover radius"),
            gap=gap)
    cut, state, _dist = cover.failures[0]
    prefix = w1 + w2 * cut
    if len(prefix) < thresholds.seg_min_len + 1:
        return ZoomOutcome(kind="error", reason=(
            f"window of {len(prefix)} letters cannot shed a tail of "
            f"{thresholds.seg_min_len}"), gap=gap)
    new_run = minimal_run(aug, prefix, target=state)
    if new_run is None:
        raise InvariantViolation(f"supported state {state!r} admits no run")
    split = len(prefix) - thresholds.seg_min_len
    new_w1, new_w2 = prefix[:split], prefix[split:]
    return ZoomOutcome(kind="new-run", run=new_run, w1=new_w1, w2=new_w2, gap=gap)
