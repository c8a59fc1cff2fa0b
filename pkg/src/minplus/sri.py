"""Structured rigid intervals: configurations split into well-gapped bands.

An SRI is a word u.x.y.v whose configuration after u splits into parts
separated by gaps so large that reading x and then y moves each part as a
block (one additive shift per part, with matching signs for the x- and
y-shifts) and cannot mix the parts.  The simple flavour additionally asks
the potential to be monotone across the three cuts, the general flavour
asks the same of the charge, each with equality propagating from the
first step to the second.

Everything here re-verifies from configurations; nothing trusts the
caller's bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .analysis import (
    DominanceParams,
    WitnessVerdict,
    check_witness,
    default_params,
    potential,
)
from .augmented import (
    AugState,
    AugWfa,
    InvariantViolation,
    baseline_run,
    shift_state,
)
from .cactus import (
    Cycle,
    NotReflexiveError,
    NotStableError,
    is_degenerate,
    is_stable_cycle,
    min_slope_cycle,
    shift_to_stable,
    stabilisation_constant,
    stabilise,
    validate_bounded_letter,
)
from .letters import Letter, iter_letters, word_depth
from .weights import is_finite
from .wfa import Configuration, RunTrace, is_seamless, maxeff, xconf


class NotDegenerateError(ValueError):
    """Shortening needs a stable degenerate middle cycle."""


class PositivityViolatedError(ValueError):
    """A part below the requested prefix carries a negative x-shift."""


class NoNegativeCycleError(ValueError):
    """Shift-kill needs a strictly negative min-slope cycle to drop onto."""


@dataclass(eq=False)
class SriDecomposition:
    """A verified structured rigid interval.

    ``partition`` lists the parts bottom-up; ``shifts_x[j]`` and
    ``shifts_y[j]`` are the per-part additive effects of x and y; ``gap``
    is the separation the parts were verified against.
    """

    u: Tuple[Letter, ...]
    x: Tuple[Letter, ...]
    y: Tuple[Letter, ...]
    v: Tuple[Letter, ...]
    kind: str
    partition: Tuple[Tuple[AugState, ...], ...]
    shifts_x: Tuple[int, ...]
    shifts_y: Tuple[int, ...]
    gap: int
    config_u: Configuration = field(repr=False)
    config_ux: Configuration = field(repr=False)
    config_uxy: Configuration = field(repr=False)

    @property
    def word(self) -> Tuple[Letter, ...]:
        return self.u + self.x + self.y + self.v

    @property
    def parts(self) -> int:
        return len(self.partition)

    def part_of(self, state: AugState) -> Optional[int]:
        for j, part in enumerate(self.partition):
            if state in part:
                return j
        return None


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def _check_word_kinds(aug: AugWfa, word: Sequence[Letter], kind: str,
                      length_fn) -> Optional[str]:
    for letter in word:
        if letter.is_jump or letter.is_rebase:
            raise ValueError(
                f"{letter.kind} letters cannot appear at the top level of an SRI word")
        if letter.is_cactus:
            if kind == "simple" and any(
                    l.is_rebase for l in iter_letters(letter.word, deep=True)):
                raise ValueError("simple SRI words must be rebase-free inside cacti")
            if not validate_bounded_letter(aug, letter, length_fn):
                return f"{letter!r} fails the bounded-letter check"
    return None


def check_sri(aug: AugWfa, u: Sequence[Letter], x: Sequence[Letter],
              y: Sequence[Letter], v: Sequence[Letter], kind: str = "simple",
              length_fn=None, extra_gap: int = 0,
              params: Optional[DominanceParams] = None,
              stab_n: Optional[int] = None) -> Optional[SriDecomposition]:
    """Verify the SRI conditions and assemble the decomposition.

    Returns None when any condition fails;
    :func:`check_sri_verbose` also says which one.  The partition is not
    an input: the coarsest gap-partition of the configuration after u is
    derived and then verified at all three cuts.
    """
    result, _reason = check_sri_verbose(aug, u, x, y, v, kind=kind,
                                        length_fn=length_fn, extra_gap=extra_gap,
                                        params=params, stab_n=stab_n)
    return result


def check_sri_verbose(aug: AugWfa, u: Sequence[Letter], x: Sequence[Letter],
                      y: Sequence[Letter], v: Sequence[Letter],
                      kind: str = "simple", length_fn=None, extra_gap: int = 0,
                      params: Optional[DominanceParams] = None,
                      stab_n: Optional[int] = None,
                      ) -> Tuple[Optional[SriDecomposition], str]:
    if kind not in ("simple", "general"):
        raise ValueError(f"unknown SRI kind {kind!r}")
    u, x, y, v = tuple(u), tuple(x), tuple(y), tuple(v)
    for part, name in ((u, "u"), (x, "x"), (y, "y"), (v, "v")):
        problem = _check_word_kinds(aug, part, kind, length_fn)
        if problem:
            return None, f"{name}: {problem}"
    if not x or not y:
        return None, "x and y must be nonempty"

    spine_u = aug.spine_after(u)
    basis = aug.stab_n(len(spine_u.reachable)) if stab_n is None else stab_n
    mbar = stabilisation_constant(basis)

    if length_fn is not None:
        bound = length_fn(word_depth(x) + 1)
        if not getattr(bound, "saturated", False) and len(x) > int(bound) // mbar:
            return None, f"|x|={len(x)} exceeds its depth budget over mbar"

    config_u = xconf(aug, Configuration.unit(aug.initial), u)
    config_ux = xconf(aug, config_u, x)
    config_uxy = xconf(aug, config_ux, y)
    support = config_u.support()
    if config_ux.support() != support or config_uxy.support() != support:
        return None, "support changes across the cuts"
    if not support:
        return None, "empty support"

    gap = 4 * basis * mbar * maxeff(aug, x + y) + (extra_gap if kind == "general" else 0)

    ordered = sorted(support, key=lambda s: (config_u[s], aug.state_key(s)))
    partition: List[List[AugState]] = [[ordered[0]]]
    for prev, cur in zip(ordered, ordered[1:]):
        if config_u[cur] - config_u[prev] > gap:
            partition.append([cur])
        else:
            partition[-1].append(cur)

    shifts_x: List[int] = []
    shifts_y: List[int] = []
    for j, part in enumerate(partition):
        kx = {config_ux[s] - config_u[s] for s in part}
        ky = {config_uxy[s] - config_ux[s] for s in part}
        if len(kx) != 1 or len(ky) != 1:
            return None, f"part {j} does not move as a block"
        sx, sy = kx.pop(), ky.pop()
        if _sign(sx) != _sign(sy):
            return None, f"part {j} shift signs differ ({sx} vs {sy})"
        shifts_x.append(sx)
        shifts_y.append(sy)
    for cfg, cut in ((config_ux, "ux"), (config_uxy, "uxy")):
        for lower, upper in zip(partition, partition[1:]):
            lo = max(cfg[s] for s in lower)
            hi = min(cfg[s] for s in upper)
            if hi - lo <= gap:
                return None, f"gap between parts closes at cut {cut}"

    word = u + x + y + v
    try:
        run = baseline_run(aug, word)
    except ValueError as exc:
        return None, f"baseline run: {exc}"
    if not is_seamless(aug, run):
        return None, "baseline is not seamless on the full word"

    params = params or default_params(aug)
    if kind == "simple":
        f0 = potential(aug, u, params).phi
        f1 = potential(aug, u + x, params).phi
        f2 = potential(aug, u + x + y, params).phi
        if not (f0 <= f1 <= f2):
            return None, f"potential not monotone: {f0}, {f1}, {f2}"
        if (f0 == f1) != (f1 == f2):
            return None, f"potential equality does not propagate: {f0}, {f1}, {f2}"
    else:
        g0 = -config_u.min_weight()
        g1 = -config_ux.min_weight()
        g2 = -config_uxy.min_weight()
        if not (g0 >= g1 >= g2):
            return None, f"charge not antitone: {g0}, {g1}, {g2}"
        if (g0 == g1) != (g1 == g2):
            return None, f"charge equality does not propagate: {g0}, {g1}, {g2}"

    sri = SriDecomposition(
        u=u, x=x, y=y, v=v, kind=kind, partition=tuple(tuple(p) for p in partition),
        shifts_x=tuple(shifts_x), shifts_y=tuple(shifts_y), gap=gap,
        config_u=config_u, config_ux=config_ux, config_uxy=config_uxy)
    return sri, "ok"


@dataclass(frozen=True)
class Classification:
    flavour: str                      # "positive" | "negative"
    stable: Optional[bool]            # None when (spine, x) is not a proper cycle
    degenerate: Optional[bool]


def classify(aug: AugWfa, sri: SriDecomposition) -> Classification:
    """Sign flavour plus, when x cycles the spine, its stability tags."""
    flavour = "negative" if any(s < 0 for s in sri.shifts_x) else "positive"
    stable: Optional[bool] = None
    degenerate: Optional[bool] = None
    try:
        cycle = Cycle(aug, aug.spine_after(sri.u), sri.x)
        stable = is_stable_cycle(aug, cycle)
        if stable:
            degenerate = is_degenerate(aug, cycle)
    except NotReflexiveError:
        pass
    return Classification(flavour=flavour, stable=stable, degenerate=degenerate)


def degenerate_shorten(aug: AugWfa, sri: SriDecomposition,
                       params: Optional[DominanceParams] = None,
                       ) -> Tuple[Letter, ...]:
    """Drop x from a degenerate SRI; everything observable is re-verified.

    Needs the middle cycle stable and degenerate.  Checks that the
    configuration does not move at all across x and that potential and
    charge agree between u.x.y.v and u.y.v under the given params.
    """
    tags = classify(aug, sri)
    if tags.stable is not True or tags.degenerate is not True:
        raise NotDegenerateError(f"middle cycle is not stable+degenerate: {tags}")
    if sri.config_u != sri.config_ux:
        raise InvariantViolation("degenerate x still moved the configuration")
    params = params or default_params(aug)
    long_word = sri.word
    short_word = sri.u + sri.y + sri.v
    phi_long = potential(aug, long_word, params).phi
    phi_short = potential(aug, short_word, params).phi
    if phi_long != phi_short:
        raise InvariantViolation(
            f"shortening changed the potential: {phi_long} vs {phi_short}")
    c_long = xconf(aug, Configuration.unit(aug.initial), long_word)
    c_short = xconf(aug, Configuration.unit(aug.initial), short_word)
    if -c_long.min_weight() != -c_short.min_weight():
        raise InvariantViolation("shortening changed the charge")
    return short_word


@dataclass(frozen=True)
class BudReport:
    word: Tuple[Letter, ...]
    cactus: Letter
    weights_ok: bool
    charge_ok: bool
    potential_ok: bool
    witness_tuple: Optional[Tuple[Tuple[Letter, ...], Letter, Tuple[Letter, ...]]]
    witness_verdict: Optional[WitnessVerdict]

    @property
    def ok(self) -> bool:
        return self.weights_ok and self.charge_ok and self.potential_ok


def bud(aug: AugWfa, sri: SriDecomposition,
        params: Optional[DominanceParams] = None) -> BudReport:
    """Replace x.y by the stabilised cactus of x; compare both worlds.

    Statewise weights may only go up, charge may only go down, potential
    may only go up.  A potential drop is the interesting outcome: it
    yields a type-0 witness tuple (the unfolded prefix, the cactus, the
    dominance certificate of the high state the cactus lost), which is
    run through :func:`minplus.analysis.check_witness` and reported.
    """
    from .cactus import unfold

    cycle = Cycle(aug, aug.spine_after(sri.u), sri.x)
    if not is_stable_cycle(aug, cycle):
        raise NotStableError("budding needs a stable middle cycle")
    if is_degenerate(aug, cycle):
        raise NotDegenerateError("budding needs a non-degenerate middle cycle; shorten instead")
    alpha = stabilise(aug, cycle)
    params = params or default_params(aug)

    long_word = sri.word
    bud_word = sri.u + (alpha,) + sri.v
    c_long = xconf(aug, Configuration.unit(aug.initial), long_word)
    c_bud = xconf(aug, Configuration.unit(aug.initial), bud_word)
    weights_ok = all(is_finite(c_long[s]) and c_long[s] <= w for s, w in c_bud.items())
    charge_ok = -c_long.min_weight() >= -c_bud.min_weight()
    phi_long = potential(aug, long_word, params)
    phi_bud = potential(aug, bud_word, params)
    potential_ok = phi_long.phi <= phi_bud.phi

    witness_tuple = None
    verdict = None
    if not potential_ok:
        certificate = phi_long.suffix
        separation = 2 * maxeff(aug, sri.u + (alpha,) + certificate) + 1
        unfolded = unfold(aug, sri.u, alpha, certificate, separation)
        w1 = unfolded.word[:len(unfolded.word) - len(certificate)]
        witness_tuple = (w1, alpha, certificate)
        verdict = check_witness(aug, w1, alpha, certificate, 0)
    return BudReport(word=bud_word, cactus=alpha, weights_ok=weights_ok,
                     charge_ok=charge_ok, potential_ok=potential_ok,
                     witness_tuple=witness_tuple, witness_verdict=verdict)


@dataclass(frozen=True)
class ShiftKillReport:
    cactus: Letter
    anchor: RunTrace
    repetitions: int
    killed_parts: int


def shift_kill_positive(aug: AugWfa, sri: SriDecomposition,
                        ell_prime: Optional[int] = None) -> ShiftKillReport:
    """Shift the middle cycle onto its negative min-slope run and stabilise.

    The parts up to ``ell_prime`` (default: the longest prefix of parts
    with nonnegative x-shift) must all have nonnegative x-shifts; after
    the shift, their states have no transition on the stabilised cactus,
    i.e. the letter kills everything that was not sinking.
    """
    if ell_prime is None:
        ell_prime = 0
        for s in sri.shifts_x:
            if s < 0:
                break
            ell_prime += 1
    if ell_prime < 0 or ell_prime > sri.parts:
        raise ValueError(f"ell_prime {ell_prime} out of range")
    for j in range(ell_prime):
        if sri.shifts_x[j] < 0:
            raise PositivityViolatedError(
                f"part {j} has negative x-shift {sri.shifts_x[j]}")

    cycle = Cycle(aug, aug.spine_after(sri.u), sri.x)
    ms = min_slope_cycle(aug, cycle)
    if ms.slope >= 0:
        raise NoNegativeCycleError(f"min slope {ms.slope} is not negative")
    shifted = shift_to_stable(aug, cycle)
    alpha = stabilise(aug, shifted.cycle)

    pairs = aug.letter_pairs(alpha)
    for j in range(ell_prime):
        for state in sri.partition[j]:
            moved = shift_state(state, shifted.anchor.start.inner)
            if pairs.get(moved.inner):
                raise InvariantViolation(
                    f"state {state!r} of part {j} survives the killing cactus")
    return ShiftKillReport(cactus=alpha, anchor=shifted.anchor,
                           repetitions=shifted.k, killed_parts=ell_prime)
