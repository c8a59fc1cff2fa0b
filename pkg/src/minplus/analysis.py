"""Charge and potential: how much headroom a configuration hides.

Both quantities live on configurations of the augmented machine reached
by jump-free words whose baseline run is seamless, so the baseline state
sits at exactly 0.

* charge  psi = -min(c); nonnegative, it measures how far below the
  baseline the cheapest run has dropped.
* potential phi = configuration value of the highest *dominant* state,
  where a state is dominant if some suffix keeps it alive while killing
  every strictly cheaper state.  The empty suffix makes the minimum
  itself dominant, so phi is always defined and at least min(c).

A dominant state strictly above the baseline can only be certified by a
suffix that first moves the baseline away, because base letters never
kill the state the baseline sits on.  Searches that should see such
states need jump letters in their DominanceParams alphabet; the default
params carry base letters only and so never report phi above 0.

The dominance search is bounded-horizon, so the reported potential is a
certified lower bound: every certificate is re-verified, but a dominant
state further than the horizon may be missed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .augmented import (
    AugState,
    AugWfa,
    InvariantViolation,
    baseline_run,
    ghost_reach,
)
from .cactus import Cycle, stabilisation_constant, validate_bounded_letter
from .letters import Letter, iter_letters
from .weights import INF, is_finite
from .wfa import Configuration, RunTrace, is_seamless, maxeff, xconf


class JumpPresentError(ValueError):
    """The word carries a jump letter, so baseline quantities are undefined."""


class NoSeamlessBaselineError(ValueError):
    """The baseline run is not seamless, so charge and potential are undefined."""


@dataclass(frozen=True)
class DominanceParams:
    """Budget of the dominance search: suffix alphabet and length horizon.

    The alphabet may mix base letters with caller-supplied jump, cactus,
    or rebase letters; expansion follows the given order, which fixes the
    lexicographic tie-break on certificates.
    """

    horizon: int
    alphabet: Tuple[Letter, ...]

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if not self.alphabet:
            raise ValueError("alphabet must not be empty")


def default_params(aug: AugWfa, horizon: int = 4) -> DominanceParams:
    return DominanceParams(horizon=horizon, alphabet=aug.base_letters())


@dataclass(frozen=True)
class ChargeReport:
    psi: int
    state: AugState


@dataclass(frozen=True)
class PotentialReport:
    phi: int
    dominant: AugState
    suffix: Tuple[Letter, ...]
    params: DominanceParams


def _require_baseline_word(aug: AugWfa, word: Sequence[Letter]) -> Configuration:
    word = tuple(word)
    if any(l.is_jump for l in word):
        raise JumpPresentError("word contains a jump letter")
    run = baseline_run(aug, word)
    if not is_seamless(aug, run):
        raise NoSeamlessBaselineError("the baseline run is not seamless here")
    return xconf(aug, Configuration.unit(aug.initial), word)


def _baseline_state_of(config: Configuration) -> AugState:
    anchors = [s for s in config if s.inner == s.baseline]
    if len(anchors) != 1 or config[anchors[0]] != 0:
        raise ValueError("configuration lacks a single baseline state at 0")
    return anchors[0]


def charge(aug: AugWfa, word: Sequence[Letter]) -> ChargeReport:
    """psi of the configuration reached by a jump-free seamless-baseline word."""
    config = _require_baseline_word(aug, word)
    psi = -config.min_weight()
    if psi < 0:
        raise InvariantViolation("baseline at 0 forces a nonpositive minimum")
    return ChargeReport(psi=psi, state=config.argmin(aug.state_key))


def _alive_sets(aug: AugWfa, states: Sequence[AugState],
                suffix: Sequence[Letter]) -> List[FrozenSet[AugState]]:
    sets = [frozenset([s]) for s in states]
    for letter in suffix:
        sets = [frozenset(t for s in group for t, _w in aug.successors(s, letter))
                for group in sets]
    return sets


def verify_dominance(aug: AugWfa, config: Configuration, state: AugState,
                     suffix: Sequence[Letter]) -> bool:
    """Does the suffix keep ``state`` alive and kill all strictly cheaper states?"""
    if state not in config:
        return False
    tracked = sorted(config, key=aug.state_key)
    sets = _alive_sets(aug, tracked, suffix)
    alive = {s for s, group in zip(tracked, sets) if group}
    if state not in alive:
        return False
    threshold = config[state]
    return all(config[s] >= threshold for s in alive)


def potential_of_config(aug: AugWfa, config: Configuration,
                        params: DominanceParams) -> PotentialReport:
    """Bounded-horizon potential of a configuration.

    Explores suffixes breadth-first in alphabet order, deduplicating on
    the tuple of per-state alive sets; reports the highest dominant state
    found, with its first (shortest, then lexicographically least)
    certificate.  Ties between equally high states go to the smaller
    state key.
    """
    if config.is_empty():
        raise ValueError("potential of an empty configuration")
    tracked = sorted(config.items(), key=lambda sw: (-sw[1], aug.state_key(sw[0])))
    states = [s for s, _w in tracked]
    top = tracked[0][1]

    best: Optional[Tuple[int, AugState, Tuple[Letter, ...]]] = None

    def consider(suffix: Tuple[Letter, ...], alive: Sequence[FrozenSet]) -> None:
        # the dominant states via this suffix are the cheapest alive ones
        nonlocal best
        alive_states = [s for s, group in zip(states, alive) if group]
        if not alive_states:
            return
        value = min(config[s] for s in alive_states)
        if best is None or value > best[0]:
            winner = min((s for s in alive_states if config[s] == value),
                         key=aug.state_key)
            best = (value, winner, suffix)

    frontier: List[Tuple[Tuple[Letter, ...], List[FrozenSet]]] = [
        ((), [frozenset([s]) for s in states])]
    seen = {tuple(frontier[0][1])}
    consider(*frontier[0])
    depth = 0
    while frontier and depth < params.horizon and (best is None or best[0] < top):
        depth += 1
        nxt = []
        for suffix, alive in frontier:
            for letter in params.alphabet:
                stepped = [frozenset(t for s in group
                                     for t, _w in aug.successors(s, letter))
                           for group in alive]
                if not any(stepped):
                    continue
                key = tuple(stepped)
                if key in seen:
                    continue
                seen.add(key)
                child = (suffix + (letter,), stepped)
                consider(*child)
                nxt.append(child)
        frontier = nxt

    if best is None:
        raise InvariantViolation("the minimum state is always dominant via the empty suffix")
    phi, dominant, suffix = best
    if not verify_dominance(aug, config, dominant, suffix):
        raise InvariantViolation("dominance certificate failed re-verification")
    return PotentialReport(phi=phi, dominant=dominant, suffix=suffix, params=params)


def potential(aug: AugWfa, word: Sequence[Letter],
              params: DominanceParams) -> PotentialReport:
    """Potential of the configuration a jump-free seamless-baseline word reaches."""
    return potential_of_config(aug, _require_baseline_word(aug, word), params)


@dataclass(frozen=True)
class GrowthFinding:
    word: Tuple[Letter, ...]
    letter: Letter
    phi_before: int
    phi_after: int
    bound: int


@dataclass(frozen=True)
class GrowthReport:
    checked: int
    findings: Tuple[GrowthFinding, ...]


def bounded_growth_check(aug: AugWfa, alphabet: Sequence[Letter],
                         samples: Sequence[Sequence[Letter]],
                         params: Optional[DominanceParams] = None) -> GrowthReport:
    """Empirically check phi(w . s) - phi(w) <= 2 * wmax(s) over samples.

    A violation is reported as a finding, not an error: with an exact
    potential the bound is a theorem, so any finding indicates the
    bounded-horizon search under-approximated phi(w).  No analogous bound
    holds for psi, which a single letter can crash.
    """
    params = params or default_params(aug)
    checked = 0
    findings = []
    for sample in samples:
        sample = tuple(sample)
        try:
            before = potential(aug, sample, params)
        except (JumpPresentError, NoSeamlessBaselineError):
            continue
        for letter in alphabet:
            try:
                after = potential(aug, sample + (letter,), params)
            except (JumpPresentError, NoSeamlessBaselineError, ValueError):
                continue
            checked += 1
            bound = 2 * aug.letter_wmax(letter)
            if after.phi - before.phi > bound:
                findings.append(GrowthFinding(
                    word=sample, letter=letter, phi_before=before.phi,
                    phi_after=after.phi, bound=bound))
    return GrowthReport(checked=checked, findings=tuple(findings))


def construct_high_potential(aug: AugWfa, word: Sequence[Letter], letter: Letter,
                             threshold: int,
                             params: Optional[DominanceParams] = None,
                             ) -> Tuple[Tuple[Letter, ...], PotentialReport]:
    """Turn a crashing charge into a certified high potential.

    Requires ``word`` to be jump- and rebase-free with a seamless
    baseline, and reading ``letter`` after it to drop the charge by more
    than ``threshold + 2 * wmax(letter)``.  The word is flattened, shifted
    onto a minimal run, and the cheapest surviving state becomes a
    dominant state of height above ``threshold``; its certificate is the
    letter itself, jump-prefixed when the new baseline does not match the
    letter's source.  Everything is re-verified before returning.
    """
    from .cactus import flatten  # deferred to keep module load order simple

    word = tuple(word)
    for l in iter_letters(word, deep=True):
        if l.is_rebase or l.is_jump:
            raise ValueError("construct_high_potential needs a cactus-only word")
    end_spine = aug.spine_after(word)
    if not letter.is_base or letter.source != end_spine.baseline:
        raise ValueError("the crashing letter must read from the word's end baseline")

    psi_before = charge(aug, word).psi
    psi_after = charge(aug, word + (letter,)).psi
    drop_needed = threshold + 2 * aug.letter_wmax(letter)
    if psi_before - psi_after <= drop_needed:
        raise ValueError(
            f"charge drop {psi_before - psi_after} does not exceed {drop_needed}")

    flat = flatten(aug, word, 2 * maxeff(aug, word) + 1)
    config = xconf(aug, Configuration.unit(aug.initial), flat)
    survivors = [s for s in config
                 if any(True for _t, _w in aug.successors(s, letter))]
    if not survivors:
        raise InvariantViolation("a charge drop implies at least one survivor")
    cheapest = min(survivors, key=lambda s: (config[s], aug.state_key(s)))

    from .wfa import minimal_run
    anchor = minimal_run(aug, flat)
    if anchor is None:
        raise InvariantViolation("a readable word always has a minimal run")
    from .augmented import baseline_shift_word, shift_state
    shifted_word = baseline_shift_word(aug, flat, anchor)
    new_baseline = anchor.end.inner
    shifted_config = xconf(aug, Configuration.unit(aug.initial), shifted_word)
    dominant = shift_state(cheapest, new_baseline)
    height = shifted_config[dominant]
    if height is INF or shifted_config.min_weight() != 0:
        raise InvariantViolation("baseline shift lost the survivor or the minimum")
    if height <= threshold:
        raise InvariantViolation(f"survivor height {height} not above {threshold}")

    if new_baseline == letter.source:
        certificate: Tuple[Letter, ...] = (letter,)
    else:
        jump = aug.registry.jump(new_baseline, letter.source, end_spine.reachable)
        certificate = (jump, letter)
    if not verify_dominance(aug, shifted_config, dominant, certificate):
        raise InvariantViolation("high-potential certificate failed re-verification")

    report = PotentialReport(
        phi=height, dominant=dominant, suffix=certificate,
        params=params or default_params(aug))
    return shifted_word, report


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    failures: Tuple[str, ...]
    phi_superior: int
    phi_inferior: int
    psi_superior: int
    psi_inferior: int


def monotonicity_check(aug: AugWfa, superior: Configuration,
                       inferior: Configuration, word: Sequence[Letter],
                       params: DominanceParams) -> MonotonicityReport:
    """Superiority is preserved and orders phi/psi after any common word.

    ``superior <= inferior`` pointwise on equal supports, both carrying
    their single baseline state at 0, and the word must keep the superior
    side's baseline seamless.  Checks: the inferior side stays seamless
    too, phi(superior evolved) <= phi(inferior evolved), and psi(superior
    evolved) >= psi(inferior evolved).
    """
    word = tuple(word)
    if any(l.is_jump for l in word):
        raise JumpPresentError("word contains a jump letter")
    if superior.support() != inferior.support():
        raise ValueError("configurations must share their support")
    if not superior.superior_to(inferior):
        raise ValueError("first configuration is not superior to the second")
    anchor = _baseline_state_of(superior)
    if _baseline_state_of(inferior) != anchor:
        raise ValueError("configurations disagree on the baseline state")

    run = baseline_run(aug, word, start=anchor.spine)
    if not is_seamless(aug, run, start=superior):
        raise NoSeamlessBaselineError("word breaks the superior baseline")

    failures = []
    if not is_seamless(aug, run, start=inferior):
        failures.append("inferior baseline lost seamlessness")
    sup_evolved = xconf(aug, superior, word)
    inf_evolved = xconf(aug, inferior, word)
    phi_sup = potential_of_config(aug, sup_evolved, params).phi
    phi_inf = potential_of_config(aug, inf_evolved, params).phi
    if phi_sup > phi_inf:
        failures.append(f"phi {phi_sup} > {phi_inf}")
    psi_sup = -sup_evolved.min_weight()
    psi_inf = -inf_evolved.min_weight()
    if psi_sup < psi_inf:
        failures.append(f"psi {psi_sup} < {psi_inf}")
    return MonotonicityReport(
        ok=not failures, failures=tuple(failures),
        phi_superior=phi_sup, phi_inferior=phi_inf,
        psi_superior=psi_sup, psi_inferior=psi_inf)


# -- witness checking ---------------------------------------------------------


@dataclass(frozen=True)
class WitnessVerdict:
    ok: bool
    witness_type: int
    failed_clause: Optional[str]
    details: str = ""


def _word_letters_ok(aug: AugWfa, word: Sequence[Letter], *, allow: frozenset,
                     rebase_free_inside: bool, length_fn, max_depth) -> Optional[str]:
    for letter in word:
        if letter.kind not in allow:
            return f"letter kind {letter.kind!r} not allowed here"
        if letter.is_cactus or letter.is_rebase:
            if rebase_free_inside and any(
                    l.is_rebase for l in iter_letters(letter.word, deep=True)):
                return f"{letter!r} hides a rebase letter"
            if not validate_bounded_letter(aug, letter, length_fn, max_depth):
                return f"{letter!r} fails the bounded-letter check"
    return None


def check_witness(aug: AugWfa, prefix: Sequence[Letter], cactus_letter: Letter,
                  tail: Sequence[Letter], witness_type: int,
                  simp_length_fn=None, gen_length_fn=None,
                  max_depth: Optional[int] = None) -> WitnessVerdict:
    """Verify (never search) a non-determinisability witness tuple.

    Clauses, in order: the three components lie in the right letter
    classes; the cactus cycle set is exactly the ghost set after the
    prefix; pumping the cycle twice the stabilisation constant does not
    change boolean reachability; the pumped word extended by the tail has
    a finite-weight run; the cactus word itself extended by the tail has
    none.  Type 0 forbids rebase letters inside the cactus, type 1 allows
    them.
    """
    if witness_type not in (0, 1):
        raise ValueError("witness type must be 0 or 1")
    prefix, tail = tuple(prefix), tuple(tail)

    def fail(clause: str, details: str) -> WitnessVerdict:
        return WitnessVerdict(ok=False, witness_type=witness_type,
                              failed_clause=clause, details=details)

    problem = _word_letters_ok(aug, prefix, allow=frozenset(["base", "cactus"]),
                               rebase_free_inside=True, length_fn=simp_length_fn,
                               max_depth=max_depth)
    if problem:
        return fail("alphabet", f"prefix: {problem}")
    if not cactus_letter.is_cactus:
        return fail("alphabet", "middle letter is not a cactus letter")
    problem = _word_letters_ok(
        aug, (cactus_letter,), allow=frozenset(["cactus"]),
        rebase_free_inside=(witness_type == 0), length_fn=simp_length_fn,
        max_depth=max_depth)
    if problem:
        return fail("alphabet", f"cactus: {problem}")
    if not tail or not tail[-1].is_cactus:
        return fail("alphabet", "tail must end with a cactus letter")
    problem = _word_letters_ok(
        aug, tail[:-1], allow=frozenset(["base", "cactus", "rebase", "jump"]),
        rebase_free_inside=False, length_fn=simp_length_fn, max_depth=max_depth)
    if problem:
        return fail("alphabet", f"tail: {problem}")
    problem = _word_letters_ok(
        aug, tail[-1:], allow=frozenset(["cactus"]), rebase_free_inside=False,
        length_fn=gen_length_fn, max_depth=max_depth)
    if problem:
        return fail("alphabet", f"tail end: {problem}")

    try:
        reachable_before, ghost = ghost_reach(aug, prefix)
    except Exception as exc:
        return fail("ghost-set", f"prefix unreadable: {exc}")
    cycle_set = aug.ghost_set(cactus_letter.spine)
    if ghost != cycle_set:
        return fail("ghost-set", "cactus cycle set differs from the prefix ghost set")

    cycle = Cycle(aug, cactus_letter.spine, cactus_letter.word)
    pump = 2 * cycle.mbar
    pumped = prefix + cactus_letter.word * pump
    try:
        reachable_after, _ = ghost_reach(aug, pumped)
    except Exception as exc:
        return fail("reach-invariance", f"pumped word unreadable: {exc}")
    if reachable_before != reachable_after:
        return fail("reach-invariance", "pumping the cycle changed boolean reachability")

    finite_side = xconf(aug, Configuration.unit(aug.initial), pumped + tail)
    if not is_finite(finite_side.min_weight()):
        return fail("finite-with-pump", "pumped word plus tail has no finite run")
    cactus_side = xconf(aug, Configuration.unit(aug.initial),
                        prefix + (cactus_letter,) + tail)
    if is_finite(cactus_side.min_weight()):
        return fail("infinite-with-cactus",
                    f"cactus word plus tail still has weight {cactus_side.min_weight()}")
    return WitnessVerdict(ok=True, witness_type=witness_type, failed_clause=None)
