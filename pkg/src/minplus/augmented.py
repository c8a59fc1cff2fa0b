"""The baseline-augmented machine: runs measured relative to a baseline run.

Each augmented state carries an inner state ``p`` (where a tracked run
actually is), a baseline state ``q`` (where the distinguished reference
run is), and the set ``T`` of states reachable so far; both ``p`` and
``q`` lie in ``T``.  Baseline and reachable set evolve deterministically
with the letter read, the inner state nondeterministically; transition
weights are differences against the baseline's own cost, so the baseline
run itself always weighs 0.

The machine is lazy: states and transitions materialize on demand, and
its alphabet is open-ended (the letter registry is append-only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .letters import Letter, LetterRegistry, Spine
from .weights import INF, check_weight
from .wfa import Configuration, RunTrace, RunStep, Wfa, validate_run


class UnreadableWordError(ValueError):
    """The word's deterministic spine breaks before the word ends."""


class InvariantViolation(AssertionError):
    """A re-verified postcondition failed; indicates a genuine bug."""


@dataclass(frozen=True)
class AugState:
    inner: str
    baseline: str
    reachable: FrozenSet[str]

    def __post_init__(self):
        if self.inner not in self.reachable or self.baseline not in self.reachable:
            raise ValueError("augmented state components must lie in the reachable set")

    @property
    def spine(self) -> Spine:
        return Spine(self.baseline, self.reachable)

    def key(self) -> Tuple:
        return (self.inner, self.baseline, tuple(sorted(self.reachable)))

    def __repr__(self) -> str:
        return f"<{self.inner};{self.baseline};{{{','.join(sorted(self.reachable))}}}>"


class AugWfa:
    """Baseline augmentation of an underlying :class:`Wfa`.

    ``mode`` picks the stabilisation-constant basis: "tight" uses the
    size of the structure at hand (cycle set, reachable fragment),
    "declared" the full augmented state count |Q|^2 * 2^|Q|, which is
    astronomically conservative but matches the letter of the bounds.
    """

    def __init__(self, underlying: Wfa, mode: str = "tight"):
        if mode not in ("tight", "declared"):
            raise ValueError(f"unknown mode {mode!r}")
        self.underlying = underlying
        self.mode = mode
        self.registry = LetterRegistry()
        q0 = underlying.initial
        self.initial = AugState(q0, q0, frozenset([q0]))
        self._delta_set_cache: Dict[Tuple[FrozenSet[str], str], FrozenSet[str]] = {}
        # letter uid -> {src_inner: ((dst_inner, weight), ...)}
        self._letter_pairs: Dict[int, Dict[str, Tuple[Tuple[str, int], ...]]] = {}
        self._letter_wmax: Dict[int, int] = {}

    # -- machine protocol ---------------------------------------------------

    def state_key(self, state: AugState) -> Tuple:
        return state.key()

    def successors(self, state: AugState, letter: Letter) -> List[Tuple[AugState, int]]:
        if letter.is_base:
            if state.baseline != letter.source:
                return []
            t2 = self.delta_set(state.reachable, letter.symbol)
            out = []
            for target, w in self.underlying.successors(state.inner, letter.symbol):
                out.append((AugState(target, letter.target, t2), w - letter.weight))
            return out
        if letter.is_jump:
            if state.baseline != letter.source or state.reachable != letter.spine.reachable:
                return []
            return [(AugState(state.inner, letter.to_baseline, state.reachable), 0)]
        if letter.is_cactus:
            if state.baseline != letter.spine.baseline \
                    or state.reachable != letter.spine.reachable:
                return []
            new_baseline = state.baseline
        else:  # rebase
            if state.baseline != letter.src_inner \
                    or state.reachable != letter.spine.reachable:
                return []
            new_baseline = letter.dst_inner
        pairs = self.letter_pairs(letter).get(state.inner, ())
        return [(AugState(dst, new_baseline, state.reachable), w) for dst, w in pairs]

    def letter_wmax(self, letter: Letter) -> int:
        if letter.uid in self._letter_wmax:
            return self._letter_wmax[letter.uid]
        if letter.is_jump:
            best = 0
        elif letter.is_base:
            best = 0
            for (src, sym), row in self.underlying._table.items():
                if sym == letter.symbol:
                    for w in row.values():
                        best = max(best, abs(w - letter.weight))
        else:
            best = max((abs(w) for pairs in self.letter_pairs(letter).values()
                        for _, w in pairs), default=0)
        self._letter_wmax[letter.uid] = best
        return best

    # -- deterministic components -------------------------------------------

    def delta_set(self, states: FrozenSet[str], symbol: str) -> FrozenSet[str]:
        key = (states, symbol)
        if key not in self._delta_set_cache:
            out = set()
            for p in states:
                for q, _w in self.underlying.successors(p, symbol):
                    out.add(q)
            self._delta_set_cache[key] = frozenset(out)
        return self._delta_set_cache[key]

    def spine_step(self, spine: Spine, letter: Letter) -> Optional[Spine]:
        """Deterministic evolution of (baseline, reachable); None if unreadable."""
        if letter.is_base:
            if spine.baseline != letter.source:
                return None
            return Spine(letter.target, self.delta_set(spine.reachable, letter.symbol))
        if letter.is_jump:
            if spine.baseline != letter.source or spine.reachable != letter.spine.reachable:
                return None
            return Spine(letter.to_baseline, spine.reachable)
        if letter.is_cactus:
            return spine if spine == letter.spine else None
        if spine.baseline == letter.src_inner and spine.reachable == letter.spine.reachable:
            return Spine(letter.dst_inner, spine.reachable)
        return None

    def spine_after(self, word: Sequence[Letter],
                    start: Optional[Spine] = None) -> Spine:
        spine = self.initial.spine if start is None else start
        for i, letter in enumerate(word):
            nxt = self.spine_step(spine, letter)
            if nxt is None:
                raise UnreadableWordError(
                    f"letter {i} ({letter!r}) unreadable at spine {spine!r}")
            spine = nxt
        return spine

    def ghost_set(self, spine: Spine) -> FrozenSet[AugState]:
        """Saturation of a spine: every inner position over it."""
        return frozenset(AugState(p, spine.baseline, spine.reachable)
                         for p in spine.reachable)

    # -- letter construction --------------------------------------------------

    def base_letter(self, source: str, symbol: str, target: str) -> Letter:
        w = self.underlying.weight(source, symbol, target)
        if w is INF:
            raise ValueError(f"no underlying transition {source!r} -{symbol}-> {target!r}")
        return self.registry.base(source, symbol, w, target)

    def base_letters(self) -> Tuple[Letter, ...]:
        """All underlying transitions as letters, in declared order."""
        return tuple(self.base_letter(src, sym, dst)
                     for src, sym, _w, dst in self.underlying.transitions())

    def jump_letter(self, from_state: AugState, to_state: AugState) -> Letter:
        if from_state.reachable != to_state.reachable:
            raise ValueError("jump endpoints must share the reachable set")
        return self.registry.jump(from_state.baseline, to_state.baseline,
                                  from_state.reachable)

    # -- letter semantics ------------------------------------------------------

    def letter_pairs(self, letter: Letter) -> Dict[str, Tuple[Tuple[str, int], ...]]:
        """Inner-to-inner transition map of a cactus or rebase letter."""
        if letter.uid in self._letter_pairs:
            return self._letter_pairs[letter.uid]
        from . import cactus as _cactus  # deferred: cactus imports this module
        if letter.is_cactus:
            pairs = _cactus.materialize_cactus(self, letter)
        elif letter.is_rebase:
            pairs = _cactus.materialize_rebase(self, letter)
        else:
            raise ValueError(f"{letter!r} has no pair semantics")
        self._letter_pairs[letter.uid] = pairs
        return pairs

    def declared_size(self) -> int:
        n = len(self.underlying.states)
        return n * n * 2**n

    def stab_n(self, local_size: int) -> int:
        """State-count basis for stabilisation constants under the active mode."""
        return local_size if self.mode == "tight" else self.declared_size()


def augment(wfa: Wfa, mode: str = "tight") -> AugWfa:
    return AugWfa(wfa, mode=mode)


def encode_run(aug: AugWfa, run: RunTrace) -> Tuple[Letter, ...]:
    """Encode an underlying run as the word of its own transitions.

    Reading the result from the augmented initial state makes the encoded
    run the baseline; every other run on the same underlying word is
    measured against it.
    """
    return tuple(aug.base_letter(st.source, st.letter, st.target)
                 for st in run.steps)


def baseline_run(aug: AugWfa, word: Sequence[Letter],
                 start: Optional[Spine] = None) -> RunTrace:
    """The run that follows the baseline itself; it weighs 0 throughout.

    Defined for jump-free words only: a jump rewrites the baseline to a
    state the previous baseline run is not at, so no single run follows
    the baseline through it.
    """
    spine = (aug.initial.spine if start is None else start)
    state = AugState(spine.baseline, spine.baseline, spine.reachable)
    first = state
    steps = []
    for i, letter in enumerate(word):
        if letter.is_jump:
            raise ValueError(f"letter {i} is a jump; the baseline run breaks there")
        nxt = aug.spine_step(spine, letter)
        if nxt is None:
            raise UnreadableWordError(
                f"letter {i} ({letter!r}) unreadable at spine {spine!r}")
        target = AugState(nxt.baseline, nxt.baseline, nxt.reachable)
        steps.append(RunStep(state, letter, 0, target))
        state, spine = target, nxt
    run = RunTrace(first, tuple(steps))
    if not validate_run(aug, run):
        raise InvariantViolation("baseline run is not a valid run")
    return run


# -- baseline shifts ---------------------------------------------------------


def shift_state(state: AugState, new_baseline: str) -> AugState:
    return AugState(state.inner, new_baseline, state.reachable)


def baseline_shift_config(config: Configuration, anchor_state: AugState) -> Configuration:
    """Permute a configuration to the anchor's baseline; values carry over."""
    out = {}
    for s, w in config.items():
        if s.baseline != anchor_state.baseline or s.reachable != anchor_state.reachable:
            raise ValueError("configuration spine does not match the anchor")
        out[shift_state(s, anchor_state.inner)] = w
    return Configuration(out)


def _shift_letter(aug: AugWfa, letter: Letter, src: AugState, dst: AugState) -> Letter:
    if letter.is_base:
        return aug.base_letter(src.inner, letter.symbol, dst.inner)
    if letter.is_jump:
        raise ValueError("jump-bearing words cannot be baseline-shifted")
    if letter.is_cactus:
        spine, word = letter.spine, letter.word
    else:
        spine, word = letter.spine, letter.word
    if src.inner == spine.baseline and dst.inner == spine.baseline:
        return aug.registry.cactus(spine, word)
    return aug.registry.rebase(spine, word, src.inner, dst.inner)


def baseline_shift_word(aug: AugWfa, word: Sequence[Letter],
                        anchor: RunTrace) -> Tuple[Letter, ...]:
    """Re-anchor a word at a run on it: the anchor becomes the new baseline.

    Base letters are replaced by the anchor's own transitions; cactus and
    rebase letters are re-anchored at the anchor's endpoints, collapsing
    back to the plain cactus when those endpoints are the baseline.
    Words containing jumps are rejected.
    """
    word = tuple(word)
    if anchor.word != word:
        raise ValueError("anchor run does not read the given word")
    if not validate_run(aug, anchor):
        raise ValueError("anchor is not a valid run")
    out = []
    for i, letter in enumerate(word):
        out.append(_shift_letter(aug, letter, anchor.state_at(i), anchor.state_at(i + 1)))
    return tuple(out)


def baseline_shift_run(aug: AugWfa, run: RunTrace, anchor: RunTrace) -> RunTrace:
    """Shift a run to the anchor's baseline; step weights become a_i - d_i."""
    if run.word != anchor.word:
        raise ValueError("run and anchor read different words")
    if not validate_run(aug, anchor) or not validate_run(aug, run):
        raise ValueError("run and anchor must both be valid runs")
    steps = []
    state = shift_state(run.start, anchor.start.inner)
    for i, st in enumerate(run.steps):
        letter = _shift_letter(aug, st.letter, anchor.state_at(i), anchor.state_at(i + 1))
        target = shift_state(st.target, anchor.state_at(i + 1).inner)
        weight = check_weight(st.weight - anchor.steps[i].weight)
        steps.append(RunStep(state, letter, weight, target))
        state = target
    shifted = RunTrace(shift_state(run.start, anchor.start.inner), tuple(steps))
    if not validate_run(aug, shifted):
        raise InvariantViolation("baseline-shifted run is not a valid run")
    return shifted


# -- boolean reachability ------------------------------------------------------


def ghost_reach(aug: AugWfa, word: Sequence[Letter],
                ) -> Tuple[FrozenSet[AugState], FrozenSet[AugState]]:
    """Actually-reachable and ghost-reachable augmented states after ``word``.

    The ghost set saturates the deterministic spine with every inner
    position; the reachable set only keeps inner states an actual run can
    occupy.  Reachable is always contained in ghost, with equality until
    a jump targets a baseline no run sits on.
    """
    spine = aug.initial.spine
    inner = frozenset([aug.initial.inner])
    for i, letter in enumerate(word):
        nxt = aug.spine_step(spine, letter)
        if nxt is None:
            raise UnreadableWordError(
                f"letter {i} ({letter!r}) unreadable at spine {spine!r}")
        if letter.is_base:
            inner = frozenset(
                q for p in inner for q, _w in aug.underlying.successors(p, letter.symbol))
        elif letter.is_cactus or letter.is_rebase:
            pairs = aug.letter_pairs(letter)
            inner = frozenset(dst for p in inner for dst, _w in pairs.get(p, ()))
        spine = nxt
    reachable = frozenset(AugState(p, spine.baseline, spine.reachable) for p in inner)
    return reachable, aug.ghost_set(spine)


def jump_targets_ghost(aug: AugWfa, prefix: Sequence[Letter], jump: Letter) -> bool:
    """True when the jump lands the baseline on a ghost: no actual run is there.

    Reading such a jump breaks the seamless-baseline property, which the
    charge and potential analyses require.
    """
    if not jump.is_jump:
        raise ValueError("not a jump letter")
    reachable, _ghost = ghost_reach(aug, prefix)
    return all(s.inner != jump.to_baseline for s in reachable)
