"""Reflexive cycles, stabilisation, cactus letters, unfolding and flattening.

A reflexive cycle is a word that returns the deterministic spine of the
augmented machine to where it started, so it can be traversed any number
of times.  A *stable* cycle admits no strictly negative inner cycle; its
long-run behaviour freezes into finitely many "grounded" state pairs with
fixed weights, which we intern as a single cactus letter.  Unfolding goes
the other way: it replaces a cactus letter by enough concrete traversals
that any finite context of interest cannot tell the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .augmented import (
    AugState,
    AugWfa,
    InvariantViolation,
    UnreadableWordError,
    baseline_run,
    baseline_shift_word,
)
from .letters import Letter, Spine, iter_letters
from .weights import INF, Weight, is_finite, wmin, wsum
from .wfa import Configuration, RunTrace, maxeff, minimal_run, xconf


class NotReflexiveError(ValueError):
    """The word does not return the spine to its starting point."""


class NotProperError(NotReflexiveError):
    """Reflexive, but the baseline cannot traverse the cycle."""


class NotStableError(ValueError):
    """The cycle has a strictly negative inner cycle."""


class NotGroundedError(ValueError):
    """A rebase endpoint pair is not grounded."""


class FTooSmallError(ValueError):
    """The requested separation does not dominate the word's own effect."""


class M0CapExceededError(RuntimeError):
    """Unfolding did not converge within the exponent cap."""


class RebasePresentError(ValueError):
    """Flattening is only defined for rebase-free words."""


def stabilisation_constant(n: int) -> int:
    """The pumping exponent n * n! after which cycle behaviour freezes."""
    if n < 0:
        raise ValueError("state count must be nonnegative")
    return n * math.factorial(n)


# -- tropical matrices over the inner states --------------------------------

Matrix = Dict[str, Dict[str, int]]


def mat_identity(states: Sequence[str]) -> Matrix:
    return {s: {s: 0} for s in states}


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    out: Matrix = {}
    for s, row in a.items():
        acc: Dict[str, int] = {}
        for mid, w1 in row.items():
            for t, w2 in b.get(mid, {}).items():
                w = wsum(w1, w2)
                if t not in acc or w < acc[t]:
                    acc[t] = w
        if acc:
            out[s] = acc
    return out


def mat_pow(m: Matrix, exponent: int, states: Sequence[str]) -> Matrix:
    if exponent < 0:
        raise ValueError("negative matrix power")
    result = mat_identity(states)
    base = m
    e = exponent
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base_needed = e >> 1
        if base_needed:
            base = mat_mul(base, base)
        e = base_needed
    return result


def mat_entry(m: Matrix, s: str, t: str) -> Weight:
    return m.get(s, {}).get(t, INF)


def mat_min_diag(m: Matrix) -> Weight:
    best: Weight = INF
    for s in m:
        best = wmin(best, mat_entry(m, s, s))
    return best


class Cycle:
    """A reflexive cycle: a spine and a word that returns the spine to it."""

    def __init__(self, aug: AugWfa, spine: Spine, word: Sequence[Letter]):
        self.aug = aug
        self.spine = spine
        self.word = tuple(word)
        try:
            end = aug.spine_after(self.word, spine)
        except UnreadableWordError as exc:
            raise NotReflexiveError(str(exc)) from exc
        if end != spine:
            raise NotReflexiveError(f"word moves the spine from {spine!r} to {end!r}")
        self.states = tuple(sorted(spine.reachable,
                                   key=aug.underlying.state_key))

    @cached_property
    def matrix(self) -> Matrix:
        """Inner-to-inner weights of one traversal."""
        out: Matrix = {}
        for p in self.states:
            seed = Configuration.unit(AugState(p, self.spine.baseline,
                                               self.spine.reachable))
            final = xconf(self.aug, seed, self.word)
            row = {s.inner: w for s, w in final.items()}
            if row:
                out[p] = row
        return out

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def mbar(self) -> int:
        return stabilisation_constant(self.aug.stab_n(self.size))

    def is_proper(self) -> bool:
        b = self.spine.baseline
        return is_finite(mat_entry(self.matrix, b, b))

    def power(self, exponent: int) -> Matrix:
        return mat_pow(self.matrix, exponent, self.states)

    def state(self, inner: str) -> AugState:
        return AugState(inner, self.spine.baseline, self.spine.reachable)

    def __repr__(self) -> str:
        return f"Cycle({self.spine!r}, |word|={len(self.word)})"


def ref_states(cycle: Cycle, exponent: int = 1) -> Tuple[str, ...]:
    """Inner states with a finite return cycle at the given power."""
    m = cycle.power(exponent)
    return tuple(s for s in cycle.states if is_finite(mat_entry(m, s, s)))


def min_states(cycle: Cycle, exponent: int = 1) -> Tuple[str, ...]:
    """Reflexive states whose return weight attains the diagonal minimum."""
    m = cycle.power(exponent)
    best = mat_min_diag(m)
    if best is INF:
        return ()
    return tuple(s for s in cycle.states if mat_entry(m, s, s) == best)


def is_stable_cycle(aug: AugWfa, cycle: Cycle) -> bool:
    """No strictly negative inner cycle; decided at powers up to the set size.

    Any negative cycle decomposes into simple inner cycles of length at
    most |S'|, one of which must itself be negative, so checking the
    diagonal of the first |S'| powers is exact.
    """
    if not cycle.is_proper():
        raise NotProperError(f"baseline {cycle.spine.baseline!r} cannot traverse the cycle")
    acc = cycle.matrix
    for _ in range(cycle.size):
        d = mat_min_diag(acc)
        if is_finite(d) and d < 0:
            return False
        acc = mat_mul(acc, cycle.matrix)
    return True


@dataclass(frozen=True)
class MinSlopeCycle:
    run: RunTrace
    k: int
    slope: Fraction
    state: str


def min_slope_cycle(aug: AugWfa, cycle: Cycle) -> MinSlopeCycle:
    """Cheapest average-weight inner cycle over at most |S'| traversals.

    Ties prefer fewer traversals, then the smaller state id.  The witness
    run starts and ends at the winning state and is minimal blockwise.
    """
    if not cycle.is_proper():
        raise NotProperError(f"baseline {cycle.spine.baseline!r} cannot traverse the cycle")
    skey = aug.underlying.state_key
    best = None  # (slope, k, state index, state)
    acc = cycle.matrix
    for k in range(1, cycle.size + 1):
        for s in cycle.states:
            w = mat_entry(acc, s, s)
            if w is INF:
                continue
            cand = (Fraction(w, k), k, skey(s), s)
            if best is None or cand[:3] < best[:3]:
                best = cand
        if k < cycle.size:
            acc = mat_mul(acc, cycle.matrix)
    if best is None:
        raise NotProperError("no inner state can traverse the cycle at all")
    slope, k, _, state = best

    # blockwise DP from `state` over k traversals, then stitch minimal runs
    m = cycle.matrix
    dists: List[Dict[str, int]] = [{state: 0}]
    for _ in range(k):
        prev = dists[-1]
        nxt: Dict[str, int] = {}
        for s, d in prev.items():
            for t, w in m.get(s, {}).items():
                nw = wsum(d, w)
                if t not in nxt or nw < nxt[t]:
                    nxt[t] = nw
        dists.append(nxt)
    total = dists[k][state]
    if total != slope * k:
        raise InvariantViolation("blockwise DP disagrees with the matrix power")
    hops = [state]
    current = state
    for j in range(k, 0, -1):
        need = dists[j][current]
        choice = None
        for s in sorted(dists[j - 1], key=skey):
            w = mat_entry(m, s, current)
            if w is not INF and wsum(dists[j - 1][s], w) == need:
                choice = s
                break
        if choice is None:
            raise InvariantViolation("blockwise backtracking lost its predecessor")
        hops.append(choice)
        current = choice
    hops.reverse()

    run = None
    for j in range(k):
        src, dst = cycle.state(hops[j]), cycle.state(hops[j + 1])
        block = minimal_run(aug, cycle.word, start=Configuration.unit(src), target=dst)
        if block is None or block.weight != mat_entry(m, hops[j], hops[j + 1]):
            raise InvariantViolation("block run does not realize its matrix entry")
        run = block if run is None else run.concat(block)
    if run is None:
        raise InvariantViolation("min-slope cycle produced an empty run")
    return MinSlopeCycle(run=run, k=k, slope=slope, state=state)


@dataclass(frozen=True)
class ShiftToStable:
    cycle: Cycle
    anchor: RunTrace
    k: int
    slope: Fraction


def shift_to_stable(aug: AugWfa, cycle: Cycle) -> ShiftToStable:
    """Re-anchor a proper reflexive cycle at its min-slope run.

    With nonnegative min slope the input is already stable and is returned
    unchanged with the baseline run as anchor (k=1).  Otherwise the word
    is repeated k times, shifted onto the min-slope run, and the result is
    verified stable.
    """
    ms = min_slope_cycle(aug, cycle)
    if ms.slope >= 0:
        anchor = baseline_run(aug, cycle.word, start=cycle.spine)
        return ShiftToStable(cycle=cycle, anchor=anchor, k=1, slope=ms.slope)
    word_k = cycle.word * ms.k
    shifted_word = baseline_shift_word(aug, word_k, ms.run)
    shifted = Cycle(aug, Spine(ms.state, cycle.spine.reachable), shifted_word)
    if not is_stable_cycle(aug, shifted):
        raise InvariantViolation("min-slope shift failed to stabilise the cycle")
    return ShiftToStable(cycle=shifted, anchor=ms.run, k=ms.k, slope=ms.slope)


# -- grounded pairs and cactus letters ---------------------------------------


@dataclass(frozen=True)
class GroundedPairs:
    """Long-run data of a stable cycle at the stabilisation exponent.

    ``weights[(s, r)]`` is the frozen cost of going from s to r through
    some minimal-return state g (``grounding[(s, r)]``); pairs admitting
    no such passage are not grounded and blow up with the exponent.
    """

    exponent: int
    weights: Dict[Tuple[str, str], int]
    grounding: Dict[Tuple[str, str], str]
    min_states: Tuple[str, ...]


def grounded_pairs(aug: AugWfa, cycle: Cycle) -> GroundedPairs:
    if not is_stable_cycle(aug, cycle):
        raise NotStableError("grounded pairs are defined for stable cycles only")
    mbar = cycle.mbar
    d = cycle.power(mbar)
    mins = min_states(cycle, 1)
    # stable: min diagonal is 0 and it persists at every power
    mins_at = tuple(s for s in cycle.states if mat_entry(d, s, s) == 0)
    skey = aug.underlying.state_key
    weights: Dict[Tuple[str, str], int] = {}
    grounding: Dict[Tuple[str, str], str] = {}
    for s in cycle.states:
        for r in cycle.states:
            best = None
            for g in mins_at:
                w1, w2 = mat_entry(d, s, g), mat_entry(d, g, r)
                if w1 is INF or w2 is INF:
                    continue
                cand = (wsum(w1, w2), skey(g))
                if best is None or cand < best:
                    best = cand
            if best is not None:
                weights[(s, r)] = best[0]
                grounding[(s, r)] = next(g for g in mins_at if skey(g) == best[1])
    return GroundedPairs(exponent=mbar, weights=weights,
                         grounding=grounding, min_states=mins_at)


def stabilise(aug: AugWfa, cycle: Cycle) -> Letter:
    """Intern the cactus letter of a stable cycle.

    Its transitions are exactly the grounded pairs at their stabilised
    weights; the baseline fixes itself at weight 0.
    """
    gp = grounded_pairs(aug, cycle)
    b = cycle.spine.baseline
    if gp.weights.get((b, b)) != 0:
        raise InvariantViolation("stable cycle lost its weight-0 baseline pair")
    letter = aug.registry.cactus(cycle.spine, cycle.word)
    aug._letter_pairs[letter.uid] = _pairs_table(aug, gp.weights)
    return letter


def _pairs_table(aug: AugWfa, weights: Dict[Tuple[str, str], int],
                 ) -> Dict[str, Tuple[Tuple[str, int], ...]]:
    skey = aug.underlying.state_key
    table: Dict[str, List[Tuple[str, int]]] = {}
    for (s, r), w in weights.items():
        table.setdefault(s, []).append((r, w))
    return {s: tuple(sorted(row, key=lambda rw: skey(rw[0])))
            for s, row in table.items()}


def materialize_cactus(aug: AugWfa, letter: Letter,
                       ) -> Dict[str, Tuple[Tuple[str, int], ...]]:
    """Pair table for a cactus letter that was built structurally."""
    cycle = Cycle(aug, letter.spine, letter.word)
    gp = grounded_pairs(aug, cycle)
    return _pairs_table(aug, gp.weights)


def materialize_rebase(aug: AugWfa, letter: Letter,
                       ) -> Dict[str, Tuple[Tuple[str, int], ...]]:
    base = aug.registry.cactus(letter.spine, letter.word)
    pairs = aug.letter_pairs(base)
    flat = {(s, r): w for s, row in pairs.items() for r, w in row}
    key = (letter.src_inner, letter.dst_inner)
    if key not in flat:
        raise NotGroundedError(f"rebase endpoints {key} are not a grounded pair")
    c = flat[key]
    return _pairs_table(aug, {sr: wsum(w, -c) for sr, w in flat.items()})


def rebase(aug: AugWfa, cactus_letter: Letter, source: AugState,
           target: AugState) -> Letter:
    """Re-anchor a cactus letter at a grounded pair of its cycle states.

    Collapses to the cactus letter itself when both endpoints are the
    baseline.
    """
    if not cactus_letter.is_cactus:
        raise ValueError("rebase starts from a cactus letter")
    spine = cactus_letter.spine
    for s in (source, target):
        if s.baseline != spine.baseline or s.reachable != spine.reachable:
            raise ValueError(f"{s!r} is not a state of the cycle set {spine!r}")
    pairs = aug.letter_pairs(cactus_letter)
    if not any(r == target.inner for r, _w in pairs.get(source.inner, ())):
        raise NotGroundedError(
            f"({source.inner!r}, {target.inner!r}) is not a grounded pair")
    if source.inner == spine.baseline and target.inner == spine.baseline:
        return cactus_letter
    return aug.registry.rebase(spine, cactus_letter.word, source.inner, target.inner)


# -- degeneracy ---------------------------------------------------------------


def is_degenerate(aug: AugWfa, cycle: Cycle) -> bool:
    """Every long-run passage the cycle offers is already grounded.

    Checked exactly: reachability between states in blocks of the doubled
    stabilisation exponent stabilises within |S'| block steps, so boolean
    closure over those blocks decides the quantifier over all repetition
    counts.
    """
    gp = grounded_pairs(aug, cycle)  # raises NotStableError if unstable
    d = cycle.power(2 * cycle.mbar)
    refs = {s for s in cycle.states if is_finite(mat_entry(d, s, s))}
    bool_step = {s: {t for t in cycle.states if is_finite(mat_entry(d, s, t))}
                 for s in cycle.states}
    reach = {s: set(bool_step[s]) for s in cycle.states}
    for _ in range(cycle.size):
        grown = False
        for s in cycle.states:
            new = set()
            for mid in reach[s]:
                new |= bool_step[mid]
            if not new <= reach[s]:
                reach[s] |= new
                grown = True
        if not grown:
            break
    for s in cycle.states:
        for t in reach[s]:
            if t in refs and (s, t) not in gp.weights:
                return False
    return True


def cactus_chain_check(aug: AugWfa, letter: Letter) -> Optional[Letter]:
    """First degenerate letter along the nesting chains under ``letter``.

    Walks the letter and every cactus/rebase letter nested in its word,
    depth-first in word order, returning the first degenerate one.  A
    chain longer than the declared augmented state count must contain a
    degenerate letter; if none is found the walk errors out, because that
    would contradict a theorem.
    """
    if not (letter.is_cactus or letter.is_rebase):
        raise ValueError("chain check starts from a cactus or rebase letter")

    def chains(l: Letter, depth: int) -> Optional[Letter]:
        if is_degenerate(aug, Cycle(aug, l.spine, l.word)):
            return l
        if depth >= aug.declared_size():
            raise InvariantViolation(
                "a nesting chain of length >= |S| contains no degenerate letter")
        for sub in l.word:
            if sub.is_cactus or sub.is_rebase:
                found = chains(sub, depth + 1)
                if found is not None:
                    return found
        return None

    return chains(letter, 1)


# -- unfolding ----------------------------------------------------------------


@dataclass(frozen=True)
class UnfoldResult:
    word: Tuple[Letter, ...]
    m0: int


def unfold(aug: AugWfa, prefix: Sequence[Letter], cactus_letter: Letter,
           suffix: Sequence[Letter], separation: int,
           m0_cap: int = 4096) -> UnfoldResult:
    """Replace one cactus letter by concrete traversals of its cycle.

    The result reads ``prefix . w^(2 mbar M0) . suffix`` where M0 is the
    least exponent at which every grounded pair has frozen to its
    stabilised weight and every non-grounded pair exceeds ``separation``,
    with both conditions persisting for a further |S'| exponent steps.
    The effect is re-verified against the cactus version at every prefix
    of ``suffix``: supports can only grow, weights agree on the old
    support, and new support sits above ``separation`` minus the word's
    own maximal effect.
    """
    prefix, suffix = tuple(prefix), tuple(suffix)
    if not cactus_letter.is_cactus:
        raise ValueError("unfold expects a cactus letter")
    whole = prefix + (cactus_letter,) + suffix
    eff = maxeff(aug, whole)
    if separation <= 2 * eff:
        raise FTooSmallError(
            f"separation {separation} must exceed twice the word effect {eff}")
    spine_at = aug.spine_after(prefix)
    if spine_at != cactus_letter.spine:
        raise UnreadableWordError("prefix does not lead into the cactus cycle")

    cycle = Cycle(aug, cactus_letter.spine, cactus_letter.word)
    gp = grounded_pairs(aug, cycle)
    mbar = cycle.mbar
    block = cycle.power(2 * mbar)

    def good(p: Matrix) -> bool:
        for s in cycle.states:
            for r in cycle.states:
                w = mat_entry(p, s, r)
                if (s, r) in gp.weights:
                    if w != gp.weights[(s, r)]:
                        return False
                elif w is not INF and w <= separation:
                    return False
        return True

    powers = [None, block]  # powers[k] = block^k
    k = 1
    m0 = None
    while k <= m0_cap:
        if good(powers[k]):
            window_ok = True
            for j in range(k + 1, k + cycle.size + 1):
                while len(powers) <= j:
                    powers.append(mat_mul(powers[-1], block))
                if not good(powers[j]):
                    window_ok = False
                    k = j
                    break
            if window_ok:
                m0 = k
                break
        else:
            k += 1
        if len(powers) <= k:
            powers.append(mat_mul(powers[-1], block))
    if m0 is None:
        raise M0CapExceededError(f"no stable unfolding exponent below {m0_cap}")

    copies = 2 * mbar * m0
    if copies * max(1, len(cycle.word)) > 1_000_000:
        raise M0CapExceededError(
            f"unfolded word would need {copies} cycle copies; refusing")
    word = prefix + cycle.word * copies + suffix

    # effect re-verification against the folded version
    folded = xconf(aug, Configuration.unit(aug.initial), prefix + (cactus_letter,))
    flat = xconf(aug, Configuration.unit(aug.initial), prefix + cycle.word * copies)
    floor = separation - eff
    for i in range(len(suffix) + 1):
        for s, w in folded.items():
            if flat[s] != w:
                raise InvariantViolation(
                    f"unfolding changed a supported weight at suffix position {i}")
        for s, w in flat.items():
            if s not in folded and w <= floor:
                raise InvariantViolation(
                    f"unfolding leaked a low new weight at suffix position {i}")
        if i < len(suffix):
            folded = xconf(aug, folded, (suffix[i],))
            flat = xconf(aug, flat, (suffix[i],))
    return UnfoldResult(word=word, m0=m0)


def flatten(aug: AugWfa, word: Sequence[Letter], separation: int) -> Tuple[Letter, ...]:
    """Unfold every cactus letter until the word is cactus-free.

    Rejects words carrying rebase letters at any nesting depth.  Each
    unfolding step uses a separation large enough that the final word
    still meets the requested one: weights agree on the original support
    and any newly supported state sits at least ``separation`` above the
    original maximum.
    """
    word = tuple(word)
    for letter in iter_letters(word, deep=True):
        if letter.is_rebase:
            raise RebasePresentError("flatten is defined for rebase-free words")
    eff = maxeff(aug, word)
    if separation <= 2 * eff:
        raise FTooSmallError(
            f"separation {separation} must exceed twice the word effect {eff}")
    original = xconf(aug, Configuration.unit(aug.initial), word)

    current = word
    while True:
        pos = next((i for i, l in enumerate(current) if l.is_cactus), None)
        if pos is None:
            break
        step_sep = 3 * maxeff(aug, current) + separation + 1
        res = unfold(aug, current[:pos], current[pos], current[pos + 1:], step_sep)
        current = res.word

    flat = xconf(aug, Configuration.unit(aug.initial), current)
    ceiling = original.max_weight()
    for s, w in original.items():
        if flat[s] != w:
            raise InvariantViolation("flattening changed a weight on the old support")
    for s, w in flat.items():
        if s not in original and w < wsum(ceiling, separation):
            raise InvariantViolation("flattening leaked a state below the separation")
    return current


# -- bounded-letter validation -------------------------------------------------


def _bound_allows(bound, n: int) -> bool:
    saturated = getattr(bound, "saturated", False)
    if saturated:
        return True
    return n <= int(bound)


def validate_bounded_letter(aug: AugWfa, letter: Letter, length_fn,
                            max_depth: Optional[int] = None) -> bool:
    """Check a letter against a per-depth length budget.

    Base and jump letters always pass.  A cactus or rebase letter of
    depth k passes when its cycle is stable and non-degenerate, its word
    has at most ``length_fn(k)`` letters, its depth respects ``max_depth``
    if given, and every nested cactus/rebase letter passes recursively.
    ``length_fn`` may return saturated bound values; those allow any
    length.
    """
    if letter.is_base or letter.is_jump:
        return True
    if max_depth is not None and letter.depth > max_depth:
        return False
    if length_fn is not None and not _bound_allows(length_fn(letter.depth), len(letter.word)):
        return False
    try:
        cycle = Cycle(aug, letter.spine, letter.word)
        if not is_stable_cycle(aug, cycle):
            return False
        if is_degenerate(aug, cycle):
            return False
    except NotReflexiveError:
        return False
    for sub in letter.word:
        if (sub.is_cactus or sub.is_rebase) \
                and not validate_bounded_letter(aug, sub, length_fn, max_depth):
            return False
    return True
