"""Gap-bounded determinisation and equivalence checking.

The classic subset construction for min-plus automata tracks, for every
reachable state, how far its cheapest run sits above the cheapest run
overall.  Restricting those relative offsets to a gap ``B`` keeps the
construction finite: offsets beyond ``B`` are discarded, and each
transition emits the amount the overall minimum advanced.  The result
``A|B`` is a partial deterministic machine whose value can only
over-approximate the source, ``A|B(w) >= A(w)``, with equality for every
word exactly when the source is determinisable at that gap.

``check_equiv`` decides equality on the product of the source with its
restriction, hunting for a word whose restricted value exceeds its true
value.  It reports a shortest such word (lexicographically smallest among
the shortest) and re-verifies it by direct evaluation of both machines
before believing it.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .augmented import InvariantViolation
from .weights import INF, Weight, check_weight, is_finite, wsum
from .wfa import Wfa, Word, eval_word

# A restricted state: states paired with their offset above the cheapest,
# sorted by state name.  The minimum offset is always 0.
Config = Tuple[Tuple[str, int], ...]

SINK = -1  # product index for "restriction died, source still alive"


class BudgetExceededError(RuntimeError):
    """The subset construction hit its state budget before closing."""


def initial_config(wfa: Wfa) -> Config:
    return ((wfa.initial, 0),)


def config_name(config: Config) -> str:
    return "|".join(f"{state}:{offset}" for state, offset in config)


def det_step(wfa: Wfa, config: Config, letter: str,
             gap: int) -> Optional[Tuple[Config, int]]:
    """One restricted-subset step: successor config and emitted shift.

    Returns None when no tracked state can read ``letter``.  Ties at the
    gap boundary are kept: a state is dropped only when its offset
    strictly exceeds ``gap``.
    """
    best: Dict[str, int] = {}
    for state, offset in config:
        for target, w in wfa.successors(state, letter):
            cand = check_weight(offset + w)
            cur = best.get(target)
            if cur is None or cand < cur:
                best[target] = cand
    if not best:
        return None
    shift = min(best.values())
    kept = tuple(sorted((s, o - shift) for s, o in best.items()
                        if o - shift <= gap))
    return kept, shift


class DetWfa:
    """Materialised gap-restricted determinisation of a min-plus automaton.

    Deterministic and partial: a missing transition means every tracked
    run dies on that letter.  States are reachable configs in BFS order,
    index 0 the initial one.
    """

    def __init__(self, source: Wfa, gap: int, configs: List[Config],
                 transitions: Dict[Tuple[int, str], Tuple[int, int]]):
        self.source = source
        self.gap = gap
        self.configs: Tuple[Config, ...] = tuple(configs)
        self.index: Dict[Config, int] = {c: i for i, c in enumerate(self.configs)}
        self.transitions = transitions

    @property
    def size(self) -> int:
        return len(self.configs)

    def step(self, state: int, letter: str) -> Optional[Tuple[int, int]]:
        return self.transitions.get((state, letter))

    def evaluate(self, word: Word) -> Weight:
        """Value of ``word`` under the restriction; INF once the run dies."""
        state = 0
        total: Weight = 0
        for letter in word:
            nxt = self.transitions.get((state, letter))
            if nxt is None:
                return INF
            state, shift = nxt
            total = wsum(total, shift)
        return total

    def __repr__(self) -> str:
        return f"DetWfa(gap={self.gap}, states={self.size})"


def determinize(wfa: Wfa, gap: int, max_states: int = 10_000) -> DetWfa:
    """Build the full gap-restricted determinisation by BFS.

    Raises :class:`BudgetExceededError` when more than ``max_states``
    configs become reachable, so callers never loop on a machine that is
    not determinisable at this gap.
    """
    if gap < 0:
        raise ValueError("gap must be nonnegative")
    start = initial_config(wfa)
    configs: List[Config] = [start]
    index: Dict[Config, int] = {start: 0}
    transitions: Dict[Tuple[int, str], Tuple[int, int]] = {}
    frontier = [0]
    while frontier:
        next_frontier: List[int] = []
        for i in frontier:
            config = configs[i]
            for letter in wfa.alphabet:
                step = det_step(wfa, config, letter, gap)
                if step is None:
                    continue
                target, shift = step
                j = index.get(target)
                if j is None:
                    if len(configs) >= max_states:
                        raise BudgetExceededError(
                            f"restriction at gap {gap} exceeds "
                            f"{max_states} states")
                    j = len(configs)
                    index[target] = j
                    configs.append(target)
                    next_frontier.append(j)
                transitions[(i, letter)] = (j, shift)
        frontier = next_frontier
    return DetWfa(wfa, gap, configs, transitions)


def export_wfa(det: DetWfa) -> Wfa:
    """The restriction as an ordinary (deterministic) automaton.

    State names spell out their config, e.g. ``"p:0|q:2"``.
    """
    names = [config_name(c) for c in det.configs]
    transitions = [(names[i], letter, shift, names[j])
                   for (i, letter), (j, shift) in det.transitions.items()]
    return Wfa(names, det.source.alphabet, names[0], transitions)


# -- equivalence of source and restriction ----------------------------------


@dataclass(frozen=True)
class EquivReport:
    """Outcome of comparing a source automaton with its restriction.

    When not equivalent, ``word`` is a shortest (then lex-smallest)
    counterexample, ``kind`` says how the restriction lost: with a finite
    but too-large value ("finite-gap") or by dying outright
    ("restriction-dies").
    """
    equivalent: bool
    word: Optional[Tuple[str, ...]] = None
    value_source: Weight = field(default=INF)
    value_restricted: Weight = field(default=INF)
    kind: Optional[str] = None
    rounds: int = 0


def _product(wfa: Wfa, det: DetWfa):
    """Reachable product of source states with restriction configs.

    Nodes are ``(source_state, config_index)`` with ``config_index ==
    SINK`` once the restriction has died.  Edge weights are source cost
    minus emitted shift, so a path weight is the margin of that source
    run below the restricted value; the margin is meaningless (and kept
    at 0) in the sink tier.
    """
    start = (wfa.initial, 0)
    adjacency: Dict[Tuple[str, int], Dict[str, List[Tuple[Tuple[str, int], int]]]] = {}
    stack = [start]
    seen = {start}
    while stack:
        node = stack.pop()
        state, i = node
        rows: Dict[str, List[Tuple[Tuple[str, int], int]]] = {}
        for letter in wfa.alphabet:
            edges = wfa.successors(state, letter)
            if not edges:
                continue  # source dies too; no word continues this way
            if i == SINK:
                step = None
            else:
                step = det.step(i, letter)
            out: List[Tuple[Tuple[str, int], int]] = []
            if step is None:
                for target, _w in edges:
                    out.append(((target, SINK), 0))
            else:
                j, shift = step
                for target, w in edges:
                    out.append(((target, j), check_weight(w - shift)))
            rows[letter] = out
            for nxt, _w in out:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        adjacency[node] = rows
    return start, adjacency


_RECONSTRUCTION_CAP = 20_000_000  # table entries; counterexamples beyond this
                                  # length would not fit in memory anyway


def _backward_tables(adjacency, length: int, sink_tier: bool):
    """Levels of "best completion" values per node, for 0..length steps.

    For the sink search the value is 0/INF reachability of the sink tier;
    for the numeric search it is the cheapest exact-length path weight.
    """
    if (length + 1) * len(adjacency) > _RECONSTRUCTION_CAP:
        raise RuntimeError(
            f"counterexample of length {length} is too long to reconstruct")
    if sink_tier:
        level = {node: 0 if node[1] == SINK else INF for node in adjacency}
    else:
        level = {node: 0 for node in adjacency}
    tables = [level]
    for _ in range(length):
        prev = tables[-1]
        nxt: Dict[Tuple[str, int], Weight] = {}
        for node, rows in adjacency.items():
            best: Weight = INF
            for out in rows.values():
                for target, w in out:
                    cand = wsum(w, prev.get(target, INF))
                    if cand is not INF and (best is INF or cand < best):
                        best = cand
            nxt[node] = best
        tables.append(nxt)
    return tables


def _reconstruct(start, adjacency, letters: List[str], length: int,
                 sink_tier: bool) -> Tuple[str, ...]:
    """Lex-smallest length-``length`` word whose best completion is bad.

    "Bad" means: reaches the sink tier (``sink_tier``) or has negative
    total weight.  A word of that length is known to exist; each step
    greedily keeps the invariant that one still does.
    """
    tables = _backward_tables(adjacency, length, sink_tier)

    def admits(front: Dict, remaining: int) -> bool:
        table = tables[remaining]
        for node, acc in front.items():
            comp = table.get(node, INF)
            if comp is INF:
                continue
            if sink_tier:
                return True
            if wsum(acc, comp) < 0:
                return True
        return False

    word: List[str] = []
    front: Dict[Tuple[str, int], Weight] = {start: 0}
    for remaining in range(length, 0, -1):
        for letter in letters:
            nxt: Dict[Tuple[str, int], Weight] = {}
            for node, acc in front.items():
                for target, w in adjacency[node].get(letter, ()):
                    cand = wsum(acc, w)
                    cur = nxt.get(target, INF)
                    if cur is INF or cand < cur:
                        nxt[target] = cand
            if nxt and admits(nxt, remaining - 1):
                word.append(letter)
                front = nxt
                break
        else:
            raise InvariantViolation("counterexample reconstruction lost the trail")
    return tuple(word)


def check_equiv(wfa: Wfa, det: DetWfa, max_rounds: int = 1_000_000) -> EquivReport:
    """Does the restriction compute the source value for every word?

    Searches the product graph round by round: round ``k`` covers all
    words of length up to ``k``.  Stops at the first round where either a
    source run undercuts the restricted value (negative product path) or
    the restriction dies while the source lives, and reconstructs the
    lex-smallest counterexample of that length.  With no counterexample
    the numeric layer stabilises within one round per product node; a
    round past stability with nothing found proves equivalence.  Raises
    RuntimeError at ``max_rounds`` (only reachable for machines whose
    restriction diverges without ever dying, which a negative product
    cycle turns into a counterexample long before).
    """
    start, adjacency = _product(wfa, det)
    letters = sorted(wfa.alphabet)

    dist: Dict[Tuple[str, int], Weight] = {start: 0}
    dead_hit = start[1] == SINK  # cannot happen: initial config exists
    rounds = 0
    while rounds < max_rounds:
        rounds += 1
        nxt = dict(dist)
        changed = False
        neg_hit = False
        for node, acc in dist.items():
            if node[1] == SINK:
                continue
            for out in adjacency[node].values():
                for target, w in out:
                    cand = wsum(acc, w)
                    if target[1] == SINK:
                        if target not in nxt:
                            nxt[target] = 0
                            changed = True
                            dead_hit = True
                        continue
                    cur = nxt.get(target, INF)
                    if cur is INF or cand < cur:
                        nxt[target] = cand
                        changed = True
                        if cand < 0:
                            neg_hit = True
        dist = nxt
        if dead_hit or neg_hit:
            candidates: List[Tuple[Tuple[str, ...], str]] = []
            if dead_hit:
                candidates.append((_reconstruct(start, adjacency, letters,
                                                rounds, True),
                                   "restriction-dies"))
            if neg_hit:
                candidates.append((_reconstruct(start, adjacency, letters,
                                                rounds, False),
                                   "finite-gap"))
            word, kind = min(candidates)
            value_source = eval_word(wfa, word)
            value_restricted = det.evaluate(word)
            if kind == "restriction-dies":
                ok = is_finite(value_source) and value_restricted is INF
            else:
                ok = (is_finite(value_source) and is_finite(value_restricted)
                      and value_restricted > value_source)
            if not ok:
                raise InvariantViolation(
                    f"counterexample {word!r} does not re-verify: "
                    f"source {value_source}, restricted {value_restricted}")
            return EquivReport(False, word, value_source, value_restricted,
                               kind, rounds)
        if not changed:
            return EquivReport(True, None, INF, INF, None, rounds)
    raise RuntimeError(f"no verdict after {max_rounds} rounds")


@dataclass(frozen=True)
class GapDecision:
    """Bundle of a restriction build and its equivalence verdict."""
    gap: int
    restricted_states: int
    equivalent: bool
    word: Optional[Tuple[str, ...]]
    value_source: Weight
    value_restricted: Weight
    kind: Optional[str]
    machine: DetWfa = field(repr=False, compare=False, default=None)


def decide_at_gap(wfa: Wfa, gap: int, max_states: int = 10_000,
                  max_rounds: int = 1_000_000) -> GapDecision:
    """Determinise at ``gap`` and decide whether the restriction is exact."""
    det = determinize(wfa, gap, max_states=max_states)
    report = check_equiv(wfa, det, max_rounds=max_rounds)
    return GapDecision(gap, det.size, report.equivalent, report.word,
                       report.value_source, report.value_restricted,
                       report.kind, det)
