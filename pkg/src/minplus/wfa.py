"""Weighted automata over the tropical (min-plus) semiring.

A :class:`Wfa` has a single initial state, all states accepting, and at
most one finite weight per (source, letter, target) triple; absent triples
weigh INF.  The weight of a run is the sum of its transition weights and
the weight of a word is the minimum over all runs on it from the initial
state.

Most operations here are generic over a small "machine" protocol so they
also apply to derived machines built elsewhere in the package:

* ``machine.initial`` -- the initial state,
* ``machine.successors(state, letter)`` -- iterable of ``(target, weight)``
  pairs with finite int weights and pairwise distinct targets,
* ``machine.state_key(state)`` -- sortable key used for deterministic
  tie-breaking,
* ``machine.letter_wmax(letter)`` -- largest absolute finite weight the
  letter can carry.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .weights import (
    INF,
    Weight,
    WeightOverflow,
    check_weight,
    is_finite,
    weight_from_json,
    wmin,
    wsum,
)

Word = Sequence[str]


class UntrimmedError(ValueError):
    """Constructing an automaton with states unreachable from the initial one."""


class Configuration:
    """Map from states to finite weights; states outside the support weigh INF."""

    __slots__ = ("_vals",)

    def __init__(self, values: Mapping = ()) -> None:
        vals = {}
        for state, w in dict(values).items():
            if w is INF:
                continue
            vals[state] = check_weight(w)
        self._vals = vals

    @classmethod
    def unit(cls, state) -> "Configuration":
        """Weight 0 at ``state``, INF elsewhere."""
        return cls({state: 0})

    @classmethod
    def zeros(cls, states: Iterable) -> "Configuration":
        return cls({s: 0 for s in states})

    def __getitem__(self, state) -> Weight:
        return self._vals.get(state, INF)

    def __contains__(self, state) -> bool:
        return state in self._vals

    def __len__(self) -> int:
        return len(self._vals)

    def __iter__(self):
        return iter(self._vals)

    def items(self):
        return self._vals.items()

    def support(self) -> frozenset:
        return frozenset(self._vals)

    def is_empty(self) -> bool:
        return not self._vals

    def min_weight(self) -> Weight:
        return min(self._vals.values()) if self._vals else INF

    def max_weight(self) -> Weight:
        return max(self._vals.values()) if self._vals else INF

    def argmin(self, key) -> object:
        """State of minimal weight, ties by the given sort key."""
        if not self._vals:
            raise ValueError("empty configuration has no argmin")
        m = self.min_weight()
        return min((s for s, w in self._vals.items() if w == m), key=key)

    def shifted(self, delta: int) -> "Configuration":
        return Configuration({s: wsum(w, delta) for s, w in self._vals.items()})

    def normalized(self) -> Tuple["Configuration", int]:
        """Shift so the minimum is exactly 0; returns (config, shift applied)."""
        if not self._vals:
            return self, 0
        m = self.min_weight()
        if m == 0:
            return self, 0
        return self.shifted(-m), -m

    def canonical(self, key=None) -> Tuple:
        items = self._vals.items()
        if key is None:
            return tuple(sorted(items))
        return tuple(sorted(items, key=lambda sw: key(sw[0])))

    def superior_to(self, other: "Configuration") -> bool:
        """c <= d: supp(d) inside supp(c) and c at most d on supp(d)."""
        for s, w in other.items():
            cw = self._vals.get(s, INF)
            if cw is INF or cw > w:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, Configuration) and self._vals == other._vals

    def __hash__(self) -> int:
        return hash(frozenset(self._vals.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{s!r}: {w}" for s, w in sorted(self._vals.items(), key=repr))
        return "Configuration({%s})" % inner


@dataclass(frozen=True)
class RunStep:
    source: object
    letter: object
    weight: int
    target: object


@dataclass(frozen=True)
class RunTrace:
    """A concrete run: a start state and a chain of weighted steps."""

    start: object
    steps: Tuple[RunStep, ...]

    def __post_init__(self):
        prev = self.start
        for st in self.steps:
            if st.source != prev:
                raise ValueError(f"broken run: step source {st.source!r} after {prev!r}")
            check_weight(st.weight)
            prev = st.target

    @property
    def end(self):
        return self.steps[-1].target if self.steps else self.start

    @property
    def word(self) -> Tuple:
        return tuple(st.letter for st in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def weight(self) -> int:
        total = 0
        for st in self.steps:
            total = wsum(total, st.weight)
        return total

    def prefix_weight(self, length: int) -> int:
        total = 0
        for st in self.steps[:length]:
            total = wsum(total, st.weight)
        return total

    def segment_weight(self, start: int, stop: int) -> int:
        total = 0
        for st in self.steps[start:stop]:
            total = wsum(total, st.weight)
        return total

    def prefix(self, length: int) -> "RunTrace":
        return RunTrace(self.start, self.steps[:length])

    def state_at(self, position: int):
        return self.start if position == 0 else self.steps[position - 1].target

    def states(self) -> Tuple:
        return (self.start,) + tuple(st.target for st in self.steps)

    def concat(self, other: "RunTrace") -> "RunTrace":
        if other.start != self.end:
            raise ValueError("runs do not chain")
        return RunTrace(self.start, self.steps + other.steps)

    def repeat(self, times: int) -> "RunTrace":
        if self.start != self.end:
            raise ValueError("only a cycle can be repeated")
        return RunTrace(self.start, self.steps * times)


class Wfa:
    """Min-plus weighted automaton with one initial state, all states final.

    ``transitions`` is an iterable of ``(source, letter, weight, target)``
    with finite int weights; triples mapped to INF are simply omitted.
    Duplicate triples collapse to their minimum with a warning.  Every
    state must be reachable from the initial state; use :meth:`trimmed`
    to drop unreachable ones instead of erroring.
    """

    def __init__(self, states: Sequence[str], alphabet: Sequence[str],
                 initial: str, transitions: Iterable[Tuple[str, str, int, str]]):
        self.states: Tuple[str, ...] = tuple(states)
        self.alphabet: Tuple[str, ...] = tuple(alphabet)
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state names")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet letters")
        if initial not in self.states:
            raise ValueError(f"initial state {initial!r} not declared")
        self.initial: str = initial
        self._index = {s: i for i, s in enumerate(self.states)}

        table: Dict[Tuple[str, str], Dict[str, int]] = {}
        for src, sym, w, dst in transitions:
            if src not in self._index or dst not in self._index:
                raise ValueError(f"transition uses undeclared state: {(src, sym, w, dst)}")
            if sym not in self.alphabet:
                raise ValueError(f"transition uses undeclared letter: {(src, sym, w, dst)}")
            if w is INF:
                continue
            w = check_weight(w)
            row = table.setdefault((src, sym), {})
            if dst in row:
                warnings.warn(
                    f"duplicate transition ({src!r}, {sym!r}, {dst!r}): "
                    f"keeping min({row[dst]}, {w})")
                row[dst] = min(row[dst], w)
            else:
                row[dst] = w
        self._table = table

        unreachable = set(self.states) - self._reachable_set()
        if unreachable:
            raise UntrimmedError(
                f"states unreachable from {initial!r}: {sorted(unreachable)}")

        self._wmax_cache: Dict[str, int] = {}

    @classmethod
    def trimmed(cls, states: Sequence[str], alphabet: Sequence[str],
                initial: str, transitions: Iterable[Tuple[str, str, int, str]]) -> "Wfa":
        """Build after discarding states unreachable from the initial state."""
        transitions = list(transitions)
        adj: Dict[str, set] = {}
        for src, _sym, w, dst in transitions:
            if w is not INF:
                adj.setdefault(src, set()).add(dst)
        keep = {initial}
        stack = [initial]
        while stack:
            for nxt in adj.get(stack.pop(), ()):
                if nxt not in keep:
                    keep.add(nxt)
                    stack.append(nxt)
        return cls([s for s in states if s in keep], alphabet, initial,
                   [t for t in transitions if t[0] in keep and t[3] in keep])

    def _reachable_set(self) -> set:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            p = stack.pop()
            for sym in self.alphabet:
                for q in self._table.get((p, sym), ()):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
        return seen

    # -- machine protocol -------------------------------------------------

    def successors(self, state: str, letter: str) -> List[Tuple[str, int]]:
        return list(self._table.get((state, letter), {}).items())

    def state_key(self, state: str) -> int:
        return self._index[state]

    def letter_wmax(self, letter: str) -> int:
        if letter not in self._wmax_cache:
            best = 0
            for (src, sym), row in self._table.items():
                if sym == letter:
                    for w in row.values():
                        best = max(best, abs(w))
            self._wmax_cache[letter] = best
        return self._wmax_cache[letter]

    # ----------------------------------------------------------------------

    def weight(self, source: str, letter: str, target: str) -> Weight:
        return self._table.get((source, letter), {}).get(target, INF)

    def transitions(self) -> List[Tuple[str, str, int, str]]:
        out = []
        for (src, sym), row in self._table.items():
            for dst, w in row.items():
                out.append((src, sym, w, dst))
        out.sort(key=lambda t: (self._index[t[0]], t[1], self._index[t[3]]))
        return out

    def is_deterministic(self) -> bool:
        return all(len(row) <= 1 for row in self._table.values())

    def __repr__(self) -> str:
        return (f"Wfa(states={len(self.states)}, alphabet={list(self.alphabet)}, "
                f"transitions={sum(len(r) for r in self._table.values())})")


# -- core operations ------------------------------------------------------


def step_config(machine, config: Configuration, letter) -> Configuration:
    """One tropical matrix-vector step."""
    out: Dict = {}
    for state, w in config.items():
        for target, tw in machine.successors(state, letter):
            nw = wsum(w, tw)
            prev = out.get(target, INF)
            if prev is INF or nw < prev:
                out[target] = nw
    return Configuration(out)


def xconf(machine, config: Configuration, word: Word) -> Configuration:
    """Evolve a configuration through a word (iterated min-plus product)."""
    for letter in word:
        config = step_config(machine, config, letter)
    return config


def eval_word(machine, word: Word) -> Weight:
    """Weight of a word: minimum over all runs from the initial state."""
    return xconf(machine, Configuration.unit(machine.initial), word).min_weight()


def mwt(machine, sources, word: Word, targets=None) -> Weight:
    """Minimal weight of a run on ``word`` from ``sources`` into ``targets``.

    ``sources`` may be a single state, an iterable of states (each seeded
    at 0), or a ready :class:`Configuration`.  ``targets=None`` means all
    states.
    """
    if isinstance(sources, Configuration):
        start = sources
    elif isinstance(sources, str) or not _is_iterable(sources):
        start = Configuration.unit(sources)
    else:
        start = Configuration.zeros(sources)
    final = xconf(machine, start, word)
    if targets is None:
        return final.min_weight()
    targets = set(targets)
    return min((w for s, w in final.items() if s in targets), default=INF)


def _is_iterable(obj) -> bool:
    try:
        iter(obj)
        return True
    except TypeError:
        return False


def validate_run(machine, run: RunTrace) -> bool:
    """True iff every step is an actual transition with the stated weight."""
    for st in run.steps:
        if not any(t == st.target and w == st.weight
                   for t, w in machine.successors(st.source, st.letter)):
            return False
    return True


def is_seamless(machine, run: RunTrace, start: Optional[Configuration] = None) -> bool:
    """Every prefix of ``run`` attains the minimal weight to its endpoint.

    Minimality is judged from ``start`` (default: unit at the machine's
    initial state), i.e. prefix i must weigh exactly
    mwt(start -> word[:i] -> state_i).
    """
    config = Configuration.unit(machine.initial) if start is None else start
    acc = config[run.start]
    if acc is INF:
        return False
    for st in run.steps:
        config = step_config(machine, config, st.letter)
        acc = wsum(acc, st.weight)
        if config[st.target] != acc:
            return False
    return True


def maxeff(machine, word: Word) -> int:
    """Largest possible effect of the word: sum of per-letter max |weight|."""
    total = 0
    for letter in word:
        total = wsum(total, machine.letter_wmax(letter))
    return total


def minimal_run(machine, word: Word, start: Optional[Configuration] = None,
                target=None) -> Optional[RunTrace]:
    """A minimal-weight run on ``word``, seamless from ``start`` by construction.

    ``target=None`` picks the cheapest endpoint (ties by state key).  At
    each backtracking step the predecessor of least state key is chosen,
    so the result is deterministic.  Returns None when no run exists.
    """
    configs = [Configuration.unit(machine.initial) if start is None else start]
    word = list(word)
    for letter in word:
        configs.append(step_config(machine, configs[-1], letter))
    final = configs[-1]
    if target is None:
        if final.is_empty():
            return None
        target = final.argmin(machine.state_key)
    elif final[target] is INF:
        return None

    rev: List[RunStep] = []
    current = target
    for i in range(len(word), 0, -1):
        letter = word[i - 1]
        need = configs[i][current]
        best = None
        for p, wp in sorted(configs[i - 1].items(), key=lambda sw: machine.state_key(sw[0])):
            for t, tw in machine.successors(p, letter):
                if t == current and wsum(wp, tw) == need:
                    best = RunStep(p, letter, tw, current)
                    break
            if best is not None:
                break
        if best is None:
            raise AssertionError("backtracking lost the optimal predecessor")
        rev.append(best)
        current = best.source
    return RunTrace(current, tuple(reversed(rev)))


# -- gap witnesses ---------------------------------------------------------


@dataclass(frozen=True)
class GapWitness:
    """Words x, y and a state q exposing a prefix-gap above the threshold.

    Some cheapest run on x*y passes through q after x, yet after reading x
    the state q sits ``gap`` above the cheapest reachable state.
    """

    x: Tuple[str, ...]
    y: Tuple[str, ...]
    state: str
    gap: int

    @property
    def total_length(self) -> int:
        return len(self.x) + len(self.y)


def check_gap_witness(wfa: Wfa, witness: GapWitness, min_gap: int) -> bool:
    """Re-verify a witness against the definition (through-q run ties allowed)."""
    conf = xconf(wfa, Configuration.unit(wfa.initial), witness.x)
    cq = conf[witness.state]
    if cq is INF:
        return False
    m = conf.min_weight()
    if cq - m <= min_gap:
        return False
    best_all = xconf(wfa, conf, witness.y).min_weight()
    best_through = xconf(wfa, Configuration({witness.state: cq}), witness.y).min_weight()
    return is_finite(best_all) and best_all == best_through


def find_gap_witness(wfa: Wfa, min_gap: int, max_len: int) -> Optional[GapWitness]:
    """Search for a gap witness with |x| + |y| <= max_len.

    Candidates are tried ordered by |x|, then x lexicographically (in
    alphabet order), then state id, then |y|, then y; the first witness in
    that order is returned.  The prefix search deduplicates min-normalized
    configurations, which is sound because both the gap and the completion
    condition are translation-invariant.  Returns None when no witness
    exists within the budget.
    """
    if min_gap < 0 or max_len < 0:
        raise ValueError("min_gap and max_len must be nonnegative")
    start, _ = Configuration.unit(wfa.initial).normalized()
    seen = {start.canonical(wfa.state_key)}
    layer: List[Tuple[Tuple[str, ...], Configuration]] = [((), start)]
    while layer:
        for x, conf in layer:
            m = conf.min_weight()
            for q in wfa.states:
                cq = conf[q]
                if cq is INF:
                    continue
                if cq - m > min_gap:
                    y = _complete_gap_witness(wfa, conf, q, max_len - len(x))
                    if y is not None:
                        return GapWitness(x, y, q, cq - m)
        if len(layer[0][0]) >= max_len:
            break
        nxt: List[Tuple[Tuple[str, ...], Configuration]] = []
        for x, conf in layer:
            for sym in wfa.alphabet:
                child = step_config(wfa, conf, sym)
                if child.is_empty():
                    continue
                child, _ = child.normalized()
                key = child.canonical(wfa.state_key)
                if key not in seen:
                    seen.add(key)
                    nxt.append((x + (sym,), child))
        layer = nxt
    return None


def _complete_gap_witness(wfa: Wfa, conf: Configuration, q: str,
                          budget: int) -> Optional[Tuple[str, ...]]:
    # find shortest (then lex-least) y making a cheapest run on xy pass
    # through q after x; ties with other runs are allowed.
    def joint_key(ca: Configuration, cq: Configuration):
        shift = ca.min_weight()
        return (ca.shifted(-shift).canonical(wfa.state_key),
                cq.shifted(-shift).canonical(wfa.state_key))

    cq0 = Configuration({q: conf[q]})
    layer = [((), conf, cq0)]
    seen = {joint_key(conf, cq0)}
    for _ in range(budget + 1):
        nxt = []
        for y, ca, cq in layer:
            mq = cq.min_weight()
            if is_finite(mq) and ca.min_weight() == mq:
                return y
            if len(y) < budget:
                nxt.append((y, ca, cq))
        layer = []
        for y, ca, cq in nxt:
            for sym in wfa.alphabet:
                ca2 = step_config(wfa, ca, sym)
                cq2 = step_config(wfa, cq, sym)
                if cq2.is_empty():
                    continue
                key = joint_key(ca2, cq2)
                if key not in seen:
                    seen.add(key)
                    layer.append((y + (sym,), ca2, cq2))
        if not layer:
            break
    return None


def trim(wfa: Wfa) -> Wfa:
    """Restriction to the part reachable from the initial state."""
    return Wfa.trimmed(wfa.states, wfa.alphabet, wfa.initial, wfa.transitions())


# -- serialization ---------------------------------------------------------


def wfa_to_json(wfa: Wfa) -> dict:
    return {
        "states": list(wfa.states),
        "alphabet": list(wfa.alphabet),
        "initial": wfa.initial,
        "transitions": [
            {"from": src, "letter": sym, "weight": w, "to": dst}
            for src, sym, w, dst in wfa.transitions()
        ],
    }


def wfa_from_json(data: Mapping, lenient: bool = False) -> Wfa:
    """Load an automaton from its JSON dict form.

    Transitions with weight "inf" (or with the weight omitted) are
    dropped.  ``lenient=True`` trims unreachable states instead of
    raising.
    """
    try:
        states = list(data["states"])
        alphabet = list(data["alphabet"])
        initial = data["initial"]
        raw = data["transitions"]
    except KeyError as exc:
        raise ValueError(f"automaton JSON missing field {exc}") from exc
    transitions = []
    for entry in raw:
        w = weight_from_json(entry.get("weight", "inf"))
        if w is INF:
            continue
        transitions.append((entry["from"], entry["letter"], w, entry["to"]))
    builder = Wfa.trimmed if lenient else Wfa
    return builder(states, alphabet, initial, transitions)


# -- stock fixtures --------------------------------------------------------


def min_letter_counter() -> Wfa:
    """Three-state nondeterministic counter computing min(#a, #b).

    Not determinisable: the two counting branches drift arbitrarily far
    apart while both stay relevant.
    """
    return Wfa(
        states=["q0", "qa", "qb"],
        alphabet=["a", "b"],
        initial="q0",
        transitions=[
            ("q0", "a", 1, "qa"), ("q0", "b", 0, "qa"),
            ("q0", "a", 0, "qb"), ("q0", "b", 1, "qb"),
            ("qa", "a", 1, "qa"), ("qa", "b", 0, "qa"),
            ("qb", "a", 0, "qb"), ("qb", "b", 1, "qb"),
        ],
    )


def single_loop() -> Wfa:
    """One state with an a/1 self-loop; deterministic, computes |w|."""
    return Wfa(["s"], ["a"], "s", [("s", "a", 1, "s")])
