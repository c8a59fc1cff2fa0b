"""Letters of the baseline-augmented machine.

Four kinds exist:

* ``base`` -- one underlying transition, readable only where the baseline
  matches its source;
* ``cactus`` -- the stabilisation of a reflexive cycle ``(S', w)``,
  standing for unboundedly many traversals of ``w``;
* ``rebase`` -- a cactus re-anchored at a grounded pair of endpoints
  other than the baseline;
* ``jump`` -- a baseline rewrite that moves nobody and costs nothing.

Letters are structural values interned in a :class:`LetterRegistry`:
building the same structure twice yields the same object, so identity
comparison is sound after interning.  A registry is append-only and owned
by one augmented machine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .weights import check_weight


@dataclass(frozen=True)
class Spine:
    """Deterministic part of an augmented state: baseline plus reachable set."""

    baseline: str
    reachable: frozenset

    def __post_init__(self):
        if self.baseline not in self.reachable:
            raise ValueError(f"baseline {self.baseline!r} outside its reachable set")

    def key(self) -> Tuple:
        return (self.baseline, tuple(sorted(self.reachable)))

    def __repr__(self) -> str:
        return f"({self.baseline}|{{{','.join(sorted(self.reachable))}}})"


class Letter:
    """One interned augmented-machine letter.  Construct via a registry."""

    __slots__ = ("kind", "uid", "depth", "source", "symbol", "weight", "target",
                 "spine", "word", "src_inner", "dst_inner", "to_baseline")

    def __init__(self, kind: str, uid: int, depth: int, **fields):
        self.kind = kind
        self.uid = uid
        self.depth = depth
        for name in ("source", "symbol", "weight", "target", "spine", "word",
                     "src_inner", "dst_inner", "to_baseline"):
            setattr(self, name, fields.get(name))

    @property
    def is_base(self) -> bool:
        return self.kind == "base"

    @property
    def is_cactus(self) -> bool:
        return self.kind == "cactus"

    @property
    def is_rebase(self) -> bool:
        return self.kind == "rebase"

    @property
    def is_jump(self) -> bool:
        return self.kind == "jump"

    def __repr__(self) -> str:
        if self.is_base:
            return f"γ({self.source}-{self.symbol}/{self.weight}->{self.target})"
        if self.is_cactus:
            return f"α{self.uid}{self.spine!r}"
        if self.is_rebase:
            return f"β{self.uid}{self.spine!r}[{self.src_inner}->{self.dst_inner}]"
        return f"jump({self.source}->{self.to_baseline})"

    def __hash__(self) -> int:
        return self.uid

    def __eq__(self, other) -> bool:
        return self is other


def word_depth(word: Sequence[Letter]) -> int:
    """Nesting depth of a word: max letter depth, 0 for the empty word."""
    return max((letter.depth for letter in word), default=0)


class LetterRegistry:
    """Append-only hash-consing store for letters of one augmented machine."""

    def __init__(self) -> None:
        self._by_key: Dict[Tuple, Letter] = {}
        self._all: List[Letter] = []

    def __len__(self) -> int:
        return len(self._all)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._all)

    def _intern(self, key: Tuple, factory) -> Letter:
        found = self._by_key.get(key)
        if found is None:
            found = factory(len(self._all))
            self._by_key[key] = found
            self._all.append(found)
        return found

    def base(self, source: str, symbol: str, weight: int, target: str) -> Letter:
        check_weight(weight)
        key = ("base", source, symbol, weight, target)
        return self._intern(key, lambda uid: Letter(
            "base", uid, 0, source=source, symbol=symbol, weight=weight, target=target))

    def cactus(self, spine: Spine, word: Sequence[Letter]) -> Letter:
        word = tuple(word)
        self._check_owned(word)
        key = ("cactus", spine.key(), tuple(l.uid for l in word))
        depth = 1 + word_depth(word)
        return self._intern(key, lambda uid: Letter(
            "cactus", uid, depth, spine=spine, word=word))

    def rebase(self, spine: Spine, word: Sequence[Letter],
               src_inner: str, dst_inner: str) -> Letter:
        word = tuple(word)
        self._check_owned(word)
        for q in (src_inner, dst_inner):
            if q not in spine.reachable:
                raise ValueError(f"rebase endpoint {q!r} outside the cycle set")
        key = ("rebase", spine.key(), tuple(l.uid for l in word), src_inner, dst_inner)
        depth = 1 + word_depth(word)
        return self._intern(key, lambda uid: Letter(
            "rebase", uid, depth, spine=spine, word=word,
            src_inner=src_inner, dst_inner=dst_inner))

    def jump(self, from_baseline: str, to_baseline: str, reachable: frozenset) -> Letter:
        if from_baseline not in reachable or to_baseline not in reachable:
            raise ValueError("jump endpoints must lie in the shared reachable set")
        key = ("jump", from_baseline, to_baseline, tuple(sorted(reachable)))
        return self._intern(key, lambda uid: Letter(
            "jump", uid, 0, source=from_baseline, to_baseline=to_baseline,
            spine=Spine(from_baseline, frozenset(reachable))))

    def _check_owned(self, word: Sequence[Letter]) -> None:
        for letter in word:
            if letter.uid >= len(self._all) or self._all[letter.uid] is not letter:
                raise ValueError("word contains a letter from a foreign registry")


def iter_letters(word: Sequence[Letter], deep: bool = False) -> Iterator[Letter]:
    """Letters of a word, optionally recursing into cactus/rebase bodies."""
    for letter in word:
        yield letter
        if deep and letter.word is not None:
            yield from iter_letters(letter.word, deep=True)


def kinds_of(word: Sequence[Letter]) -> frozenset:
    return frozenset(letter.kind for letter in word)


# -- serialization ---------------------------------------------------------


def letter_to_json(letter: Letter) -> dict:
    if letter.is_base:
        return {"kind": "base", "from": letter.source, "letter": letter.symbol,
                "weight": letter.weight, "to": letter.target}
    if letter.is_jump:
        return {"kind": "jump", "from": letter.source, "to": letter.to_baseline,
                "T": sorted(letter.spine.reachable)}
    body = {"kind": letter.kind,
            "set": {"baseline": letter.spine.baseline,
                    "T": sorted(letter.spine.reachable)},
            "word": [letter_to_json(l) for l in letter.word]}
    if letter.is_rebase:
        body["src"] = letter.src_inner
        body["dst"] = letter.dst_inner
    return body


def word_to_json(word: Sequence[Letter]) -> list:
    return [letter_to_json(letter) for letter in word]


def letter_from_json(registry: LetterRegistry, data: dict) -> Letter:
    kind = data.get("kind")
    if kind == "base":
        return registry.base(data["from"], data["letter"],
                             int(data["weight"]), data["to"])
    if kind == "jump":
        return registry.jump(data["from"], data["to"], frozenset(data["T"]))
    if kind in ("cactus", "rebase"):
        spine = Spine(data["set"]["baseline"], frozenset(data["set"]["T"]))
        word = tuple(letter_from_json(registry, entry) for entry in data["word"])
        if kind == "cactus":
            return registry.cactus(spine, word)
        return registry.rebase(spine, word, data["src"], data["dst"])
    raise ValueError(f"unknown letter kind: {kind!r}")


def word_from_json(registry: LetterRegistry, data: Iterable[dict]) -> Tuple[Letter, ...]:
    return tuple(letter_from_json(registry, entry) for entry in data)
