"""Revealed relations of a choice function.

Three objects are extracted from choice data:

* the binary revealed preference: ``x`` beats ``y`` when ``x = c{x,y}``;
* the reaction relation: ``x`` reacts to the absence of ``y`` when some
  third option ``z`` satisfies ``z = c{x,y,z}`` and ``x = c{x,z}`` (the
  choice reverses toward ``x`` once ``y`` is gone);
* subjective similarity: the equivalence closure of reaction connectivity,
  whose classes are the revealed types.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import ChoiceFunction, GroundSet, TypePartition, iter_bits


@dataclass(frozen=True)
class BinaryRelation:
    """Relation over the ground set as adjacency bitmask rows.

    ``rows[i]`` has bit ``j`` set when the pair (option i, option j) is in
    the relation.  ``strict`` relations are validated irreflexive.
    """

    ground: GroundSet
    rows: tuple[int, ...]
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.ground.size:
            raise ValueError("adjacency rows do not match the ground set")
        if self.strict:
            for i, row in enumerate(self.rows):
                if (row >> i) & 1:
                    raise ValueError("strict relation cannot be reflexive")

    def holds(self, a: str, b: str) -> bool:
        i = self.ground.index[a]
        j = self.ground.index[b]
        return bool((self.rows[i] >> j) & 1)

    def pairs(self) -> list[tuple[str, str]]:
        opts = self.ground.options
        return [
            (opts[i], opts[j])
            for i, row in enumerate(self.rows)
            for j in iter_bits(row)
        ]

    def is_empty(self) -> bool:
        return all(row == 0 for row in self.rows)

    def transitive_closure(self) -> "BinaryRelation":
        rows = list(self.rows)
        n = len(rows)
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= rows[k]
        if self.strict:
            for i in range(n):
                rows[i] &= ~(1 << i)
        return BinaryRelation(self.ground, tuple(rows), strict=self.strict)


@dataclass(frozen=True)
class RevealedReport:
    """Bundle of everything revealed from one choice function."""

    strict_pref: BinaryRelation
    reaction: BinaryRelation
    similarity_classes: TypePartition
    witness: dict[tuple[str, str], str]

    def to_json(self) -> str:
        doc = {
            "strict_preference": [[a, b] for a, b in self.strict_pref.pairs()],
            "reaction": [[a, b] for a, b in self.reaction.pairs()],
            "similarity_classes": [list(b) for b in self.similarity_classes.blocks],
            "witnesses": {f"{a} reacts to {b}": z for (a, b), z in sorted(self.witness.items())},
        }
        return json.dumps(doc, indent=2) + "\n"


def reveal_binary(cf: ChoiceFunction) -> BinaryRelation:
    """Strict pairwise revealed preference: x beats y iff x = c{x,y}."""
    n = cf.ground.size
    choices = cf.choices
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            winner = choices[(1 << i) | (1 << j)]
            loser = j if winner == i else i
            rows[winner] |= 1 << loser
    return BinaryRelation(cf.ground, tuple(rows), strict=True)


def reveal_reaction(cf: ChoiceFunction) -> tuple[BinaryRelation, dict[tuple[str, str], str]]:
    """Reaction relation with one witness per pair.

    Scans all ordered pairs (x, y) and all third options z; the recorded
    witness is the qualifying z with the smallest ground-set position.
    """
    ground = cf.ground
    n = ground.size
    choices = cf.choices
    rows = [0] * n
    witness: dict[tuple[str, str], str] = {}
    for x in range(n):
        xbit = 1 << x
        for y in range(n):
            if x == y:
                continue
            pair_xy = xbit | (1 << y)
            for z in range(n):
                zbit = 1 << z
                if zbit & pair_xy:
                    continue
                if choices[pair_xy | zbit] == z and choices[xbit | zbit] == x:
                    rows[x] |= 1 << y
                    witness[(ground.options[x], ground.options[y])] = ground.options[z]
                    break
    return BinaryRelation(ground, tuple(rows), strict=True), witness


def reaction_menu_scan(cf: ChoiceFunction) -> BinaryRelation:
    """Arbitrary-menu variant of the reaction relation.

    x reacts to the absence of y iff some menu A satisfies
    ``x = c(A \\ {y}) != c(A) != y``.  Cost 2^n menus instead of n^3
    triples; meant for cross-checking the triple-based default.
    """
    ground = cf.ground
    n = ground.size
    choices = cf.choices
    rows = [0] * n
    for mask in range(1, ground.full_mask + 1):
        chosen = choices[mask]
        for y in iter_bits(mask):
            if y == chosen:
                continue
            sub = mask ^ (1 << y)
            if sub == 0:
                continue
            x = choices[sub]
            if x != chosen:
                rows[x] |= 1 << y
    for i in range(n):
        rows[i] &= ~(1 << i)
    return BinaryRelation(ground, tuple(rows), strict=True)


def reaction_crosscheck(cf: ChoiceFunction) -> dict[str, list[tuple[str, str]]]:
    """Discrepancies between the triple-based and arbitrary-menu reaction.

    Returns pairs present only under one definition; both lists empty means
    the two definitions coincide on this function.
    """
    triple, _ = reveal_reaction(cf)
    menus = reaction_menu_scan(cf)
    only_triple = sorted(set(triple.pairs()) - set(menus.pairs()))
    only_menu = sorted(set(menus.pairs()) - set(triple.pairs()))
    return {"only_in_triple_scan": only_triple, "only_in_menu_scan": only_menu}


def similarity_classes(reaction: BinaryRelation) -> TypePartition:
    """Connected components of the undirected reaction graph.

    Options linked by a reaction in either direction share a class;
    isolated options form singleton blocks.
    """
    n = reaction.ground.size
    undirected = [0] * n
    for i, row in enumerate(reaction.rows):
        undirected[i] |= row
        for j in iter_bits(row):
            undirected[j] |= 1 << i
    block_of = [-1] * n
    label = 0
    for start in range(n):
        if block_of[start] != -1:
            continue
        stack = [start]
        block_of[start] = label
        while stack:
            u = stack.pop()
            for v in iter_bits(undirected[u]):
                if block_of[v] == -1:
                    block_of[v] = label
                    stack.append(v)
        label += 1
    return TypePartition.from_block_of(reaction.ground, block_of)


def reveal(cf: ChoiceFunction) -> RevealedReport:
    """Full revealed-relations report for a choice function."""
    reaction, witness = reveal_reaction(cf)
    return RevealedReport(
        strict_pref=reveal_binary(cf),
        reaction=reaction,
        similarity_classes=similarity_classes(reaction),
        witness=witness,
    )
