"""Ground sets, menus, linear orders and total choice functions.

Menus over a ground set of ``n`` options are encoded as ``n``-bit integers:
bit ``i`` set means the option at ground-set position ``i`` is a member.
Everything downstream (revealed relations, axiom checks, structure
synthesis) consumes these values, so they are immutable and cheap to hash.

Canonical textual menu keys (for the JSON/CSV file formats) list the member
identifiers sorted by ground-set position, joined by ``,``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterator

MENU_KEY_SEPARATOR = ","

#: Largest ground set representable as an exhaustive menu map (2^n entries).
MAX_GROUND_SIZE = 24

#: Largest ground set for full choice-function enumeration (count is prod |A|).
MAX_ENUMERATION_SIZE = 4


class ChoiceModelError(Exception):
    """Base error; ``code`` is a stable machine-readable identifier."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class InvalidGroundSetError(ChoiceModelError):
    code = "invalid-ground-set"


class GroundSetTooLargeError(ChoiceModelError):
    code = "ground-set-too-large"


class MalformedKeyError(ChoiceModelError):
    code = "malformed-key"


class UnknownOptionError(ChoiceModelError):
    code = "unknown-option"


class DuplicateMenuError(ChoiceModelError):
    code = "duplicate-menu"


class MissingMenuError(ChoiceModelError):
    code = "missing-menu"


class ChoiceOutsideMenuError(ChoiceModelError):
    code = "choice-outside-menu"


@dataclass(frozen=True)
class GroundSet:
    """Ordered finite set of option identifiers.

    Identifiers must be unique, nonempty and free of the menu-key separator.
    The position of an option in ``options`` is its bit index in menu masks.
    """

    options: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        opts = tuple(self.options)
        object.__setattr__(self, "options", opts)
        if len(opts) < 2:
            raise InvalidGroundSetError("ground set needs at least 2 options")
        if len(opts) > MAX_GROUND_SIZE:
            raise GroundSetTooLargeError(
                f"ground set larger than the representation cap {MAX_GROUND_SIZE}"
            )
        seen = {}
        for pos, name in enumerate(opts):
            if not isinstance(name, str) or not name:
                raise InvalidGroundSetError(f"empty or non-string option at position {pos}")
            if MENU_KEY_SEPARATOR in name:
                raise InvalidGroundSetError(
                    f"option {name!r} contains the menu-key separator {MENU_KEY_SEPARATOR!r}"
                )
            if name in seen:
                raise InvalidGroundSetError(f"duplicate option {name!r}")
            seen[name] = pos
        object.__setattr__(self, "index", seen)

    @property
    def size(self) -> int:
        return len(self.options)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.options)) - 1

    def mask_of(self, members) -> int:
        """Bit pattern for an iterable of option identifiers."""
        mask = 0
        for name in members:
            pos = self.index.get(name)
            if pos is None:
                raise UnknownOptionError(f"unknown option {name!r}")
            mask |= 1 << pos
        return mask

    def members(self, mask: int) -> tuple[str, ...]:
        """Option identifiers in a menu mask, in ground-set order."""
        return tuple(self.options[i] for i in iter_bits(mask))

    def menu_key(self, mask: int) -> str:
        return MENU_KEY_SEPARATOR.join(self.members(mask))

    def parse_menu_key(self, key: str) -> int:
        parts = key.split(MENU_KEY_SEPARATOR)
        if not parts or any(p == "" for p in parts):
            raise MalformedKeyError(f"malformed menu key {key!r}")
        mask = self.mask_of(parts)
        if bin(mask).count("1") != len(parts):
            raise MalformedKeyError(f"menu key {key!r} repeats an option")
        return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def enumerate_menus(ground: GroundSet) -> Iterator[int]:
    """All 2^n - 1 nonempty menus, ascending bit pattern."""
    return iter(range(1, ground.full_mask + 1))


@dataclass(frozen=True)
class LinearOrder:
    """Strict total order over the ground set, stored best-first.

    The permutation encoding is complete, transitive and antisymmetric by
    construction.
    """

    ground: GroundSet
    ranking: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if sorted(self.ranking) != sorted(self.ground.options):
            raise InvalidGroundSetError("ranking must be a permutation of the ground set")

    def ranks(self) -> list[int]:
        """rank_by_position[i] = rank of option at ground position i (0 = best)."""
        out = [0] * self.ground.size
        for rank, name in enumerate(self.ranking):
            out[self.ground.index[name]] = rank
        return out

    def prefers(self, a: str, b: str) -> bool:
        """Strictly prefers ``a`` over ``b``."""
        r = self.ranks()
        return r[self.ground.index[a]] < r[self.ground.index[b]]

    def best_of(self, mask: int) -> int:
        """Ground position of the best member of a menu mask."""
        r = self.ranks()
        return min(iter_bits(mask), key=lambda i: r[i])


@dataclass(frozen=True)
class TypePartition:
    """Disjoint option blocks covering the ground set.

    Blocks are canonically ordered by their smallest ground position, and
    each block lists members in ground order.
    """

    ground: GroundSet
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        masks = []
        union = 0
        for block in self.blocks:
            if not block:
                raise InvalidGroundSetError("empty partition block")
            mask = self.ground.mask_of(block)
            if mask & union:
                raise InvalidGroundSetError("partition blocks overlap")
            union |= mask
            masks.append(mask)
        if union != self.ground.full_mask:
            raise InvalidGroundSetError("partition blocks do not cover the ground set")
        order = sorted(range(len(masks)), key=lambda k: masks[k] & -masks[k])
        canon = tuple(self.ground.members(masks[k]) for k in order)
        object.__setattr__(self, "blocks", canon)

    def block_masks(self) -> tuple[int, ...]:
        return tuple(self.ground.mask_of(b) for b in self.blocks)

    def block_of(self) -> list[int]:
        """out[i] = block index of the option at ground position i."""
        out = [0] * self.ground.size
        for b, block in enumerate(self.blocks):
            for name in block:
                out[self.ground.index[name]] = b
        return out

    @classmethod
    def from_block_of(cls, ground: GroundSet, block_of: list[int]) -> "TypePartition":
        groups: dict[int, list[str]] = {}
        for pos, b in enumerate(block_of):
            groups.setdefault(b, []).append(ground.options[pos])
        return cls(ground, tuple(tuple(g) for g in groups.values()))


@dataclass(frozen=True)
class ChoiceFunction:
    """Total map from every nonempty menu to a member option.

    ``choices[mask]`` is the ground position of the chosen option;
    entry 0 is unused (-1).
    """

    ground: GroundSet
    choices: tuple[int, ...]

    def __post_init__(self):
        choices = tuple(self.choices)
        object.__setattr__(self, "choices", choices)
        n_entries = (1 << self.ground.size)
        if len(choices) != n_entries:
            raise MissingMenuError(
                f"choice table has {len(choices)} entries, expected {n_entries}"
            )
        for mask in range(1, n_entries):
            pick = choices[mask]
            if not (mask >> pick) & 1:
                raise ChoiceOutsideMenuError(
                    f"chosen option {self.ground.options[pick]!r} is outside menu "
                    f"{self.ground.menu_key(mask)!r}"
                )

    def choose(self, members) -> str:
        """Chosen option label for a menu given as identifiers."""
        mask = self.ground.mask_of(members)
        if mask == 0:
            raise MalformedKeyError("empty menu")
        return self.ground.options[self.choices[mask]]

    @classmethod
    def from_assignment(cls, ground: GroundSet, assignment: dict[int, int]) -> "ChoiceFunction":
        table = [-1] * (1 << ground.size)
        for mask in range(1, 1 << ground.size):
            if mask not in assignment:
                raise MissingMenuError(f"menu {ground.menu_key(mask)!r} has no entry")
            table[mask] = assignment[mask]
        return cls(ground, tuple(table))


def choice_from_order(order: LinearOrder) -> ChoiceFunction:
    """Choice by maximization of a single linear order (satisfies IIA)."""
    ground = order.ground
    r = order.ranks()
    table = [-1] * (1 << ground.size)
    for mask in range(1, 1 << ground.size):
        table[mask] = min(iter_bits(mask), key=lambda i: r[i])
    return ChoiceFunction(ground, tuple(table))


def enumerate_choice_functions(ground: GroundSet) -> Iterator[ChoiceFunction]:
    """Every total choice function, exactly once, in a deterministic order.

    The stream walks an odometer over menus in ascending-mask order, the
    digit for each menu running over its members in ascending position.
    Guarded: the count is prod_A |A|, so only |X| <= 4 is allowed.
    """
    if ground.size > MAX_ENUMERATION_SIZE:
        raise GroundSetTooLargeError(
            f"full enumeration capped at |X| <= {MAX_ENUMERATION_SIZE}"
        )
    masks = [m for m in range(1, ground.full_mask + 1)]
    members = [list(iter_bits(m)) for m in masks]
    digits = [0] * len(masks)
    size = 1 << ground.size
    while True:
        table = [-1] * size
        for k, m in enumerate(masks):
            table[m] = members[k][digits[k]]
        yield ChoiceFunction(ground, tuple(table))
        k = len(masks) - 1
        while k >= 0:
            digits[k] += 1
            if digits[k] < len(members[k]):
                break
            digits[k] = 0
            k -= 1
        if k < 0:
            return


# ---------------------------------------------------------------------------
# Serialization: JSON and CSV file formats
# ---------------------------------------------------------------------------


def _reject_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise DuplicateMenuError(f"duplicate menu key {key!r}")
        seen.add(key)
    return dict(pairs)


def _function_from_entries(ground: GroundSet, entries: list[tuple[str, str]]) -> ChoiceFunction:
    assignment: dict[int, int] = {}
    for key, chosen in entries:
        mask = ground.parse_menu_key(key)
        if mask in assignment:
            raise DuplicateMenuError(f"duplicate menu key {key!r}")
        pos = ground.index.get(chosen)
        if pos is None:
            raise UnknownOptionError(f"unknown option {chosen!r} chosen from {key!r}")
        if not (mask >> pos) & 1:
            raise ChoiceOutsideMenuError(f"choice {chosen!r} is outside menu {key!r}")
        assignment[mask] = pos
    return ChoiceFunction.from_assignment(ground, assignment)


def parse_choice_function(text: bytes | str, format: str = "json") -> ChoiceFunction:
    """Parse and validate a choice function from JSON or CSV bytes."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if format == "json":
        try:
            doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
        except json.JSONDecodeError as exc:
            raise MalformedKeyError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "options" not in doc or "choices" not in doc:
            raise MalformedKeyError("expected an object with 'options' and 'choices'")
        ground = GroundSet(tuple(doc["options"]))
        entries = list(doc["choices"].items())
    elif format == "csv":
        reader = csv.reader(io.StringIO(text))
        rows = [row for row in reader if row]
        if not rows or [c.strip() for c in rows[0]] != ["menu", "choice"]:
            raise MalformedKeyError("CSV must start with header 'menu,choice'")
        body = rows[1:]
        options: list[str] = []
        seen = set()
        for row in body:
            if len(row) != 2:
                raise MalformedKeyError(f"CSV row {row!r} does not have 2 fields")
            for name in row[0].split(MENU_KEY_SEPARATOR):
                if name not in seen:
                    seen.add(name)
                    options.append(name)
        ground = GroundSet(tuple(options))
        entries = [(row[0], row[1]) for row in body]
    else:
        raise MalformedKeyError(f"unknown format {format!r}")
    return _function_from_entries(ground, entries)


def serialize_choice_function(cf: ChoiceFunction, format: str = "json") -> str:
    """Canonical textual form; menus in ascending bit-pattern order."""
    ground = cf.ground
    items = [
        (ground.menu_key(mask), ground.options[cf.choices[mask]])
        for mask in enumerate_menus(ground)
    ]
    if format == "json":
        doc = {"options": list(ground.options), "choices": dict(items)}
        return json.dumps(doc, indent=2) + "\n"
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["menu", "choice"])
        writer.writerows(items)
        return out.getvalue()
    raise MalformedKeyError(f"unknown format {format!r}")


def parse_structure_json(text: bytes | str):
    """Parse the RS-structure JSON file format.

    ``{"types": [["a1","a2"],["b1"]], "welfare": [...], "reaction": [...]}``
    with both orders listed best-first.  Returns an ``RSStructure``.
    """
    from .structure import RSStructure

    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedKeyError(f"invalid JSON: {exc}") from exc
    for key in ("types", "welfare", "reaction"):
        if key not in doc:
            raise MalformedKeyError(f"structure JSON missing {key!r}")
    ground = GroundSet(tuple(doc["welfare"]))
    return RSStructure(
        ground=ground,
        types=TypePartition(ground, tuple(tuple(b) for b in doc["types"])),
        welfare=LinearOrder(ground, tuple(doc["welfare"])),
        reaction_pref=LinearOrder(ground, tuple(doc["reaction"])),
    )


def serialize_structure_json(structure) -> str:
    doc = {
        "types": [list(b) for b in structure.types.blocks],
        "welfare": list(structure.welfare.ranking),
        "reaction": list(structure.reaction_pref.ranking),
    }
    return json.dumps(doc, indent=2) + "\n"
