"""Axiom checkers over total choice functions.

Four behavioral axioms are decided with explicit violation witnesses:

* Expansion: chosen in A and in B implies chosen in A | B;
* No-Reaction Similarity (NRS): pairwise choice is transitive inside one
  similarity class;
* Independent Reaction (IR): reactions toward an option do not depend on
  which dissimilar options are feasible;
* Single-Peaked Reaction (SPR): the propensity to react grows monotonically
  as better same-class options disappear, up to a peak.

IIA is also available as plumbing.  Every verdict lists violations in a
deterministic smallest-index-first order, capped (default 16).
A transitive-shortlist evaluator (two-rationale sequential maximization)
generates the counterexample fixtures showing shortlist choice escapes
NRS and SPR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ChoiceFunction, ChoiceModelError, GroundSet, TypePartition, iter_bits
from .revealed import BinaryRelation, RevealedReport

DEFAULT_VIOLATION_CAP = 16


class AxiomViolationError(ChoiceModelError):
    """Raised by operations that require axiom-clean input."""

    code = "axiom-violation"

    def __init__(self, message: str, verdicts=None, **details):
        super().__init__(message, **details)
        self.verdicts = verdicts or []


class NotSingleValuedError(ChoiceModelError):
    code = "not-single-valued"


class InvalidRationaleError(ChoiceModelError):
    code = "invalid-rationale"


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one axiom check.

    ``violations`` holds witness tuples instantiating the axiom's
    quantifiers (option labels, or canonical menu keys for menu-level
    axioms).  ``holds`` is true iff no violation exists; ``truncated``
    flags that the cap cut the list short.
    """

    axiom: str
    holds: bool
    violations: tuple[tuple, ...] = field(default_factory=tuple)
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "violations": [list(v) for v in self.violations],
            "truncated": self.truncated,
        }


class _Collector:
    def __init__(self, cap: int):
        self.cap = cap
        self.items: list[tuple] = []
        self.truncated = False

    def add(self, item: tuple) -> bool:
        """Record a witness; returns False once the cap is reached."""
        if len(self.items) < self.cap:
            self.items.append(item)
            return True
        self.truncated = True
        return False

    def verdict(self, axiom: str) -> AxiomVerdict:
        return AxiomVerdict(axiom, not self.items, tuple(self.items), self.truncated)


def check_exp(cf: ChoiceFunction, cap: int = DEFAULT_VIOLATION_CAP) -> AxiomVerdict:
    """Expansion: x = c(A) = c(B) implies x = c(A | B).

    Only menu pairs sharing a chosen element are scanned (indexed by chosen
    option); pairs whose union equals one of them hold trivially.
    """
    ground = cf.ground
    choices = cf.choices
    by_chosen: list[list[int]] = [[] for _ in range(ground.size)]
    for mask in range(1, ground.full_mask + 1):
        by_chosen[choices[mask]].append(mask)
    out = _Collector(cap)
    for x, menus in enumerate(by_chosen):
        for ai in range(len(menus)):
            a = menus[ai]
            for bi in range(ai + 1, len(menus)):
                b = menus[bi]
                union = a | b
                if union == a or union == b:
                    continue
                got = choices[union]
                if got != x:
                    keep = out.add(
                        (
                            ground.menu_key(a),
                            ground.menu_key(b),
                            ground.options[x],
                            ground.options[got],
                        )
                    )
                    if not keep:
                        return out.verdict("Exp")
    return out.verdict("Exp")


def check_nrs(
    cf: ChoiceFunction, classes: TypePartition, cap: int = DEFAULT_VIOLATION_CAP
) -> AxiomVerdict:
    """NRS: within one similarity class, pairwise choice is transitive."""
    ground = cf.ground
    choices = cf.choices
    idx = ground.index
    out = _Collector(cap)
    for block in classes.blocks:
        members = [idx[name] for name in block]
        for x in members:
            for y in members:
                if y == x or choices[(1 << x) | (1 << y)] != x:
                    continue
                for z in members:
                    if z == x or z == y:
                        continue
                    if choices[(1 << y) | (1 << z)] != y:
                        continue
                    if choices[(1 << x) | (1 << z)] != x:
                        if not out.add(
                            (ground.options[x], ground.options[y], ground.options[z])
                        ):
                            return out.verdict("NRS")
    return out.verdict("NRS")


def check_ir(
    cf: ChoiceFunction, classes: TypePartition, cap: int = DEFAULT_VIOLATION_CAP
) -> AxiomVerdict:
    """IR: x = c{x,z}, z = c{y,z}, y = c{y,t} force x = c{x,t}.

    Scans quadruples with x, y similar and z, t outside their class.
    """
    ground = cf.ground
    choices = cf.choices
    n = ground.size
    block_of = classes.block_of()
    out = _Collector(cap)
    for x in range(n):
        bx = block_of[x]
        for y in range(n):
            if y == x or block_of[y] != bx:
                continue
            for z in range(n):
                if block_of[z] == bx:
                    continue
                if choices[(1 << x) | (1 << z)] != x:
                    continue
                if choices[(1 << y) | (1 << z)] != z:
                    continue
                for t in range(n):
                    if block_of[t] == bx:
                        continue
                    if choices[(1 << y) | (1 << t)] != y:
                        continue
                    if choices[(1 << x) | (1 << t)] != x:
                        if not out.add(
                            (
                                ground.options[x],
                                ground.options[y],
                                ground.options[z],
                                ground.options[t],
                            )
                        ):
                            return out.verdict("IR")
    return out.verdict("IR")


def check_spr(
    cf: ChoiceFunction, report: RevealedReport, cap: int = DEFAULT_VIOLATION_CAP
) -> AxiomVerdict:
    """SPR: along a within-class chain x over y over z with x reacting to
    something and z reacting to the absence of y, every dissimilar option u
    beaten by x must also be beaten by y.  Witness records the failing u.
    """
    ground = cf.ground
    choices = cf.choices
    n = ground.size
    classes = report.similarity_classes
    block_of = classes.block_of()
    reacts = [row != 0 for row in report.reaction.rows]
    reaction_rows = report.reaction.rows
    out = _Collector(cap)
    for block in classes.blocks:
        members = [ground.index[name] for name in block]
        if len(members) < 3:
            continue
        bx = block_of[members[0]]
        outside = [u for u in range(n) if block_of[u] != bx]
        for x in members:
            if not reacts[x]:
                continue
            for y in members:
                if y == x or choices[(1 << x) | (1 << y)] != x:
                    continue
                for z in members:
                    if z == x or z == y:
                        continue
                    if choices[(1 << y) | (1 << z)] != y:
                        continue
                    if not (reaction_rows[z] >> y) & 1:
                        continue
                    for u in outside:
                        if choices[(1 << x) | (1 << u)] != x:
                            continue
                        if choices[(1 << y) | (1 << u)] != y:
                            if not out.add(
                                (
                                    ground.options[x],
                                    ground.options[y],
                                    ground.options[z],
                                    ground.options[u],
                                )
                            ):
                                return out.verdict("SPR")
    return out.verdict("SPR")


def check_iia(cf: ChoiceFunction, cap: int = DEFAULT_VIOLATION_CAP) -> AxiomVerdict:
    """IIA: removing unchosen options never changes the choice."""
    ground = cf.ground
    choices = cf.choices
    out = _Collector(cap)
    for mask in range(1, ground.full_mask + 1):
        chosen = choices[mask]
        bit = 1 << chosen
        sub = (mask - 1) & mask
        while sub:
            if sub & bit and choices[sub] != chosen:
                if not out.add((ground.menu_key(mask), ground.menu_key(sub))):
                    return out.verdict("IIA")
            sub = (sub - 1) & mask
    return out.verdict("IIA")


def check_all(cf: ChoiceFunction, report: RevealedReport | None = None,
              cap: int = DEFAULT_VIOLATION_CAP) -> list[AxiomVerdict]:
    """All five verdicts (Exp, NRS, IR, SPR, IIA) in one pass."""
    from .revealed import reveal

    if report is None:
        report = reveal(cf)
    classes = report.similarity_classes
    return [
        check_exp(cf, cap),
        check_nrs(cf, classes, cap),
        check_ir(cf, classes, cap),
        check_spr(cf, report, cap),
        check_iia(cf, cap),
    ]


def passes_core_axioms(cf: ChoiceFunction, report: RevealedReport | None = None) -> bool:
    """True when Exp, NRS and IR all hold."""
    from .revealed import reveal

    if report is None:
        report = reveal(cf)
    classes = report.similarity_classes
    return (
        check_exp(cf, cap=1).holds
        and check_nrs(cf, classes, cap=1).holds
        and check_ir(cf, classes, cap=1).holds
    )


# ---------------------------------------------------------------------------
# Transitive shortlist choice (two-rationale sequential maximization)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TSMSpec:
    """Two strict partial orders applied in sequence.

    Pair lists are closed transitively on construction; a cycle in either
    rationale raises ``InvalidRationaleError``.
    """

    ground: GroundSet
    p1: tuple[tuple[str, str], ...]
    p2: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "p1", tuple(tuple(p) for p in self.p1))
        object.__setattr__(self, "p2", tuple(tuple(p) for p in self.p2))

    def _closed_rows(self, pairs: tuple[tuple[str, str], ...], name: str) -> tuple[int, ...]:
        idx = self.ground.index
        rows = [0] * self.ground.size
        for a, b in pairs:
            rows[idx[a]] |= 1 << idx[b]
        closed = BinaryRelation(self.ground, tuple(rows), strict=False).transitive_closure()
        for i, row in enumerate(closed.rows):
            if (row >> i) & 1:
                raise InvalidRationaleError(f"rationale {name} has a cycle through "
                                            f"{self.ground.options[i]!r}")
            for j in iter_bits(row):
                if (closed.rows[j] >> i) & 1:
                    raise InvalidRationaleError(
                        f"rationale {name} is not asymmetric on "
                        f"({self.ground.options[i]}, {self.ground.options[j]})"
                    )
        return closed.rows


def tsm_choice(spec: TSMSpec) -> ChoiceFunction:
    """Evaluate the shortlist method on every menu.

    Stage one keeps the options undominated under the first rationale;
    stage two keeps those undominated under the second.  Raises
    ``NotSingleValuedError`` if any menu's two-stage maximum is not a
    single option.
    """
    ground = spec.ground
    rows1 = spec._closed_rows(spec.p1, "P1")
    rows2 = spec._closed_rows(spec.p2, "P2")
    dominated1 = _dominators_table(rows1, ground.size)
    dominated2 = _dominators_table(rows2, ground.size)
    table = [-1] * (1 << ground.size)
    for mask in range(1, ground.full_mask + 1):
        shortlist = 0
        for x in iter_bits(mask):
            if not (dominated1[x] & mask):
                shortlist |= 1 << x
        final = 0
        for x in iter_bits(shortlist):
            if not (dominated2[x] & shortlist):
                final |= 1 << x
        if final == 0 or final & (final - 1):
            raise NotSingleValuedError(
                f"menu {ground.menu_key(mask)!r} has a two-stage maximum of "
                f"{bin(final).count('1')} options"
            )
        table[mask] = final.bit_length() - 1
    return ChoiceFunction(ground, tuple(table))


def _dominators_table(rows: tuple[int, ...], n: int) -> list[int]:
    """table[x] = bitmask of options that dominate x under the relation."""
    out = [0] * n
    for y, row in enumerate(rows):
        for x in iter_bits(row):
            out[x] |= 1 << y
    return out


def tsm_fixture_nrs_violation() -> TSMSpec:
    """Shortlist instance whose choice function breaks NRS.

    Five options; the top option of the second rationale reacts to the
    absence of three mutually similar options that cycle in binary choice.
    """
    ground = GroundSet(("x", "y", "z", "t", "u"))
    return TSMSpec(
        ground,
        p1=(("z", "x"), ("x", "t"), ("y", "t")),
        p2=(("t", "u"), ("u", "x"), ("x", "y"), ("y", "z")),
    )


def tsm_fixture_spr_violation() -> TSMSpec:
    """Shortlist instance whose choice function breaks SPR.

    Five options; reactions intensify down a within-class chain while an
    outside option separates the chain's top from its middle.
    """
    ground = GroundSet(("x", "y", "z", "a", "t"))
    return TSMSpec(
        ground,
        p1=(("t", "z"), ("z", "y"), ("y", "x")),
        p2=(("z", "x"), ("x", "a"), ("a", "t"), ("t", "y")),
    )
