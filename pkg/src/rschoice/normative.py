"""Welfare comparisons and the satisfied-freedom menu ranking.

The welfare-improving relation reads welfare off the canonical
(minimal) single-peaked structure: within a type the welfare order is
revealed directly; across types the comparison runs through options
strictly above their type thresholds, where the two orders agree.  Two
classic comparators are provided for contrast: the conservative criterion
(sometimes chosen over / never chosen against, Bernheim-Rangel style) and
the transitive closure of the limited-attention revealed preference
(Masatlioglu-Nakajima-Ozbay style).

Freedom is measured per type: a type's freedom is satisfied in a menu when
the menu contains an option strictly above the type threshold.  Menus are
ranked by the number of satisfied freedoms; the ranking is characterized
by a dominance and a composition axiom, both checkable with witnesses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .axioms import AxiomViolationError, AxiomVerdict, DEFAULT_VIOLATION_CAP, _Collector
from .core import ChoiceFunction, ChoiceModelError, GroundSet, iter_bits
from .revealed import BinaryRelation
from .structure import RSStructure, SinglePeakedCertificate, certify_single_peaked, minimal_structure


class NotSinglePeakedRSCError(ChoiceModelError):
    code = "not-single-peaked-rsc"


@dataclass(frozen=True)
class WelfareReport:
    """The three welfare relations plus a pairwise containment summary."""

    improving: BinaryRelation
    pstar: BinaryRelation
    pr: BinaryRelation
    comparisons: dict[str, dict]

    def to_json(self) -> str:
        doc = {
            "welfare_improving": [[a, b] for a, b in self.improving.pairs()],
            "pstar": [[a, b] for a, b in self.pstar.pairs()],
            "pr": [[a, b] for a, b in self.pr.pairs()],
            "comparisons": self.comparisons,
        }
        return json.dumps(doc, indent=2) + "\n"


def welfare_improving(
    cf: ChoiceFunction,
    transitive_closure: bool = False,
    welfare_tie_break=None,
) -> BinaryRelation:
    """Welfare-improving relation from the minimal single-peaked structure.

    x improves on y when either they share a type and x is welfare-better,
    or they differ in type, x sits strictly above its own threshold, and
    some option z of y's type sits strictly above that type's threshold
    with x reaction-better than z and z welfare-better than y.

    The direct two-clause relation is returned by default; pass
    ``transitive_closure=True`` to close it.  The relation only reads
    within-type welfare comparisons and the reaction order, so it is
    invariant to ``welfare_tie_break`` (exposed to let tests confirm that).
    """
    try:
        structure, certificate = minimal_structure(cf, welfare_tie_break=welfare_tie_break)
    except AxiomViolationError as exc:
        raise NotSinglePeakedRSCError(
            f"not a single-peaked restriction-sensitive choice: {exc}"
        ) from exc
    return improving_from_structure(structure, certificate, transitive_closure)


def improving_from_structure(
    structure: RSStructure,
    certificate: SinglePeakedCertificate,
    transitive_closure: bool = False,
) -> BinaryRelation:
    ground = structure.ground
    n = ground.size
    r1 = structure.welfare.ranks()
    r2 = structure.reaction_pref.ranks()
    block_of = structure.types.block_of()
    blocks = structure.types.blocks
    threshold_rank = {}
    for b, block in enumerate(blocks):
        threshold_rank[b] = r1[ground.index[certificate.thresholds[block]]]
    members_of = {b: [ground.index[name] for name in block] for b, block in enumerate(blocks)}

    rows = [0] * n
    for x in range(n):
        bx = block_of[x]
        for y in range(n):
            if x == y:
                continue
            by = block_of[y]
            if bx == by:
                if r1[x] < r1[y]:
                    rows[x] |= 1 << y
                continue
            if r1[x] >= threshold_rank[bx]:
                continue
            for z in members_of[by]:
                if r1[z] < threshold_rank[by] and r2[x] < r2[z] and r1[z] < r1[y]:
                    rows[x] |= 1 << y
                    break
    rel = BinaryRelation(ground, tuple(rows), strict=True)
    return rel.transitive_closure() if transitive_closure else rel


def bernheim_rangel_pstar(cf: ChoiceFunction) -> BinaryRelation:
    """x over y iff x is sometimes chosen with y feasible and y is never
    chosen with x feasible.  Asymmetric by construction."""
    ground = cf.ground
    n = ground.size
    chosen_against = [0] * n  # bit y: x chosen from some menu containing y
    for mask in range(1, ground.full_mask + 1):
        x = cf.choices[mask]
        chosen_against[x] |= mask & ~(1 << x)
    rows = [0] * n
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if (chosen_against[x] >> y) & 1 and not (chosen_against[y] >> x) & 1:
                rows[x] |= 1 << y
    return BinaryRelation(ground, tuple(rows), strict=True)


def masatlioglu_pr(cf: ChoiceFunction) -> BinaryRelation:
    """Transitive closure of: x over y iff removing y from some menu where
    x is chosen changes the choice."""
    ground = cf.ground
    n = ground.size
    rows = [0] * n
    for mask in range(1, ground.full_mask + 1):
        x = cf.choices[mask]
        for y in iter_bits(mask):
            if y == x:
                continue
            sub = mask ^ (1 << y)
            if sub and cf.choices[sub] != x:
                rows[x] |= 1 << y
    return BinaryRelation(ground, tuple(rows), strict=True).transitive_closure()


def _containment(name_a: str, rel_a: BinaryRelation, name_b: str, rel_b: BinaryRelation,
                 cap: int = DEFAULT_VIOLATION_CAP) -> dict:
    pa, pb = set(rel_a.pairs()), set(rel_b.pairs())
    return {
        f"{name_a}_minus_{name_b}": sorted(pa - pb)[:cap],
        f"{name_b}_minus_{name_a}": sorted(pb - pa)[:cap],
        f"{name_a}_subset_{name_b}": pa <= pb,
        f"{name_b}_subset_{name_a}": pb <= pa,
    }


def welfare_report(cf: ChoiceFunction, transitive_closure: bool = False) -> WelfareReport:
    improving = welfare_improving(cf, transitive_closure)
    pstar = bernheim_rangel_pstar(cf)
    pr = masatlioglu_pr(cf)
    return WelfareReport(
        improving=improving,
        pstar=pstar,
        pr=pr,
        comparisons={
            "improving_vs_pstar": _containment("improving", improving, "pstar", pstar),
            "improving_vs_pr": _containment("improving", improving, "pr", pr),
        },
    )


# ---------------------------------------------------------------------------
# Freedom: satisfied types and the counting ranking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreedomModel:
    """Structure, its certificate, and the per-type satisfied sets.

    ``satisfied_sets[T]`` lists the options of T strictly welfare-above the
    type threshold; a menu satisfies the freedom embodied by T when it
    meets that set.
    """

    structure: RSStructure
    certificate: SinglePeakedCertificate
    satisfied_sets: dict[tuple[str, ...], tuple[str, ...]]

    @property
    def ground(self) -> GroundSet:
        return self.structure.ground

    def satisfied_masks(self) -> tuple[int, ...]:
        ground = self.ground
        return tuple(
            ground.mask_of(self.satisfied_sets[block])
            for block in self.structure.types.blocks
        )


def freedom_model(structure: RSStructure,
                  certificate: SinglePeakedCertificate | None = None) -> FreedomModel:
    """Build the freedom model; the certificate must verify."""
    if certificate is None:
        certificate = certify_single_peaked(structure)
    if not certificate.verified:
        raise NotSinglePeakedRSCError("structure has no single-peaked certificate")
    ground = structure.ground
    r1 = structure.welfare.ranks()
    satisfied: dict[tuple[str, ...], tuple[str, ...]] = {}
    for block in structure.types.blocks:
        thr = r1[ground.index[certificate.thresholds[block]]]
        satisfied[block] = tuple(name for name in block if r1[ground.index[name]] < thr)
    return FreedomModel(structure, certificate, satisfied)


def freedom_model_from_choice(cf: ChoiceFunction) -> FreedomModel:
    try:
        structure, certificate = minimal_structure(cf)
    except AxiomViolationError as exc:
        raise NotSinglePeakedRSCError(
            f"not a single-peaked restriction-sensitive choice: {exc}"
        ) from exc
    return freedom_model(structure, certificate)


def _as_mask(ground: GroundSet, menu) -> int:
    return menu if isinstance(menu, int) else ground.mask_of(menu)


def freedom_count(model: FreedomModel, menu) -> int:
    """Number of types whose satisfied set meets the menu."""
    mask = _as_mask(model.ground, menu)
    return sum(1 for f in model.satisfied_masks() if f & mask)


def is_richer(model: FreedomModel, menu_a, menu_b) -> str:
    """'richer', 'strictly_richer' or 'not_richer'.

    A is richer than B when every type-freedom unsatisfied in A is also
    unsatisfied in B; strictly when B is not richer back.
    """
    a = _as_mask(model.ground, menu_a)
    b = _as_mask(model.ground, menu_b)
    sats = model.satisfied_masks()
    a_richer = all(f & b == 0 for f in sats if f & a == 0)
    if not a_richer:
        return "not_richer"
    b_richer = all(f & a == 0 for f in sats if f & b == 0)
    return "richer" if b_richer else "strictly_richer"


@dataclass(frozen=True)
class MenuPreference:
    """Complete transitive ranking of all nonempty menus.

    ``scores[mask]`` is the rank value of that menu; higher means more
    preferred, equal means indifferent.  Entry 0 is unused.
    """

    ground: GroundSet
    scores: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(self.scores))
        if len(self.scores) != (1 << self.ground.size):
            raise ValueError("scores must cover every menu mask")

    def prefers(self, menu_a, menu_b) -> bool:
        """Weakly prefers A to B."""
        return (
            self.scores[_as_mask(self.ground, menu_a)]
            >= self.scores[_as_mask(self.ground, menu_b)]
        )


def freedom_ranking(model: FreedomModel) -> MenuPreference:
    """Menus ranked by the number of satisfied freedoms."""
    ground = model.ground
    sats = model.satisfied_masks()
    scores = [0] * (1 << ground.size)
    for mask in range(1, ground.full_mask + 1):
        scores[mask] = sum(1 for f in sats if f & mask)
    return MenuPreference(ground, tuple(scores))


def _satisfaction_signature(model: FreedomModel) -> np.ndarray:
    """sig[mask] = bitmask over types whose satisfied set meets the menu."""
    ground = model.ground
    size = 1 << ground.size
    sig = np.zeros(size, dtype=np.int64)
    for t, f in enumerate(model.satisfied_masks()):
        if f == 0:
            continue
        masks = np.arange(size, dtype=np.int64)
        sig |= ((masks & f) != 0).astype(np.int64) << t
    return sig


def check_menu_axioms(
    model: FreedomModel,
    pref: MenuPreference,
    cap: int = DEFAULT_VIOLATION_CAP,
    sample_limit: int = 200_000,
    seed: int = 0,
) -> tuple[AxiomVerdict, AxiomVerdict]:
    """Check the dominance and composition axioms against a menu ranking.

    Dominance: (strictly) richer menus must be (strictly) weakly preferred,
    and a strict preference between singletons requires strict richness.
    Composition: merging disjoint within-type menus that add real freedom
    preserves the ranking.  Composition tuples are enumerated exhaustively
    up to five options; above that the (C, D) pair space is sampled
    deterministically from the given seed, up to ``sample_limit`` pairs.
    """
    ground = model.ground
    size = 1 << ground.size
    sig = _satisfaction_signature(model)
    scores = np.asarray(pref.scores, dtype=np.int64)
    masks = np.arange(size, dtype=np.int64)

    dom = _Collector(cap)
    # richer(A,B) <=> satisfied types of B form a subset of those of A
    for a in range(1, size):
        richer = (sig & ~sig[a]) == 0
        richer[0] = False
        weak_viol = richer & (scores[a] < scores)
        strict = richer & ((sig | sig[a]) != sig)  # B's types strictly inside A's
        strict_viol = strict & (scores[a] <= scores)
        for b in np.flatnonzero(weak_viol | strict_viol):
            kind = "strictly_richer" if strict_viol[b] else "richer"
            if not dom.add((ground.menu_key(a), ground.menu_key(int(b)), kind)):
                break
        if dom.truncated:
            break
    if not dom.truncated:
        for x in range(ground.size):
            for y in range(ground.size):
                if x == y:
                    continue
                a, b = 1 << x, 1 << y
                if scores[a] > scores[b] and not (sig[b] & ~sig[a] == 0 and sig[a] != sig[b]):
                    if not dom.add(
                        (ground.options[x], ground.options[y], "singleton")
                    ):
                        break
            if dom.truncated:
                break
    dominance = dom.verdict("R-Dominance")

    comp = _Collector(cap)
    within = [
        sub
        for tmask in model.structure.types.block_masks()
        for sub in _submasks(tmask)
    ]
    within.sort()
    pairs = [(c, d) for c in within for d in within]
    if len(pairs) > sample_limit:
        rng = np.random.default_rng(seed)
        keep = rng.choice(len(pairs), size=sample_limit, replace=False)
        pairs = [pairs[int(k)] for k in sorted(keep)]
    for c, d in pairs:
        if scores[c] < scores[d]:
            continue
        a_ok = ((masks & c) == 0) & ((sig[c] & ~sig) != 0)  # disjoint, not richer than C
        a_ok[0] = False
        b_ok = (masks & d) == 0
        b_ok[0] = False
        if not a_ok.any() or not b_ok.any():
            continue
        a_idx = np.flatnonzero(a_ok)
        b_idx = np.flatnonzero(b_ok)
        viol = (scores[a_idx][:, None] >= scores[b_idx][None, :]) & (
            scores[a_idx | c][:, None] < scores[b_idx | d][None, :]
        )
        if viol.any():
            for ai, bi in np.argwhere(viol):
                a, b = int(a_idx[ai]), int(b_idx[bi])
                if not comp.add(
                    (
                        ground.menu_key(a),
                        ground.menu_key(b),
                        ground.menu_key(c),
                        ground.menu_key(d),
                    )
                ):
                    break
            if comp.truncated:
                break
    composition = comp.verdict("R-Composition")
    return dominance, composition


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    return out


def freedom_table_csv(model: FreedomModel) -> str:
    """CSV of n(A) for every menu, ascending bit pattern."""
    lines = ["menu,n"]
    ground = model.ground
    sats = model.satisfied_masks()
    for mask in range(1, ground.full_mask + 1):
        n = sum(1 for f in sats if f & mask)
        lines.append(f"{ground.menu_key(mask)},{n}")
    return "\n".join(lines) + "\n"
