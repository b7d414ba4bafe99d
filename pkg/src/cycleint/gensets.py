"""Generating sets for permutation families and the counting machinery on them.

A set system g generates a family F when no member has cardinality n-1 and the
union of up-permutation sets U_p(B) = {sigma : B subseteq fix(sigma)} over
B in g equals F. The left-shift closure followed by inclusion-minimal
selection turns any generating set into a left-compressed, inclusion-minimal
one; on such systems the family decomposes as a disjoint union of
prefix-fix-pattern classes whose sizes have an exact inclusion-exclusion
formula. The surgery operation rebuilds a generating set by deleting its
top size classes, which is how candidate families larger than the original
are produced.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from . import config, report
from .intersect import (PermFamily, is_family_t_cycle_intersecting, is_maximal)
from .perm import Permutation, all_permutations
from .report import CheckResult


class SetSystem:
    """Distinct subsets of [n], each stored sorted, ordered lexicographically.

    Each member also carries a bitmask mirror, which is what the subset and
    intersection scans operate on.
    """

    __slots__ = ("n", "sets", "masks", "_mask_set")

    def __init__(self, n: int, sets: Iterable[Iterable[int]] = ()):
        if n < 1:
            raise ValueError("ground-set size must be at least 1")
        normalized = set()
        for s in sets:
            member = tuple(sorted(set(int(x) for x in s)))
            for x in member:
                if not 1 <= x <= n:
                    raise ValueError(f"element {x} out of range [1, {n}]")
            normalized.add(member)
        self.n = n
        self.sets = tuple(sorted(normalized))
        self.masks = tuple(sum(1 << (x - 1) for x in s) for s in self.sets)
        self._mask_set = frozenset(self.masks)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SetSystem":
        if not isinstance(data, dict) or "n" not in data or "sets" not in data:
            raise ValueError('set-system JSON must be an object with "n" and "sets"')
        try:
            return cls(int(data["n"]), data["sets"])
        except (ValueError, TypeError) as exc:
            raise ValueError(f"sets: {exc}") from None

    def to_json_dict(self) -> dict:
        return {"n": self.n, "sets": [list(s) for s in self.sets]}

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.sets)

    def __contains__(self, member: Iterable[int]) -> bool:
        mask = 0
        for x in set(member):
            x = int(x)
            if not 1 <= x <= self.n:
                return False
            mask |= 1 << (x - 1)
        return mask in self._mask_set

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SetSystem)
                and self.n == other.n and self.sets == other.sets)

    def __hash__(self) -> int:
        return hash((self.n, self.sets))

    def __repr__(self) -> str:
        return f"SetSystem(n={self.n}, size={len(self.sets)})"

    def union(self, other: "SetSystem") -> "SetSystem":
        if self.n != other.n:
            raise ValueError("ground-set size mismatch")
        return SetSystem(self.n, self.sets + other.sets)

    def difference(self, other: "SetSystem") -> "SetSystem":
        if self.n != other.n:
            raise ValueError("ground-set size mismatch")
        return SetSystem(self.n, (s for s in self.sets if s not in other))


def up_permutations(points: Iterable[int], n: int) -> PermFamily:
    """All degree-n permutations fixing every listed point; size (n - |B|)!."""
    fixed = sorted(set(int(x) for x in points))
    for x in fixed:
        if not 1 <= x <= n:
            raise ValueError(f"point {x} out of range [1, {n}]")
    movable = [x for x in range(1, n + 1) if x not in set(fixed)]
    perms = []
    for arrangement in itertools.permutations(movable):
        image = list(range(1, n + 1))
        for slot, value in zip(movable, arrangement):
            image[slot - 1] = value
        perms.append(Permutation(image))
    return PermFamily(n, perms)


def up_permutations_system(system: SetSystem) -> PermFamily:
    """Union of the up-permutation sets of all members, deduplicated."""
    acc: set[Permutation] = set()
    for member in system:
        acc.update(up_permutations(member, system.n))
    return PermFamily(system.n, acc)


def is_generating_set(system: SetSystem, family: PermFamily) -> bool:
    """No member of cardinality n-1, and the up-permutations union to the family."""
    if system.n != family.n:
        return False
    if any(len(s) == system.n - 1 for s in system):
        return False
    return up_permutations_system(system) == family


def fix_system(family: PermFamily) -> SetSystem:
    """The set system of the members' fixed-point sets, deduplicated."""
    return SetSystem(family.n, (p.fixed_points() for p in family))


def left_shift_set(points: Iterable[int], n: int) -> SetSystem:
    """All same-size sets obtainable by componentwise decreasing the sorted
    elements; always includes the input set itself."""
    member = sorted(set(int(x) for x in points))
    for x in member:
        if not 1 <= x <= n:
            raise ValueError(f"element {x} out of range [1, {n}]")
    shifts: list[tuple[int, ...]] = []

    def extend(idx: int, prev: int, chosen: list[int]) -> None:
        if idx == len(member):
            shifts.append(tuple(chosen))
            return
        for a in range(prev + 1, member[idx] + 1):
            chosen.append(a)
            extend(idx + 1, a, chosen)
            chosen.pop()

    extend(0, 0, [])
    return SetSystem(n, shifts)


def left_shift_system(system: SetSystem) -> SetSystem:
    out: list[tuple[int, ...]] = []
    for member in system:
        out.extend(left_shift_set(member, system.n).sets)
    return SetSystem(system.n, out)


def is_left_compressed(system: SetSystem) -> bool:
    return left_shift_system(system) == system


def minimal_elements(system: SetSystem) -> SetSystem:
    """Members with no proper subset also in the system."""
    masks = system.masks
    keep = []
    for s, m in zip(system.sets, masks):
        if not any(other != m and other & m == other for other in masks):
            keep.append(s)
    return SetSystem(system.n, keep)


def left_shift_minimals(system: SetSystem) -> SetSystem:
    """Inclusion-minimal elements of the left-shift closure.

    Idempotent, so the result is both left-compressed and inclusion-minimal;
    on generating sets of maximal fixed compressed families it stays a
    generating set and never increases the largest element used.
    """
    return minimal_elements(left_shift_system(system))


def max_element(points: Iterable[int]) -> int:
    member = tuple(points)
    if not member:
        raise ValueError("empty set has no largest element")
    return max(member)


def system_max_element(system: SetSystem) -> int:
    if not system.sets:
        raise ValueError("empty system has no largest element")
    return max(max_element(s) for s in system)


def derive_star_generating_set(family: PermFamily) -> SetSystem:
    """The left-compressed inclusion-minimal system derived from Fix(family)."""
    return left_shift_minimals(fix_system(family))


@dataclass(frozen=True)
class GeneratingSetCertificate:
    """Shape summary of a derived generating set."""

    system: SetSystem
    family_size: int
    max_element: int
    is_left_compressed: bool
    is_inclusion_minimal: bool

    def to_json_dict(self) -> dict:
        return {
            "system": self.system.to_json_dict(),
            "family_size": self.family_size,
            "max_element": self.max_element,
            "is_left_compressed": self.is_left_compressed,
            "is_inclusion_minimal": self.is_inclusion_minimal,
        }


def certify_generating_set(family: PermFamily) -> GeneratingSetCertificate:
    if not family.members:
        raise ValueError("cannot certify the empty family")
    system = derive_star_generating_set(family)
    if any(len(s) == system.n - 1 for s in system):
        raise ValueError("derived system contains a set of cardinality n-1")
    return GeneratingSetCertificate(
        system=system,
        family_size=len(family),
        max_element=system_max_element(system),
        is_left_compressed=is_left_compressed(system),
        is_inclusion_minimal=minimal_elements(system) == system,
    )


# ---------------------------------------------------------------------------
# Prefix-fix-pattern classes and their exact counts.
# ---------------------------------------------------------------------------

def _pattern_count(n: int, pattern_size: int, window: int) -> int:
    """Permutations of [n] fixing a given pattern_size-set inside the window
    [1..window] and no other window point: inclusion-exclusion over the
    window points excluded from the pattern. Exact integer arithmetic."""
    free = window - pattern_size
    return sum((-1) ** j * math.comb(free, j) * math.factorial(n - pattern_size - j)
               for j in range(free + 1))


def fix_prefix_count(n: int, size: int, top: int) -> int:
    """Size of a prefix-fix class from its parameters alone.

    ``size`` is the pattern cardinality and ``top`` its largest element; the
    count is of permutations whose fixed points within [1..top] are exactly
    the pattern.
    """
    if size < 1:
        raise ValueError("pattern size must be at least 1")
    if not size <= top <= n:
        raise ValueError(f"need size <= top <= n, got ({size}, {top}, {n})")
    return _pattern_count(n, size, top)


def fix_prefix_family(points: Iterable[int], n: int,
                      cap: int | None = None) -> PermFamily:
    """Permutations whose fixed points within [1..max(points)] equal the set."""
    member = tuple(sorted(set(int(x) for x in points)))
    if not member:
        raise ValueError("pattern must be nonempty")
    if not 1 <= member[-1] <= n:
        raise ValueError(f"pattern not contained in [1, {n}]")
    limit = config.enumeration_cap(cap)
    if n > limit:
        raise ValueError(f"degree {n} exceeds enumeration cap {limit}")
    top = member[-1]
    prefix = frozenset(range(1, top + 1))
    wanted = frozenset(member)
    return PermFamily(n, (p for p in all_permutations(n)
                          if frozenset(p.fixed_points()) & prefix == wanted))


def fix_prefix_size(points: Iterable[int], n: int, mode: str = "auto",
                    cap: int | None = None) -> int:
    """|fix_prefix_family| by enumeration, formula, or both ("check" mode)."""
    member = tuple(sorted(set(int(x) for x in points)))
    if not member:
        raise ValueError("pattern must be nonempty")
    by_formula = fix_prefix_count(n, len(member), member[-1])
    if mode == "formula":
        return by_formula
    if mode == "auto" and n > config.enumeration_cap(cap):
        return by_formula
    by_enum = len(fix_prefix_family(member, n, cap))
    if mode == "check" and by_enum != by_formula:
        raise AssertionError(
            f"count mismatch for pattern {member}, n={n}: "
            f"enumerated {by_enum}, formula {by_formula}")
    return by_enum


def reduced_fix_prefix_family(points: Iterable[int], n: int,
                              cap: int | None = None) -> PermFamily:
    """Drop the largest pattern element and shrink the window by one.

    The result always contains the original prefix-fix class, plus for every
    member and every movable point the transposition pulling the old top
    element out; hence its size is at least (n - |pattern| + 1) times the
    original class size. The excess is strict whenever the pattern has a gap
    below its top element, except in the one shape where the witness would
    need a permutation fixing exactly n-1 points: |pattern| = n-2 with
    top = n.
    """
    member = tuple(sorted(set(int(x) for x in points)))
    if not member:
        raise ValueError("pattern must be nonempty")
    if not 1 <= member[-1] <= n:
        raise ValueError(f"pattern not contained in [1, {n}]")
    limit = config.enumeration_cap(cap)
    if n > limit:
        raise ValueError(f"degree {n} exceeds enumeration cap {limit}")
    top = member[-1]
    reduced = frozenset(member) - {top}
    prefix = frozenset(range(1, top))
    return PermFamily(n, (p for p in all_permutations(n)
                          if frozenset(p.fixed_points()) & prefix == reduced))


def reduced_fix_prefix_size(points: Iterable[int], n: int) -> int:
    """Formula-mode size of the reduced class (pattern minus top, window - 1)."""
    member = tuple(sorted(set(int(x) for x in points)))
    if not member:
        raise ValueError("pattern must be nonempty")
    return _pattern_count(n, len(member) - 1, member[-1] - 1)


# ---------------------------------------------------------------------------
# Structure checks on generating sets.
# ---------------------------------------------------------------------------

def is_t_intersecting_system(system: SetSystem, t: int) -> bool:
    """Every two distinct members share at least t elements."""
    masks = system.masks
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if (masks[i] & masks[j]).bit_count() < t:
                return False
    return True


def _decompose(family: PermFamily, system: SetSystem,
               cap: int | None = None):
    classes = {}
    for member in system:
        if not member:
            raise ValueError("decomposition pattern must be nonempty")
        classes[member] = set(fix_prefix_family(member, family.n, cap).members)
    return classes


def is_disjoint_union(family: PermFamily, system: SetSystem,
                      cap: int | None = None) -> CheckResult:
    """Do the prefix-fix classes of the members partition the family?"""
    classes = _decompose(family, system, cap)
    members = list(classes.items())
    for (e1, c1), (e2, c2) in itertools.combinations(members, 2):
        overlap = c1 & c2
        if overlap:
            witness = {"sets": [list(e1), list(e2)],
                       "perm": list(min(overlap).image)}
            return report.failed(witness, "classes overlap")
    union: set[Permutation] = set()
    for c in classes.values():
        union |= c
    if union != set(family.members):
        missing = sorted(set(family.members) - union)
        extra = sorted(union - set(family.members))
        witness = {"missing": [list(p.image) for p in missing[:3]],
                   "extra": [list(p.image) for p in extra[:3]]}
        return report.failed(witness, "union differs from family")
    return report.passed()


def disjoint_union_check(family: PermFamily, system: SetSystem | None = None,
                         t: int | None = None,
                         cap: int | None = None) -> CheckResult:
    """Hypothesis-gated partition check.

    Validates what it can before asserting the conclusion: the system (derived
    from Fix(family) when not supplied) must be left-compressed,
    inclusion-minimal, and generating; when t is supplied the family must be
    t-cycle-intersecting and maximal as well. Unmet hypotheses are reported
    distinctly from a failed partition.
    """
    from .transform import is_compressed_family, is_fixed_family

    if not family.members:
        return report.hypothesis_not_met(detail="empty family")
    if system is None:
        system = derive_star_generating_set(family)
    if any(not s for s in system):
        return report.hypothesis_not_met(detail="system contains the empty set")
    if left_shift_minimals(system) != system:
        return report.hypothesis_not_met(
            detail="system is not left-compressed inclusion-minimal")
    if not is_generating_set(system, family):
        return report.hypothesis_not_met(detail="system does not generate the family")
    if not is_fixed_family(family):
        return report.hypothesis_not_met(detail="family is not fixed")
    if not is_compressed_family(family):
        return report.hypothesis_not_met(detail="family is not compressed")
    if t is not None:
        if not is_family_t_cycle_intersecting(family, t):
            return report.hypothesis_not_met(detail=f"family is not {t}-cycle-intersecting")
        if not is_maximal(family, t, cap):
            return report.hypothesis_not_met(detail="family is not maximal")
    return is_disjoint_union(family, system, cap)


def check_pair_overlap_t_plus_one(system: SetSystem, t: int) -> CheckResult:
    """On a left-compressed inclusion-minimal system, any two members (not
    necessarily distinct) admitting i < j with i outside both and j inside
    both must share at least t+1 elements."""
    n = system.n
    if n <= t + 1:
        return report.hypothesis_not_met(detail=f"needs n > t+1, got n={n}, t={t}")
    if left_shift_minimals(system) != system:
        return report.hypothesis_not_met(
            detail="system is not left-compressed inclusion-minimal")
    full = (1 << n) - 1
    masks = system.masks
    for a in range(len(masks)):
        for b in range(a, len(masks)):
            union = masks[a] | masks[b]
            inter = masks[a] & masks[b]
            if not inter:
                continue
            outside = full & ~union
            j_top = inter.bit_length()  # largest element of the intersection
            qualifies = bool(outside & ((1 << (j_top - 1)) - 1))
            if qualifies and inter.bit_count() < t + 1:
                witness = {"sets": [list(system.sets[a]), list(system.sets[b])],
                           "intersection_size": inter.bit_count()}
                return report.failed(witness, "intersection below t+1")
    return report.passed()


# ---------------------------------------------------------------------------
# Partition by largest element and the generating-set surgery.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TopPartition:
    """Split of a system by whether a member attains the overall largest element."""

    delta: int                       # overall largest element minus t
    top: SetSystem                   # members attaining the largest element
    rest: SetSystem
    size_classes: dict[int, SetSystem] = field(compare=False, default_factory=dict)
    in_open_range: bool = True       # nonempty classes have t < size < t + delta


def partition_by_max_element(system: SetSystem, t: int) -> TopPartition:
    """Partition members by attainment of the largest element, then the
    attaining ones by cardinality. Rejects systems whose largest element is
    already t: there is nothing to take apart."""
    s_plus = system_max_element(system)
    delta = s_plus - t
    if delta <= 0:
        raise ValueError(f"largest element {s_plus} does not exceed t={t}")
    top_sets = [s for s in system if max(s) == s_plus]
    rest_sets = [s for s in system if max(s) != s_plus]
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for s in top_sets:
        by_size.setdefault(len(s), []).append(s)
    size_classes = {size: SetSystem(system.n, members)
                    for size, members in sorted(by_size.items())}
    in_range = all(t < size < t + delta for size in size_classes)
    return TopPartition(delta=delta,
                        top=SetSystem(system.n, top_sets),
                        rest=SetSystem(system.n, rest_sets),
                        size_classes=size_classes,
                        in_open_range=in_range)


@dataclass
class SurgeryReport:
    """Outcome of one surgery attempt on a size class of the top partition.

    Case 1 (paired classes, i != 2t + delta - i) removes the class of size i
    together with its partner class and re-adds one of them with the largest
    element deleted, producing two candidate systems. Case 2 (the middle
    class) keeps only the subsets avoiding a pigeonhole-chosen element after
    deleting the largest element, producing a single candidate.
    """

    case: int
    n: int
    t: int
    delta: int
    size_class: int
    base_size: int
    candidates: dict[str, SetSystem]
    candidate_t_intersecting: dict[str, bool]
    candidate_sizes: dict[str, int]
    best_size: int
    strict_gain: bool
    pivot: int | None = None
    survivors: SetSystem | None = None
    pigeonhole_ok: bool | None = None

    def to_json_dict(self) -> dict:
        d = {
            "case": self.case, "n": self.n, "t": self.t, "delta": self.delta,
            "size_class": self.size_class, "base_size": self.base_size,
            "candidates": {k: v.to_json_dict() for k, v in self.candidates.items()},
            "candidate_t_intersecting": self.candidate_t_intersecting,
            "candidate_sizes": self.candidate_sizes,
            "best_size": self.best_size, "strict_gain": self.strict_gain,
        }
        if self.case == 2:
            d["pivot"] = self.pivot
            d["survivors"] = self.survivors.to_json_dict() if self.survivors else None
            d["pigeonhole_ok"] = self.pigeonhole_ok
        return d


def _drop_top(system: SetSystem, top: int) -> SetSystem:
    return SetSystem(system.n, (tuple(x for x in s if x != top) for s in system))


def generating_set_surgery(system: SetSystem, t: int, size_class: int,
                           cap: int | None = None) -> SurgeryReport:
    """Rebuild the system around one size class of its top partition and
    report whether the up-permutation family strictly grows."""
    limit = config.enumeration_cap(cap)
    if system.n > limit:
        raise ValueError(f"degree {system.n} exceeds enumeration cap {limit}")
    partition = partition_by_max_element(system, t)
    delta = partition.delta
    s_plus = t + delta
    i = size_class
    if i not in partition.size_classes:
        raise ValueError(f"size class {i} is empty")
    r_i = partition.size_classes[i]
    base_size = len(up_permutations_system(system))
    partner = 2 * t + delta - i

    if i != partner:
        r_partner = partition.size_classes.get(partner, SetSystem(system.n))
        trimmed = system.difference(r_i).difference(r_partner)
        f1 = trimmed.union(_drop_top(r_i, s_plus))
        f2 = trimmed.union(_drop_top(r_partner, s_plus))
        candidates = {"f1": f1, "f2": f2}
        sizes = {k: len(up_permutations_system(v)) for k, v in candidates.items()}
        best = max(sizes.values())
        return SurgeryReport(
            case=1, n=system.n, t=t, delta=delta, size_class=i,
            base_size=base_size, candidates=candidates,
            candidate_t_intersecting={k: is_t_intersecting_system(v, t)
                                      for k, v in candidates.items()},
            candidate_sizes=sizes, best_size=best,
            strict_gain=best > base_size)

    # Middle class: i = t + delta/2, so delta is even. Choose the element of
    # [t+delta-1] hitting the most complements (smallest index on ties); the
    # members avoiding it survive with the top element dropped.
    reduced = _drop_top(r_i, s_plus)
    universe = range(1, s_plus)
    frequency = {a: sum(1 for s in reduced if a not in s) for a in universe}
    pivot = max(universe, key=lambda a: (frequency[a], -a))
    survivors = SetSystem(system.n, (s for s in reduced if pivot not in s))
    # Pigeonhole guarantee: |T'| >= |R_i| * (delta/2) / (t + delta - 1).
    pigeon_ok = len(survivors) >= Fraction(len(r_i) * delta, 2 * (s_plus - 1))
    f_prime = system.difference(r_i).union(survivors)
    size = len(up_permutations_system(f_prime))
    return SurgeryReport(
        case=2, n=system.n, t=t, delta=delta, size_class=i,
        base_size=base_size, candidates={"f_prime": f_prime},
        candidate_t_intersecting={"f_prime": is_t_intersecting_system(f_prime, t)},
        candidate_sizes={"f_prime": size}, best_size=size,
        strict_gain=size > base_size,
        pivot=pivot, survivors=survivors, pigeonhole_ok=pigeon_ok)
