"""t-cycle-intersection predicates, permutation families, and the graph over S_n.

Two permutations t-cycle-intersect when their canonical cycle decompositions
share at least t cycles; a family is t-cycle-intersecting when every unordered
pair does (vacuously for at most one member). The intersection graph makes
that pair relation explicit so maximum families become maximum cliques.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator

from . import config
from .perm import Permutation, all_permutations, rank


class PermFamily:
    """A deduplicated set of degree-n permutations in lexicographic image order."""

    __slots__ = ("n", "members", "_images")

    def __init__(self, n: int, perms: Iterable[Permutation] = ()):
        if n < 1:
            raise ValueError("degree must be at least 1")
        members = sorted(set(perms))
        for p in members:
            if p.n != n:
                raise ValueError(f"member degree {p.n} does not match family degree {n}")
        self.n = n
        self.members = tuple(members)
        self._images = frozenset(p.image for p in members)

    @classmethod
    def from_images(cls, n: int, rows: Iterable) -> "PermFamily":
        """Build from raw image rows; cycle-notation strings are also accepted."""
        from .perm import parse_cycles

        perms = []
        for idx, row in enumerate(rows):
            try:
                if isinstance(row, str):
                    perms.append(parse_cycles(row, n))
                else:
                    perms.append(Permutation(row))
            except (ValueError, TypeError) as exc:
                raise ValueError(f"perms[{idx}]: {exc}") from None
        return cls(n, perms)

    @classmethod
    def from_json_dict(cls, data: dict) -> "PermFamily":
        if not isinstance(data, dict) or "n" not in data or "perms" not in data:
            raise ValueError('family JSON must be an object with "n" and "perms"')
        return cls.from_images(int(data["n"]), data["perms"])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "perms": [list(p.image) for p in self.members]}

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)

    def __contains__(self, perm: Permutation) -> bool:
        return perm.image in self._images

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PermFamily)
                and self.n == other.n and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        return f"PermFamily(n={self.n}, size={len(self.members)})"


def common_cycles(sigma: Permutation, pi: Permutation) -> tuple[tuple[int, ...], ...]:
    """The cycles present in both canonical decompositions, sorted."""
    if sigma.n != pi.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {pi.n}")
    return tuple(sorted(sigma.cycle_set() & pi.cycle_set()))


def is_t_cycle_intersecting_pair(sigma: Permutation, pi: Permutation, t: int) -> bool:
    if sigma.n != pi.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {pi.n}")
    if t <= 0:
        return True
    return len(sigma.cycle_set() & pi.cycle_set()) >= t


def is_family_t_cycle_intersecting(family: PermFamily, t: int) -> bool:
    members = family.members
    for i in range(len(members)):
        ci = members[i].cycle_set()
        for j in range(i + 1, len(members)):
            if len(ci & members[j].cycle_set()) < t:
                return False
    return True


def pointwise_agreements(sigma: Permutation, pi: Permutation) -> int:
    """Number of points on which the two permutations agree."""
    if sigma.n != pi.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {pi.n}")
    return sum(1 for a, b in zip(sigma.image, pi.image) if a == b)


def stabilized_points(family: PermFamily) -> tuple[int, ...]:
    """Points fixed by every member; empty tuple for the empty family."""
    if not family.members:
        return ()
    common = frozenset(family.members[0].fixed_points())
    for p in family.members[1:]:
        common &= frozenset(p.fixed_points())
        if not common:
            break
    return tuple(sorted(common))


def is_stabilizer_of_points(family: PermFamily, t: int) -> bool:
    """Whether the family is exactly the set of all permutations fixing some t points.

    A family of size (n-t)! whose members share >= t fixed points is contained
    in, hence equal to, the stabilizer of any t of those points.
    """
    n = family.n
    if not 0 <= t <= n:
        return False
    if len(family) != math.factorial(n - t):
        return False
    return len(stabilized_points(family)) >= t


class IntersectionGraph:
    """The t-cycle-intersection relation over all of S_n.

    Vertices are the n! permutations in lexicographic (Lehmer-rank) order;
    adjacency rows are packed bitsets so clique search can intersect candidate
    sets with single big-int AND operations. Self-loops are excluded.
    """

    __slots__ = ("n", "t", "perms", "adj")

    def __init__(self, n: int, t: int, perms: tuple[Permutation, ...], adj: tuple[int, ...]):
        self.n = n
        self.t = t
        self.perms = perms
        self.adj = adj

    @property
    def size(self) -> int:
        return len(self.perms)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> int:
        """Neighbor set of v as a bitset keyed by rank."""
        return self.adj[v]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.size)) // 2

    def dimacs_lines(self) -> Iterator[str]:
        """DIMACS-like edge list, vertices keyed by permutation rank."""
        yield f"p edge {self.size} {self.edge_count()}"
        for u in range(self.size):
            row = self.adj[u] >> (u + 1) << (u + 1)  # only v > u
            while row:
                v = (row & -row).bit_length() - 1
                row &= row - 1
                yield f"e {u} {v}"


def build_intersection_graph(n: int, t: int,
                             cap: int | None = None) -> IntersectionGraph:
    """Materialize the graph; refuses degrees beyond the enumeration cap."""
    limit = config.enumeration_cap(cap)
    if n > limit:
        raise ValueError(f"degree {n} exceeds enumeration cap {limit}")
    perms = tuple(all_permutations(n))
    # Intern cycles as small integers so pair intersection is set-of-int work.
    interned: dict[tuple[int, ...], int] = {}
    ids = []
    for p in perms:
        row = []
        for cycle in p.cycles():
            key = interned.setdefault(cycle, len(interned))
            row.append(key)
        ids.append(frozenset(row))
    m = len(perms)
    adj = [0] * m
    for u in range(m):
        cu = ids[u]
        row = adj[u]
        for v in range(u + 1, m):
            if len(cu & ids[v]) >= t:
                row |= 1 << v
                adj[v] |= 1 << u
        adj[u] = row
    return IntersectionGraph(n, t, perms, tuple(adj))


def _require_intersecting(family: PermFamily, t: int) -> None:
    if not is_family_t_cycle_intersecting(family, t):
        raise ValueError(f"family is not {t}-cycle-intersecting")


def is_maximal(family: PermFamily, t: int, cap: int | None = None) -> bool:
    """No outside permutation t-cycle-intersects every member."""
    limit = config.enumeration_cap(cap)
    if family.n > limit:
        raise ValueError(f"degree {family.n} exceeds enumeration cap {limit}")
    _require_intersecting(family, t)
    for candidate in all_permutations(family.n):
        if candidate in family:
            continue
        if all(is_t_cycle_intersecting_pair(candidate, m, t) for m in family):
            return False
    return True


def maximalize(family: PermFamily, t: int, cap: int | None = None) -> PermFamily:
    """Extend to a maximal family, scanning candidates in lexicographic order.

    A single pass suffices: the kept family only grows, so any permutation
    compatible with the final family was compatible when it was scanned.
    """
    limit = config.enumeration_cap(cap)
    if family.n > limit:
        raise ValueError(f"degree {family.n} exceeds enumeration cap {limit}")
    _require_intersecting(family, t)
    members = list(family.members)
    present = set(family.members)
    for candidate in all_permutations(family.n):
        if candidate in present:
            continue
        if all(is_t_cycle_intersecting_pair(candidate, m, t) for m in members):
            members.append(candidate)
            present.add(candidate)
    return PermFamily(family.n, members)


def graph_rank(perm: Permutation) -> int:
    """Vertex index of a permutation in the intersection graph."""
    return rank(perm)
