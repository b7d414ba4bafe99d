"""The ij-fixing and (i,j)-compression operators and their family closures.

ij-fixing rewrites a permutation with sigma(i) = j into one that fixes i,
rerouting the old preimage of i to j; it never loses fixed points and gains
at least one. (i,j)-compression (for i < j) moves a fixed point from j down
to i while preserving the cycle type, acting on fixed-point sets exactly like
the left-shift operation on sets.

Family-level variants rewrite a member only when the rewrite is not already
present in the family *as it was before the sweep step*; this keeps the family
size constant. Closures sweep all index pairs in lexicographic order until a
clean pass; traces record the work done so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intersect import PermFamily, is_stabilizer_of_points
from .perm import Permutation


@dataclass(frozen=True)
class ClosureTrace:
    """Termination evidence for a closure run.

    ``passes`` counts full sweeps including the final clean one, so a closure
    fixpoint input reports one pass and zero applications. The potential is
    the quantity that forces termination: total fixed-point count for the
    fixing closure (strictly increasing), the sum of all fixed points' values
    for the compression closure (strictly decreasing).
    """

    operation: str
    passes: int
    applications: int
    potential_before: int
    potential_after: int
    pass_applications: tuple[int, ...] = ()


def _check_points(n: int, i: int, j: int) -> None:
    if i == j:
        raise ValueError("points must be distinct")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"points ({i}, {j}) out of range [1, {n}]")


def ij_fix_perm(sigma: Permutation, i: int, j: int) -> Permutation:
    """Fix i in sigma when sigma(i) = j, rerouting sigma^-1(i) to j."""
    _check_points(sigma.n, i, j)
    if sigma(i) != j:
        return sigma
    image = list(sigma.image)
    pre_i = sigma.preimage(i)
    image[i - 1] = i
    image[pre_i - 1] = j
    return Permutation(image)


def compress_perm(sigma: Permutation, i: int, j: int) -> Permutation:
    """Move the fixed point j down to i when sigma fixes j but not i (i < j)."""
    if i >= j:
        raise ValueError(f"compression needs i < j, got ({i}, {j})")
    _check_points(sigma.n, i, j)
    if sigma(i) == i or sigma(j) != j:
        return sigma
    image = list(sigma.image)
    pre_i = sigma.preimage(i)
    image[i - 1] = i
    image[j - 1] = sigma(i)
    image[pre_i - 1] = j
    return Permutation(image)


def _apply_family(family: PermFamily, rewrite) -> tuple[PermFamily, int]:
    """Set-map semantics: rewrite each member unless the result is already
    a member of the input family. Returns the new family and rewrite count."""
    out = []
    applications = 0
    for sigma in family:
        candidate = rewrite(sigma)
        if candidate != sigma and candidate not in family:
            out.append(candidate)
            applications += 1
        else:
            out.append(sigma)
    result = PermFamily(family.n, out)
    if len(result) != len(family):  # rewrites are injective; reaching this is a bug
        raise RuntimeError("family operator collapsed distinct members")
    return result, applications


def ij_fix_family(family: PermFamily, i: int, j: int) -> PermFamily:
    _check_points(family.n, i, j)
    return _apply_family(family, lambda s: ij_fix_perm(s, i, j))[0]


def compress_family(family: PermFamily, i: int, j: int) -> PermFamily:
    if i >= j:
        raise ValueError(f"compression needs i < j, got ({i}, {j})")
    _check_points(family.n, i, j)
    return _apply_family(family, lambda s: compress_perm(s, i, j))[0]


def _fix_potential(family: PermFamily) -> int:
    return sum(len(p.fixed_points()) for p in family)


def _compress_potential(family: PermFamily) -> int:
    return sum(sum(p.fixed_points()) for p in family)


def _closure(family: PermFamily, pairs, rewrite_for, operation: str,
             potential) -> tuple[PermFamily, ClosureTrace]:
    before = potential(family)
    total = 0
    per_pass = []
    while True:
        pass_count = 0
        for i, j in pairs:
            family, count = _apply_family(family, rewrite_for(i, j))
            pass_count += count
        per_pass.append(pass_count)
        total += pass_count
        if pass_count == 0:
            break
    trace = ClosureTrace(operation, len(per_pass), total, before,
                         potential(family), tuple(per_pass))
    return family, trace


def fix_closure(family: PermFamily) -> tuple[PermFamily, ClosureTrace]:
    """Sweep ij-fixing over all ordered pairs until the family is fixed.

    Terminates because each rewrite strictly increases the total fixed-point
    count, which is bounded by n * |family|.
    """
    n = family.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return _closure(family, pairs,
                    lambda i, j: (lambda s: ij_fix_perm(s, i, j)),
                    "fix-closure", _fix_potential)


def compress_closure(family: PermFamily) -> tuple[PermFamily, ClosureTrace]:
    """Sweep (i,j)-compression over all i < j until the family is compressed.

    Terminates because each rewrite strictly decreases the positive sum of
    fixed-point values.
    """
    n = family.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return _closure(family, pairs,
                    lambda i, j: (lambda s: compress_perm(s, i, j)),
                    "compress-closure", _compress_potential)


def is_fixed_family(family: PermFamily) -> bool:
    """Invariant under every ij-fixing family operator."""
    n = family.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and ij_fix_family(family, i, j) != family:
                return False
    return True


def is_compressed_family(family: PermFamily) -> bool:
    """Invariant under every (i,j)-compression family operator."""
    n = family.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if compress_family(family, i, j) != family:
                return False
    return True


def stabilizer_pullback_check(original: PermFamily, transformed: PermFamily,
                              t: int) -> bool:
    """If the transformed family is a stabilizer of t points, the original
    must have been one too; vacuously true otherwise."""
    if not is_stabilizer_of_points(transformed, t):
        return True
    return is_stabilizer_of_points(original, t)
