"""Permutations of [n] = {1, ..., n} in one-line notation.

Everything here is 1-indexed to match the combinatorial conventions of the
rest of the package; conversions to 0-indexed positions happen only inside
method bodies. Permutation values are immutable and hashable, so they can be
shared freely between data structures (and threads) without copying.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Iterator, Sequence


class Permutation:
    """A bijection on [n], stored as the tuple of images (sigma(1), ..., sigma(n)).

    >>> s = Permutation([2, 3, 1, 5, 4])
    >>> s.cycles()
    ((1, 2, 3), (4, 5))
    >>> s.fixed_points()
    ()
    >>> Permutation([2, 1, 3]).fixed_points()
    (3,)
    """

    __slots__ = ("image", "_cycles", "_cycle_set")

    def __init__(self, image: Sequence[int]):
        image = tuple(int(x) for x in image)
        n = len(image)
        if n == 0:
            raise ValueError("degree must be at least 1")
        if sorted(image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {image!r}")
        self.image = image
        self._cycles: tuple[tuple[int, ...], ...] | None = None
        self._cycle_set: frozenset[tuple[int, ...]] | None = None

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= len(self.image):
            raise ValueError(f"point {x} out of range [1, {len(self.image)}]")
        return self.image[x - 1]

    def preimage(self, y: int) -> int:
        """The point x with sigma(x) = y."""
        if not 1 <= y <= len(self.image):
            raise ValueError(f"value {y} out of range [1, {len(self.image)}]")
        return self.image.index(y) + 1

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycle decomposition, 1-cycles included.

        Each cycle is rotated so its smallest element comes first and the
        cycles are sorted by smallest element, so equal permutations always
        produce identical decompositions and cycle multisets compare by
        structural equality.
        """
        if self._cycles is None:
            image = self.image
            n = len(image)
            seen = bytearray(n + 1)
            cycles = []
            for start in range(1, n + 1):
                if seen[start]:
                    continue
                cycle = [start]
                seen[start] = 1
                x = image[start - 1]
                while x != start:
                    cycle.append(x)
                    seen[x] = 1
                    x = image[x - 1]
                cycles.append(tuple(cycle))
            self._cycles = tuple(cycles)  # starts are found in ascending order
        return self._cycles

    def cycle_set(self) -> frozenset[tuple[int, ...]]:
        """The cycles as a frozenset; the unit of cycle-intersection counting."""
        if self._cycle_set is None:
            self._cycle_set = frozenset(self.cycles())
        return self._cycle_set

    def fixed_points(self) -> tuple[int, ...]:
        """Sorted tuple of the points x with sigma(x) = x."""
        return tuple(x for x in range(1, len(self.image) + 1) if self.image[x - 1] == x)

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted multiset of cycle lengths."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def inverse(self) -> Permutation:
        image = self.image
        inv = [0] * len(image)
        for x, y in enumerate(image, start=1):
            inv[y - 1] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.image, start=1))

    def to_cycle_string(self) -> str:
        """Cycle notation, e.g. "(1 2 3)(4 5)"; 1-cycles omitted, identity is "()"."""
        parts = [f"({' '.join(map(str, c))})" for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __lt__(self, other: Permutation) -> bool:
        return self.image < other.image

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("degree must be at least 1")
    return Permutation(range(1, n + 1))


def compose(sigma: Permutation, pi: Permutation) -> Permutation:
    """The permutation x -> sigma(pi(x)); degrees must match."""
    if sigma.n != pi.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {pi.n}")
    s, p = sigma.image, pi.image
    return Permutation(s[p[x] - 1] for x in range(len(s)))


def conjugate(sigma: Permutation, g: Permutation) -> Permutation:
    """g . sigma . g^-1, the relabelling of sigma's cycles by g."""
    return compose(compose(g, sigma), g.inverse())


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Build a permutation of [n] from disjoint cycles; omitted points are fixed.

    >>> from_cycles(5, [(1, 2, 3), (4, 5)]).image
    (2, 3, 1, 5, 4)
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    image = list(range(1, n + 1))
    used = set()
    for cycle in cycles:
        cycle = [int(x) for x in cycle]
        for x in cycle:
            if not 1 <= x <= n:
                raise ValueError(f"cycle entry {x} out of range [1, {n}]")
            if x in used:
                raise ValueError(f"point {x} appears in more than one cycle")
            used.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            image[a - 1] = b
    return Permutation(image)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation like "(1 2 3)(4 5)" into a degree-n permutation.

    Entries may be separated by spaces or commas; "()" or "" is the identity.
    """
    body = text.strip()
    leftover = _CYCLE_RE.sub("", body).strip()
    if leftover:
        raise ValueError(f"unparsable cycle notation: {text!r}")
    cycles = []
    for group in _CYCLE_RE.findall(body):
        entries = [e for e in re.split(r"[,\s]+", group.strip()) if e]
        if not entries:
            continue
        try:
            cycles.append([int(e) for e in entries])
        except ValueError:
            raise ValueError(f"non-integer entry in cycle notation: {text!r}") from None
    return from_cycles(n, cycles)


def rank(sigma: Permutation) -> int:
    """Position of sigma in the lexicographic order of one-line images (0-based)."""
    image = sigma.image
    n = len(image)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if image[j] < image[i])
        r = r * (n - i) + smaller
    return r


def unrank(n: int, r: int) -> Permutation:
    """Inverse of :func:`rank`; unrank(n, 0) is the identity."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} out of range for degree {n}")
    digits = []
    for base in range(1, n + 1):
        digits.append(r % base)
        r //= base
    digits.reverse()
    available = list(range(1, n + 1))
    return Permutation(available.pop(d) for d in digits)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic one-line order (the rank order)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)
