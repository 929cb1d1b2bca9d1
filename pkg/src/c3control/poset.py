"""Finite posets stored as transitively reduced cover digraphs.

Orientation convention, used throughout the package: a cover pair ``(c, a)``
means "a is an upper cover of c", i.e. c directly inherits from a.  Every
order produced or consumed here (MROs, global orders, linear extensions)
lists the most-derived element first: an element always appears before all
of its strict superiors.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleError,
    DuplicateNameError,
    NotAPermutationError,
    NotReducedError,
)


class Poset:
    """An immutable finite strict partial order on elements ``0..n-1``.

    Instances are safe to share across worker processes; all derived
    structure (cover lists, up-set bitmasks) is precomputed at
    construction time.
    """

    __slots__ = ("n", "names", "covers", "_upper", "_lower", "_up_mask", "_down_mask")

    def __init__(self, n: int, covers: Iterable[tuple[int, int]], names: Sequence[str] | None = None):
        covers = frozenset((int(c), int(a)) for c, a in covers)
        if names is None:
            names = tuple(str(i) for i in range(n))
        else:
            names = tuple(names)
            if len(names) != n:
                raise ValueError(f"expected {n} names, got {len(names)}")
            seen = set()
            for name in names:
                if name in seen:
                    raise DuplicateNameError(name)
                seen.add(name)
        for c, a in covers:
            if not (0 <= c < n and 0 <= a < n) or c == a:
                raise ValueError(f"invalid cover pair ({c}, {a}) for n={n}")

        upper = [[] for _ in range(n)]
        lower = [[] for _ in range(n)]
        for c, a in covers:
            upper[c].append(a)
            lower[a].append(c)
        self.n = n
        self.names = names
        self.covers = covers
        self._upper = tuple(tuple(sorted(u)) for u in upper)
        self._lower = tuple(tuple(sorted(d)) for d in lower)

        self._check_acyclic()
        self._up_mask = self._closure(self._upper)
        self._down_mask = self._closure(self._lower)
        self._check_reduced()

    def _check_acyclic(self) -> None:
        state = [0] * self.n  # 0 unseen, 1 on stack, 2 done
        stack_path: list[int] = []

        def visit(x: int) -> None:
            state[x] = 1
            stack_path.append(x)
            for y in self._upper[x]:
                if state[y] == 1:
                    cycle = stack_path[stack_path.index(y):] + [y]
                    raise CycleError([self.names[z] for z in cycle])
                if state[y] == 0:
                    visit(y)
            stack_path.pop()
            state[x] = 2

        for x in range(self.n):
            if state[x] == 0:
                visit(x)

    def _closure(self, neigh) -> tuple[int, ...]:
        # Reflexive reachability bitmasks, computed in reverse topological
        # order so each element's mask is final before it is used.
        order: list[int] = []
        seen = [False] * self.n
        stack: list[tuple[int, int]] = []
        for root in range(self.n):
            if seen[root]:
                continue
            stack.append((root, 0))
            seen[root] = True
            while stack:
                x, i = stack.pop()
                if i < len(neigh[x]):
                    stack.append((x, i + 1))
                    y = neigh[x][i]
                    if not seen[y]:
                        seen[y] = True
                        stack.append((y, 0))
                else:
                    order.append(x)
        mask = [0] * self.n
        for x in order:
            m = 1 << x
            for y in neigh[x]:
                m |= mask[y]
            mask[x] = m
        return tuple(mask)

    def _check_reduced(self) -> None:
        for c, a in sorted(self.covers):
            for b in self._upper[c]:
                if b != a and self._up_mask[b] >> a & 1:
                    raise NotReducedError((self.names[c], self.names[a]))

    # -- basic queries ---------------------------------------------------

    def upper_covers(self, c: int) -> tuple[int, ...]:
        """Direct superiors of ``c``, in ascending id order."""
        return self._upper[c]

    def lower_covers(self, a: int) -> tuple[int, ...]:
        """Direct inferiors of ``a``, in ascending id order."""
        return self._lower[a]

    def up_set(self, c: int) -> frozenset[int]:
        """All ``x >= c``, including ``c`` itself."""
        m = self._up_mask[c]
        return frozenset(x for x in range(self.n) if m >> x & 1)

    def up_mask(self, c: int) -> int:
        """Reflexive up-set of ``c`` as a bitmask."""
        return self._up_mask[c]

    def lt(self, x: int, y: int) -> bool:
        """True iff ``x < y``, i.e. y is a strict superior of x."""
        return x != y and self._up_mask[x] >> y & 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up_mask[x] >> y & 1)

    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._lower[x])

    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._upper[x])

    def name_of(self, x: int) -> str:
        return self.names[x]

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.names == other.names and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.n, self.names, self.covers))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{self.names[c]}<{self.names[a]}" for c, a in sorted(self.covers)
        )
        return f"Poset(n={self.n}, covers=[{pairs}])"

    # -- orders ----------------------------------------------------------

    def _check_permutation(self, order: Sequence[int]) -> None:
        if len(order) != self.n or set(order) != set(range(self.n)):
            raise NotAPermutationError(
                f"order {order!r} is not a permutation of 0..{self.n - 1}"
            )

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        """True iff every element precedes all of its strict superiors."""
        self._check_permutation(order)
        pos = [0] * self.n
        for i, x in enumerate(order):
            pos[x] = i
        return all(pos[c] < pos[a] for c, a in self.covers)

    def linear_extensions(self) -> Iterator[tuple[int, ...]]:
        """All linear extensions, lexicographically by id sequence.

        An element becomes available once all of its strict inferiors are
        placed, so the stream starts from the minimal (most derived)
        elements.
        """
        n = self.n
        down = self._lower
        placed = [False] * n
        missing = [len(down[x]) for x in range(n)]  # unplaced lower covers
        prefix: list[int] = []

        def rec() -> Iterator[tuple[int, ...]]:
            if len(prefix) == n:
                yield tuple(prefix)
                return
            for x in range(n):
                if placed[x] or missing[x]:
                    continue
                placed[x] = True
                for y in self._upper[x]:
                    missing[y] -= 1
                prefix.append(x)
                yield from rec()
                prefix.pop()
                for y in self._upper[x]:
                    missing[y] += 1
                placed[x] = False

        return rec()

    def linear_extension_count(self) -> int:
        return sum(1 for _ in self.linear_extensions())

    def antichains(self) -> Iterator[tuple[int, ...]]:
        """All antichains (as sorted id tuples), the empty one included."""
        comp = [
            (self._up_mask[x] | self._down_mask[x]) & ~(1 << x)
            for x in range(self.n)
        ]

        def rec(start: int, chosen: list[int], blocked: int) -> Iterator[tuple[int, ...]]:
            yield tuple(chosen)
            for x in range(start, self.n):
                if blocked >> x & 1:
                    continue
                chosen.append(x)
                yield from rec(x + 1, chosen, blocked | comp[x])
                chosen.pop()

        return rec(0, [], 0)

    # -- derived posets --------------------------------------------------

    def restrict(self, subset: Iterable[int]) -> "Poset":
        """Induced subposet on ``subset``, with ids renumbered densely.

        The old-to-new id map preserves ascending id order; covers are
        recomputed from the induced order relation and reduced.
        """
        keep = sorted(set(subset))
        index = {x: i for i, x in enumerate(keep)}
        # Strict order restricted to the subset; covers of the induced
        # order are the minimal elements among each element's superiors.
        above = {x: [y for y in keep if y != x and self._up_mask[x] >> y & 1] for x in keep}
        covers = []
        for x in keep:
            for y in above[x]:
                if not any(z != y and self._up_mask[z] >> y & 1 for z in above[x]):
                    covers.append((index[x], index[y]))
        return Poset(len(keep), set(covers), [self.names[x] for x in keep])

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Apply the permutation old id -> ``perm[old]`` to elements."""
        self._check_permutation(perm)
        names = [""] * self.n
        for old, new in enumerate(perm):
            names[new] = self.names[old]
        return Poset(self.n, {(perm[c], perm[a]) for c, a in self.covers}, names)

    def add_bottom(self, name: str = "bottom") -> "Poset":
        """Adjoin a new least element with id 0; existing ids shift by one."""
        covers = {(c + 1, a + 1) for c, a in self.covers}
        covers.update((0, m + 1) for m in self.minimal_elements())
        return Poset(self.n + 1, covers, (name, *self.names))

    # -- canonical form --------------------------------------------------

    def canonical_form(self) -> bytes:
        """An isomorphism-invariant key: equal iff the posets are isomorphic.

        Iterative partition refinement on degree/level signatures, then a
        backtracking minimum over the remaining within-cell permutations of
        the relabeled cover set.
        """
        n = self.n
        if n == 0:
            return b"\x00"
        if n > 255:
            raise ValueError("canonical_form supports at most 255 elements")

        up_len = [bin(self._up_mask[x]).count("1") for x in range(n)]
        down_len = [bin(self._down_mask[x]).count("1") for x in range(n)]
        sig = [
            (len(self._upper[x]), len(self._lower[x]), up_len[x], down_len[x])
            for x in range(n)
        ]
        color = _rank(sig)
        while True:
            sig2 = [
                (
                    color[x],
                    tuple(sorted(color[y] for y in self._upper[x])),
                    tuple(sorted(color[y] for y in self._lower[x])),
                )
                for x in range(n)
            ]
            color2 = _rank(sig2)
            if color2 == color:
                break
            color = color2

        cells: dict[int, list[int]] = {}
        for x in range(n):
            cells.setdefault(color[x], []).append(x)
        ordered_cells = [cells[c] for c in sorted(cells)]

        covers = sorted(self.covers)
        pos = [0] * n
        best: list[tuple[int, int]] | None = None

        def assign(cell_idx: int, offset: int) -> None:
            nonlocal best
            if cell_idx == len(ordered_cells):
                enc = sorted((pos[c], pos[a]) for c, a in covers)
                if best is None or enc < best:
                    best = enc
                return
            cell = ordered_cells[cell_idx]
            for perm in permutations(cell):
                for i, x in enumerate(perm):
                    pos[x] = offset + i
                assign(cell_idx + 1, offset + len(cell))

        if all(len(cell) == 1 for cell in ordered_cells):
            off = 0
            for cell in ordered_cells:
                pos[cell[0]] = off
                off += 1
            best = sorted((pos[c], pos[a]) for c, a in covers)
        else:
            assign(0, 0)

        out = bytearray([n])
        for c, a in best:
            out.append(c)
            out.append(a)
        return bytes(out)


def _rank(signatures: list) -> list[int]:
    """Replace each signature by its rank among the sorted distinct ones."""
    order = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [order[s] for s in signatures]


def poset_from_covers(
    n: int,
    names: Sequence[str] | None,
    covers: Iterable[tuple[int, int]],
) -> Poset:
    """Build a validated poset from explicit cover pairs.

    Transitively implied pairs are rejected (``NotReducedError``), not
    silently dropped, and cycles raise ``CycleError`` with a witness.
    """
    return Poset(n, covers, names)


_H_NAMES = ("A", "B", "C", "D1", "D2", "D3", "E1", "E2", "E3", "F")

_H_COVERS = (
    ("D1", "B"), ("D1", "A"),
    ("E1", "D1"), ("E1", "C"),
    ("D2", "A"), ("D2", "C"),
    ("E2", "D2"), ("E2", "B"),
    ("D3", "B"), ("D3", "C"),
    ("E3", "D3"), ("E3", "A"),
    ("F", "E1"), ("F", "E2"), ("F", "E3"),
)


def poset_h() -> Poset:
    """The 10-element poset on which C3 fails for every choice of lists."""
    idx = {name: i for i, name in enumerate(_H_NAMES)}
    return Poset(10, [(idx[c], idx[a]) for c, a in _H_COVERS], _H_NAMES)
