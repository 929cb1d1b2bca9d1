"""C3 merge and linearization, consistency checkers, and the brute-force
consistent-MRO oracle.

A precedence assignment maps each element to its precedence list: a
duplicate-free tuple that contains every upper cover of the element, and
may contain additional strict superiors (the relaxation that makes the
whole control scheme work).  Merge failure is data, not an exception: the
search module consumes failures in bulk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Sequence

from .errors import AmbiguityError, NotAPermutationError
from .poset import Poset

Assignment = Mapping[int, tuple[int, ...]]


@dataclass(frozen=True)
class MergeFailure:
    """The stuck state of a C3 merge: no remaining head is good."""

    processed: tuple[int, ...]
    remaining: tuple[tuple[int, ...], ...]
    at: int | None = None  # element whose MRO computation got stuck

    def __bool__(self) -> bool:
        # Guards against `if result:` treating a failure as a success.
        return False


@dataclass
class StepCounter:
    """Counts head-goodness membership tests performed by c3_merge.

    One unit per (candidate head, other non-exhausted list) tail-membership
    test: the dominant merge operation, deterministic and machine
    independent.
    """

    comparisons: int = 0


def validate_assignment(p: Poset, assignment: Assignment) -> None:
    """Raise ValueError unless ``assignment`` is a valid precedence map."""
    if set(assignment) != set(range(p.n)):
        raise ValueError("assignment must have exactly one entry per element")
    for c, seq in assignment.items():
        if len(set(seq)) != len(seq):
            raise ValueError(f"precedence list of {p.names[c]} has duplicates")
        missing = set(p.upper_covers(c)) - set(seq)
        if missing:
            raise ValueError(
                f"precedence list of {p.names[c]} misses covers "
                f"{[p.names[x] for x in sorted(missing)]}"
            )
        for x in seq:
            if not p.lt(c, x):
                raise ValueError(
                    f"{p.names[x]} is not a strict superior of {p.names[c]}"
                )


def induced_assignment(p: Poset, order: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Covers-only assignment with each list sorted by ``order`` position.

    ``order`` must be a linear extension; elements appearing earlier in it
    (more derived) come first in each list.
    """
    pos = {x: i for i, x in enumerate(order)}
    return {
        c: tuple(sorted(p.upper_covers(c), key=pos.__getitem__))
        for c in range(p.n)
    }


def c3_merge(
    lists: Sequence[Sequence[int]],
    counter: StepCounter | None = None,
):
    """Merge duplicate-free lists, preserving each list's relative order.

    At each step the first good head, scanning input lists left to right,
    is emitted (a head is good when it appears in no other list's tail).
    Returns the merged tuple, or a MergeFailure when no head is good.
    """
    seqs = [list(l) for l in lists]
    for s in seqs:
        if len(set(s)) != len(s):
            raise ValueError(f"input list {s!r} contains duplicates")
    k = len(seqs)
    ptr = [0] * k
    result: list[int] = []
    while True:
        active = [i for i in range(k) if ptr[i] < len(seqs[i])]
        if not active:
            return tuple(result)
        chosen = -1
        for i in active:
            head = seqs[i][ptr[i]]
            good = True
            for j in active:
                if j == i:
                    continue
                if counter is not None:
                    counter.comparisons += 1
                try:
                    seqs[j].index(head, ptr[j] + 1)
                except ValueError:
                    continue
                good = False
                break
            if good:
                chosen = head
                break
        if chosen < 0:
            return MergeFailure(
                processed=tuple(result),
                remaining=tuple(tuple(seqs[i][ptr[i]:]) for i in active),
            )
        result.append(chosen)
        for i in active:
            if seqs[i][ptr[i]] == chosen:
                ptr[i] += 1


def c3_mro(
    p: Poset,
    assignment: Assignment,
    c: int,
    cache: dict | None = None,
    counter: StepCounter | None = None,
):
    """MRO of ``c``: ``c`` followed by the C3 merge of its listed elements'
    MROs (computed recursively over the full precedence list) and the list
    itself.

    Returns the MRO tuple or a MergeFailure tagged with the element at
    which the merge got stuck.  ``cache`` memoizes per (poset, assignment)
    computation and must never be shared across assignments.
    """
    if cache is None:
        cache = {}

    def mro_of(x: int):
        hit = cache.get(x)
        if hit is not None:
            return hit
        listed = assignment[x]
        if listed:
            inputs = []
            for b in listed:
                sub = mro_of(b)
                if isinstance(sub, MergeFailure):
                    cache[x] = sub
                    return sub
                inputs.append(sub)
            inputs.append(listed)
            merged = c3_merge(inputs, counter)
            if isinstance(merged, MergeFailure):
                merged = MergeFailure(merged.processed, merged.remaining, at=x)
                cache[x] = merged
                return merged
            value = (x, *merged)
        else:
            value = (x,)
        cache[x] = value
        return value

    return mro_of(c)


def _order_positions(p: Poset, order: Sequence[int]) -> dict[int, int]:
    if len(set(order)) != len(order):
        raise NotAPermutationError(f"order {order!r} contains duplicates")
    if not order or set(order) != p.up_set(order[0]):
        raise NotAPermutationError(
            f"order {order!r} is not a permutation of the up-set of its head"
        )
    return {x: i for i, x in enumerate(order)}


def check_local_consistency(p: Poset, assignment: Assignment, order: Sequence[int]) -> bool:
    """Whenever B is listed before A at some element, B precedes A."""
    pos = _order_positions(p, order)
    for c in order:
        seq = assignment[c]
        for i, b in enumerate(seq):
            for a in seq[i + 1:]:
                if pos[b] > pos[a]:
                    return False
    return True


def check_extended_consistency(p: Poset, assignment: Assignment, order: Sequence[int]) -> bool:
    """The strengthened condition: for B listed before A at some element,
    every B' that is B or a strict superior of B, and is not above A, must
    precede A.

    Including B' = B makes this subsume plain local consistency.  B' = A
    itself (possible only with relaxed lists where A > B) is skipped: no
    order can place an element before itself.

    This condition is strictly stronger than what a successful C3 run
    guarantees: C3 can emit A before B' when B' is blocked by another
    pending list (smallest example: bottom below an antichain {x, y, z}
    listed (x, z, y) with x, y sharing an extra top).
    """
    pos = _order_positions(p, order)
    for c in order:
        seq = assignment[c]
        for i, b in enumerate(seq):
            bset = p.up_set(b)
            for a in seq[i + 1:]:
                for bp in bset:
                    if bp == a or p.lt(a, bp):
                        continue
                    if pos[bp] > pos[a]:
                        return False
    return True


_ORACLE_LIMIT = 9


def consistent_mro_oracle(p: Poset, assignment: Assignment, c: int):
    """Brute-force search for the consistent MRO of ``c``.

    Enumerates every permutation of up_set(c) starting with c, keeps those
    that are linear extensions of the restricted poset and pass the
    extended consistency check, and asserts at most one qualifies.
    Exponential by design; refuses up-sets larger than 9 elements.
    """
    up = sorted(p.up_set(c))
    if len(up) > _ORACLE_LIMIT:
        raise ValueError(f"up-set of size {len(up)} exceeds oracle limit {_ORACLE_LIMIT}")
    others = [x for x in up if x != c]
    found = None
    for tail in permutations(others):
        order = (c, *tail)
        pos = {x: i for i, x in enumerate(order)}
        if any(p.lt(x, y) and pos[x] > pos[y] for x in up for y in up if x != y):
            continue
        if not check_extended_consistency(p, assignment, order):
            continue
        if found is not None:
            raise AmbiguityError(
                f"two consistent MROs for {p.names[c]}: {found} and {order}"
            )
        found = order
    return found


def check_monotone(p: Poset, assignment: Assignment, c: int) -> bool:
    """True iff for every superior a of c, MRO(a) is the restriction of
    MRO(c) to the up-set of a.

    Raises LinearizationFailedError if C3 fails on c or any superior.
    """
    from .errors import LinearizationFailedError

    cache: dict = {}
    mro_c = c3_mro(p, assignment, c, cache)
    if isinstance(mro_c, MergeFailure):
        raise LinearizationFailedError(mro_c)
    for a in p.up_set(c):
        if a == c:
            continue
        mro_a = c3_mro(p, assignment, a, cache)
        if isinstance(mro_a, MergeFailure):
            raise LinearizationFailedError(mro_a)
        up_a = p.up_mask(a)
        if tuple(x for x in mro_c if up_a >> x & 1) != mro_a:
            return False
    return True
