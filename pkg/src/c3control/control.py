"""Instrumented C3: given a poset and a global order, compute the minimal
precedence lists that force C3 to reproduce that order; plus the brute
force baseline, a comparison-count probe, and the bit-flag sort key
scheme for choosing global orders.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import LinearizationFailedError, NotLinearExtensionError
from .linearize import MergeFailure, StepCounter, c3_mro
from .poset import Poset


@dataclass(frozen=True)
class InstrumentationResult:
    """Output of c3_instrumented.

    ``assignment`` maps each element to its final precedence list (covers
    plus insertions, sorted by the global order); ``additions`` records,
    per element, the inserted non-cover elements in insertion order.
    """

    assignment: dict[int, tuple[int, ...]]
    additions: dict[int, tuple[int, ...]]
    total_added: int


def _require_extension(p: Poset, g: Sequence[int]) -> dict[int, int]:
    if not p.is_linear_extension(g):
        raise NotLinearExtensionError(
            f"{[p.names[x] for x in g]} is not a linear extension"
        )
    return {x: i for i, x in enumerate(g)}


def c3_instrumented(p: Poset, g: Sequence[int]) -> InstrumentationResult:
    """Compute minimal precedence lists making C3 reproduce ``g``.

    Elements are processed least-derived first along ``g`` so every listed
    superior's MRO is final before its inferiors are handled.  For each
    element the merge is replayed against the target order (g restricted
    to the element's up-set); whenever the first good head deviates from
    the target, the offending element is inserted into the local list at
    its g-sorted position (preceded by the target element if absent) and
    the merge restarts.
    """
    pos = _require_extension(p, g)
    mros: dict[int, tuple[int, ...]] = {}
    assignment: dict[int, tuple[int, ...]] = {}
    additions: dict[int, tuple[int, ...]] = {}

    for c in reversed(g):
        up = p.up_mask(c)
        target = [x for x in g if up >> x & 1 and x != c]
        clist = sorted(p.upper_covers(c), key=pos.__getitem__)
        inserted: list[int] = []

        while True:
            restart = False
            seqs = [list(mros[b]) for b in clist]
            if clist:
                seqs.append(list(clist))
            ptr = [0] * len(seqs)
            for desired in target:
                head = _first_good_head(seqs, ptr)
                if head != desired:
                    if desired not in clist:
                        insort(clist, desired, key=pos.__getitem__)
                        inserted.append(desired)
                    if head not in clist:
                        insort(clist, head, key=pos.__getitem__)
                        inserted.append(head)
                    restart = True
                    break
                for i, s in enumerate(seqs):
                    if ptr[i] < len(s) and s[ptr[i]] == desired:
                        ptr[i] += 1
            if not restart:
                break

        mros[c] = (c, *target)
        assignment[c] = tuple(clist)
        if inserted:
            additions[c] = tuple(inserted)

    return InstrumentationResult(
        assignment=assignment,
        additions=additions,
        total_added=sum(len(v) for v in additions.values()),
    )


def _first_good_head(seqs: list[list[int]], ptr: list[int]) -> int:
    """First good head scanning left to right; the caller guarantees the
    target element is always available, so a good head always exists."""
    active = [i for i in range(len(seqs)) if ptr[i] < len(seqs[i])]
    for i in active:
        head = seqs[i][ptr[i]]
        good = True
        for j in active:
            if j == i:
                continue
            try:
                seqs[j].index(head, ptr[j] + 1)
            except ValueError:
                continue
            good = False
            break
        if good:
            return head
    raise AssertionError("instrumented merge found no good head")


def brute_force_assignment(p: Poset, g: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Each element lists its whole strict up-set in global order.

    The head of the first merge input is then always good, so C3
    reproduces ``g`` on every up-set, at a cubic price on deep chains.
    """
    _require_extension(p, g)
    return {
        c: tuple(x for x in g if p.up_mask(c) >> x & 1 and x != c)
        for c in range(p.n)
    }


def count_additions_per_extension(p: Poset) -> dict[int, int]:
    """Histogram: total insertions made by c3_instrumented, tallied over
    every linear extension of the poset."""
    histogram: dict[int, int] = {}
    for g in p.linear_extensions():
        total = c3_instrumented(p, g).total_added
        histogram[total] = histogram.get(total, 0) + 1
    return dict(sorted(histogram.items()))


def merge_step_count(p: Poset, assignment: Mapping[int, tuple[int, ...]], c: int) -> int:
    """Head-goodness membership tests across all merges for MRO(c), cold
    cache.  Raises LinearizationFailedError if C3 fails."""
    counter = StepCounter()
    result = c3_mro(p, assignment, c, cache={}, counter=counter)
    if isinstance(result, MergeFailure):
        raise LinearizationFailedError(result)
    return counter.comparisons


@dataclass(frozen=True)
class SortKey:
    """Comparison key for the global order: important-element bit flags,
    refined by a creation-order counter.  Elements with greater keys come
    earlier (they are more derived)."""

    flags: int
    counter: int


@dataclass(frozen=True)
class SortKeyResult:
    keys: dict[int, SortKey]
    order: tuple[int, ...]
    is_extension: bool


def compute_sort_keys(p: Poset, important: Sequence[int]) -> SortKeyResult:
    """Assign each element the OR of the flags of the important elements
    in its reflexive up-set; important[0] carries the most significant
    bit.  The induced order sorts by descending (flags, counter), counter
    being the element id (stand-in for creation order: more derived
    elements are created later).
    """
    m = len(important)
    bit = {x: 1 << (m - 1 - i) for i, x in enumerate(important)}
    keys = {}
    for x in range(p.n):
        up = p.up_mask(x)
        flags = 0
        for imp, b in bit.items():
            if up >> imp & 1:
                flags |= b
        keys[x] = SortKey(flags=flags, counter=x)
    order = tuple(
        sorted(range(p.n), key=lambda x: (keys[x].flags, keys[x].counter), reverse=True)
    )
    try:
        is_ext = p.is_linear_extension(order)
    except Exception:  # pragma: no cover - order is always a permutation
        is_ext = False
    return SortKeyResult(keys=keys, order=order, is_extension=is_ext)
