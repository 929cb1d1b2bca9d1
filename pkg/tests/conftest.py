"""Shared helpers: enumeration of small posets and the H example.

The tree enumeration yields one labeled poset per (poset admitting the
identity labeling as a most-derived-first linear extension); every
isomorphism class appears, which is enough for the label-invariant
properties tested here.
"""

from __future__ import annotations

import pytest

from c3control import Poset, poset_h, tree_children, tree_root


def posets_of_size(n: int):
    """Every tree node at depth ``n``, as Poset objects."""
    level = [tree_root()]
    for _ in range(n):
        level = [child for node in level for child in tree_children(node)]
    return [node.poset for node in level]


@pytest.fixture(scope="session")
def h() -> Poset:
    return poset_h()


@pytest.fixture(scope="session")
def h_upper(h: Poset) -> Poset:
    """H without its bottom element F."""
    return h.restrict(range(9))
