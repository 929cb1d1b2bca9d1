"""Line-oriented hierarchy files: parse, validate, serialize.

Format (one key per line, comments start with '#'):

    name: C3fixed
    elements: A B C D E
    cover: D B
    cover: D A
    cover: E D
    cover: E C
    precedence: E = D C B
    global_order: E D C B A

Cover direction is fixed as ``cover: SUB SUPER``.  The order in which an
element's cover lines appear doubles as its default precedence list, the
way a class statement's base list does; an explicit ``precedence:`` line
overrides it (and may add extra strict superiors).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import C3ControlError
from .poset import Poset


class HierarchyParseError(C3ControlError):
    """The hierarchy file is malformed."""


@dataclass
class HierarchyFile:
    name: str
    elements: list[str]
    covers: list[tuple[str, str]]
    precedence: dict[str, list[str]] = field(default_factory=dict)
    global_order: list[str] | None = None

    def to_poset(self) -> Poset:
        index = {name: i for i, name in enumerate(self.elements)}
        return Poset(
            len(self.elements),
            [(index[c], index[a]) for c, a in self.covers],
            self.elements,
        )

    def assignment_for(self, p: Poset) -> dict[int, tuple[int, ...]]:
        """Precedence lists as element-id tuples.

        Elements without an explicit entry list their covers in cover-line
        order.
        """
        declared: dict[str, list[str]] = {name: [] for name in self.elements}
        for sub, sup in self.covers:
            declared[sub].append(sup)
        out = {}
        for i, name in enumerate(self.elements):
            listed = self.precedence.get(name, declared[name])
            out[i] = tuple(p.id_of(x) for x in listed)
        return out

    def global_order_ids(self, p: Poset) -> list[int] | None:
        if self.global_order is None:
            return None
        return [p.id_of(x) for x in self.global_order]


def parse_hierarchy(text: str, source: str = "<string>") -> HierarchyFile:
    name = ""
    elements: list[str] = []
    covers: list[tuple[str, str]] = []
    precedence: dict[str, list[str]] = {}
    global_order: list[str] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise HierarchyParseError(f"{source}:{lineno}: missing ':' in {line!r}")
        key = key.strip()
        value = value.strip()
        if key == "name":
            name = value
        elif key == "elements":
            elements = value.split()
        elif key == "cover":
            parts = value.split()
            if len(parts) != 2:
                raise HierarchyParseError(
                    f"{source}:{lineno}: cover needs exactly two names: {line!r}"
                )
            covers.append((parts[0], parts[1]))
        elif key == "precedence":
            owner, eq, rest = value.partition("=")
            if not eq:
                raise HierarchyParseError(
                    f"{source}:{lineno}: precedence needs 'OWNER = ...': {line!r}"
                )
            precedence[owner.strip()] = rest.split()
        elif key == "global_order":
            global_order = value.split()
        else:
            raise HierarchyParseError(f"{source}:{lineno}: unknown key {key!r}")

    if not elements:
        raise HierarchyParseError(f"{source}: no 'elements:' line")
    if len(set(elements)) != len(elements):
        raise HierarchyParseError(f"{source}: duplicate element names")
    known = set(elements)
    for sub, sup in covers:
        for x in (sub, sup):
            if x not in known:
                raise HierarchyParseError(f"{source}: unknown element {x!r} in cover")
    for owner, listed in precedence.items():
        for x in (owner, *listed):
            if x not in known:
                raise HierarchyParseError(
                    f"{source}: unknown element {x!r} in precedence"
                )
    if global_order is not None:
        for x in global_order:
            if x not in known:
                raise HierarchyParseError(
                    f"{source}: unknown element {x!r} in global_order"
                )
    return HierarchyFile(
        name=name,
        elements=elements,
        covers=covers,
        precedence=precedence,
        global_order=global_order,
    )


def serialize_hierarchy(h: HierarchyFile) -> str:
    lines = []
    if h.name:
        lines.append(f"name: {h.name}")
    lines.append("elements: " + " ".join(h.elements))
    for sub, sup in h.covers:
        lines.append(f"cover: {sub} {sup}")
    for owner in h.elements:
        if owner in h.precedence:
            lines.append(f"precedence: {owner} = " + " ".join(h.precedence[owner]))
    if h.global_order is not None:
        lines.append("global_order: " + " ".join(h.global_order))
    return "\n".join(lines) + "\n"


def to_dot(h: HierarchyFile) -> str:
    """DOT rendering of the cover digraph (sub -> super), export only."""
    lines = [f'digraph "{h.name or "hierarchy"}" {{']
    for name in h.elements:
        lines.append(f'  "{name}";')
    for sub, sup in h.covers:
        lines.append(f'  "{sub}" -> "{sup}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
