"""Local interfaces: ordered lists of (positive, negative) name sets.

Locality 0 holds the global (non-localized) names; localities 1..width are
attached to roots (outer side) or sites (inner side).  Juxtaposition appends
the localized parts and merges the global parts, renaming right-operand
globals on collision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["LocalInterface", "EMPTY_INTERFACE", "juxtapose", "check_name"]


def check_name(text: str) -> str:
    """Reject empty names and names containing whitespace."""
    if not isinstance(text, str) or not text:
        raise ValueError(f"name must be a non-empty string, got {text!r}")
    if any(c.isspace() for c in text):
        raise ValueError(f"name may not contain whitespace: {text!r}")
    return text


@dataclass(frozen=True)
class LocalInterface:
    """An ordered list of localities, each a pair of disjoint name sets.

    ``localities[0]`` is the global locality; ``width`` counts only the
    localized entries.  Instances are immutable and hashable.
    """

    localities: tuple[tuple[frozenset[str], frozenset[str]], ...]

    def __post_init__(self):
        if not self.localities:
            raise ValueError("an interface has at least the global locality")
        frozen = []
        for i, (plus, minus) in enumerate(self.localities):
            plus = frozenset(check_name(n) for n in plus)
            minus = frozenset(check_name(n) for n in minus)
            if plus & minus:
                raise ValueError(
                    f"locality {i}: names {sorted(plus & minus)} are both "
                    "positive and negative"
                )
            frozen.append((plus, minus))
        object.__setattr__(self, "localities", tuple(frozen))

    @classmethod
    def of(cls, *localities) -> "LocalInterface":
        """Build from (plus, minus) name iterables, the first pair being the
        global locality; no arguments gives the empty interface."""
        pairs = [(frozenset(p), frozenset(m)) for p, m in localities]
        if not pairs:
            pairs = [(frozenset(), frozenset())]
        return cls(tuple(pairs))

    @property
    def width(self) -> int:
        return len(self.localities) - 1

    def plus(self, i: int) -> frozenset[str]:
        return self.localities[i][0]

    def minus(self, i: int) -> frozenset[str]:
        return self.localities[i][1]

    def pretty(self) -> str:
        def names(s):
            return "{" + ",".join(sorted(s)) + "}"

        parts = [f"({names(p)},{names(m)})" for p, m in self.localities]
        return "<" + ",".join(parts) + ">"


EMPTY_INTERFACE = LocalInterface(((frozenset(), frozenset()),))

_TAG_SUFFIX = re.compile(r"(~\d+)+$")


def _tag_base(text: str) -> str:
    return _TAG_SUFFIX.sub("", text) or text


def _fresh_variant(text: str, taken: set[str]) -> str:
    """Smallest ``base~k`` not in ``taken``, continuing an existing tag tower."""
    base = _tag_base(text)
    k = 1
    while f"{base}~{k}" in taken:
        k += 1
    return f"{base}~{k}"


def juxtapose_with_renames(x: LocalInterface, y: LocalInterface):
    """Juxtapose two interfaces; also return the rename maps applied to the
    right operand's global names (one per polarity).

    The left operand's names are never touched.  The right operand's global
    names are absorbed in a canonical order; a colliding name moves to the
    smallest free slot of its tag tower.  Plus and minus share one namespace
    here because a name may collide across polarities and the result's sides
    must stay disjoint.

    The ``~k`` suffix is reserved for this tagging.  For names that do not
    already use it the operation is associative on the resulting name sets;
    names hand-crafted in the reserved form may receive grouping-dependent
    fresh variants (disjointness and the rename report still hold).
    """
    plus = set(x.plus(0))
    minus = set(x.minus(0))
    taken = plus | minus
    renames: tuple[dict[str, str], dict[str, str]] = ({}, {})
    incoming = [(_tag_base(t), len(t), t, 0) for t in y.plus(0)]
    incoming += [(_tag_base(t), len(t), t, 1) for t in y.minus(0)]
    for _, _, text, side in sorted(incoming):
        final = text
        if text in taken:
            final = _fresh_variant(text, taken)
            renames[side][text] = final
        taken.add(final)
        (minus if side else plus).add(final)

    localities = [(frozenset(plus), frozenset(minus))]
    localities.extend(x.localities[1:])
    localities.extend(y.localities[1:])
    return LocalInterface(tuple(localities)), renames[0], renames[1]


def juxtapose(x: LocalInterface, y: LocalInterface) -> LocalInterface:
    """X (x) Y: merged globals, then X's localities, then Y's localities."""
    return juxtapose_with_renames(x, y)[0]
