"""Finitely supported vectors over string labels."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import format_rational


def axis_label(j: int, n: int) -> str:
    return f"a{j % n}"


class Element:
    """Coordinates over basis labels; zero coefficients are never stored.

    Scalars are usually Fractions, but anything closed under ``+``/``*`` with
    Fractions works (the constraint derivation uses polynomials).
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping | None = None):
        self.coords = {k: v for k, v in (coords or {}).items() if v != 0}

    @classmethod
    def basis(cls, label: str, coeff=1) -> "Element":
        return cls({label: Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def from_vector(cls, labels: Iterable[str], values: Iterable) -> "Element":
        return cls(dict(zip(labels, values)))

    def __getitem__(self, label):
        return self.coords.get(label, Fraction(0))

    def __iter__(self):
        return iter(self.coords.items())

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out[k] + v if k in out else v
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({k: -v for k, v in self.coords.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, c) -> "Element":
        if isinstance(c, Element):
            return NotImplemented
        return Element({k: c * v for k, v in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def is_zero(self) -> bool:
        return not self.coords

    def vector(self, labels: Iterable[str]) -> list:
        labels = list(labels)
        extra = set(self.coords) - set(labels)
        if extra:
            raise KeyError(f"labels outside basis: {sorted(extra)}")
        return [self[k] for k in labels]

    def relabel(self, mapping) -> "Element":
        """Apply a label -> Element map linearly."""
        out = Element()
        for k, v in self.coords.items():
            out = out + v * mapping(k)
        return out

    def to_json(self) -> dict:
        return {k: format_rational(v) for k, v in sorted(self.coords.items())}

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({v})*{k}" for k, v in sorted(self.coords.items()))


def combine(terms: Iterable) -> Element:
    """Sum of ``(coeff, Element)`` pairs."""
    out = Element()
    for c, el in terms:
        out = out + c * el
    return out
