"""Exact free modules over the rationals.

An :class:`Element` is a finite formal linear combination of hashable
basis objects with ``fractions.Fraction`` coefficients.  Zero
coefficients are never stored, so equality of elements is equality of
the underlying mappings.  Basis objects only need to be hashable; for
deterministic output and row reduction a sort key is supplied
externally (nested tuples of strings/ints throughout this package).

Row reduction is the plain sparse reduced-echelon algorithm over Q with
first-nonzero pivoting; over an exact field nothing cleverer is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator

Scalar = Fraction


def _coeff(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Element:
    """Finite linear combination {basis object: nonzero rational}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = terms if terms is not None else {}

    @staticmethod
    def zero() -> "Element":
        return Element()

    @staticmethod
    def of(basis: Hashable, coeff=1) -> "Element":
        c = _coeff(coeff)
        return Element({basis: c}) if c else Element()

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Hashable, Scalar]]) -> "Element":
        acc: dict = {}
        for b, c in pairs:
            _add_term(acc, b, c)
        return Element(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, basis) -> Fraction:
        return self.terms.get(basis, Fraction(0))

    def items(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(self.terms.items())

    def sorted_items(self, key: Callable | None = None):
        if key is None:
            return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if not self.terms:
            return Element(dict(other.terms))
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _add_term(acc, b, c)
        return Element(acc)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _add_term(acc, b, -c)
        return Element(acc)

    def __neg__(self) -> "Element":
        return Element({b: -c for b, c in self.terms.items()})

    def scale(self, coeff) -> "Element":
        c = _coeff(coeff)
        if not c:
            return Element()
        return Element({b: v * c for b, v in self.terms.items()})

    def __mul__(self, coeff):
        return self.scale(coeff)

    __rmul__ = __mul__

    def map_basis(self, f: Callable[[Hashable], "Element"]) -> "Element":
        """Linear extension of a basis map f: basis -> Element."""
        acc: dict = {}
        for b, c in self.terms.items():
            for b2, c2 in f(b).terms.items():
                _add_term(acc, b2, c * c2)
        return Element(acc)

    def __repr__(self) -> str:
        return f"Element({format_element(self)})"


def _add_term(acc: dict, basis, coeff) -> None:
    c = acc.get(basis)
    if c is None:
        cc = _coeff(coeff)
        if cc:
            acc[basis] = cc
    else:
        c = c + coeff
        if c:
            acc[basis] = c
        else:
            del acc[basis]


def format_element(v: Element, render: Callable = str, key: Callable | None = None) -> str:
    """Deterministic human-readable form, e.g. ``2*ab - 1/3*ba``."""
    if v.is_zero():
        return "0"
    parts = []
    for b, c in v.sorted_items(key):
        text = render(b)
        mag = abs(c)
        body = text if mag == 1 else f"{mag}*{text}"
        parts.append(("- " if c < 0 else "+ ") + body)
    joined = " ".join(parts)
    return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]


def row_reduce(vectors: Iterable[Element], key: Callable) -> list[Element]:
    """Reduced echelon basis of the span, as a pivot-ordered list."""
    return ReducedBasis(vectors, key).basis()


class ReducedBasis:
    """Reduced echelon basis of the span of a family of Elements.

    Pivot of a vector = its smallest basis object under ``key``; pivots
    are normalized to coefficient 1 and eliminated from every other
    vector, so tails contain no pivots and :meth:`reduce` is one pass.
    The reduced basis depends only on the span (and ``key``), not on the
    input order.
    """

    def __init__(self, vectors: Iterable[Element], key: Callable):
        self.key = key
        self._rows: dict = {}  # pivot basis object -> Element (pivot coeff 1)
        for v in vectors:
            self.insert(v)

    def _pivot_of(self, v: Element):
        return min(v.terms, key=self.key)

    def insert(self, v: Element) -> None:
        r = self.reduce(v)
        if r.is_zero():
            return
        pivot = self._pivot_of(r)
        r = r.scale(Fraction(1) / r.coefficient(pivot))
        # keep reduced form: clear the new pivot from existing tails
        for p, row in list(self._rows.items()):
            c = row.coefficient(pivot)
            if c:
                self._rows[p] = row - r.scale(c)
        self._rows[pivot] = r

    def reduce(self, v: Element) -> Element:
        """Normal form of v modulo the span; zero iff v lies in the span."""
        if v.is_zero() or not self._rows:
            return v
        acc = dict(v.terms)
        for b in [b for b in acc if b in self._rows]:
            c = acc.get(b)
            if not c:
                continue
            for b2, c2 in self._rows[b].terms.items():
                _add_term(acc, b2, -c * c2)
        return Element(acc)

    def contains(self, v: Element) -> bool:
        return self.reduce(v).is_zero()

    def dimension(self) -> int:
        return len(self._rows)

    def basis(self) -> list[Element]:
        return [self._rows[p] for p in sorted(self._rows, key=self.key)]
