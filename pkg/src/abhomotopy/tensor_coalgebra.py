"""Tensor words, shuffle products, and the deconcatenation cobracket.

A :class:`Generator` is a homogeneous basis letter carrying its shifted
degree (the ``dg`` grading in which the product and the differential
both have degree 1).  A word is a nonempty tuple of Generators; the
empty word is excluded everywhere.

Words represent classes in the quotient of the tensor powers by the
span of all shuffle products.  No section of the quotient is ever
chosen: equality of classes is decided by reducing against the
row-reduced span of shuffle images inside the word block with the same
letter multiset (:class:`ShuffleQuotient`).  Blocks recur across every
identity check, so their reduced bases are memoized; a racing double
computation is harmless because the value per block is unique.

Tensor products of words (pairs, triples) are plain tuples of words;
the graded slot calculus for them lives in :func:`apply_in_slot` and
:func:`swap_adjacent_slots`.
"""

from __future__ import annotations

import itertools
from typing import Callable, NamedTuple, Sequence

from .freemodule import Element, ReducedBasis
from .signs import enumerate_shuffles, inverse, koszul_sign


class Generator(NamedTuple):
    gid: str
    deg: int  # shifted degree dg

    def __repr__(self) -> str:
        return self.gid


Word = tuple[Generator, ...]


def word(*gens: Generator) -> Word:
    if not gens:
        raise ValueError("words are nonempty")
    return tuple(gens)


def word_degree(w: Word) -> int:
    return sum(g.deg for g in w)


def word_key(w: Word):
    """Canonical total order on words: by length, then letter ids."""
    return (len(w), tuple(g.gid for g in w))


def tuple_key(t: tuple[Word, ...]):
    return tuple(word_key(w) for w in t)


def render_word(w: Word) -> str:
    return "(" + "|".join(g.gid for g in w) + ")"


def render_tuple(t: tuple[Word, ...]) -> str:
    return " (x) ".join(render_word(w) for w in t)


def shuffle(x: Word, y: Word) -> Element:
    """Signed sum of all shuffles of two words.

    Both blocks keep their internal order; each interleaving carries the
    Koszul sign of the rearrangement.

    >>> a = Generator("a", 1); b = Generator("b", 1)
    >>> sorted((render_word(w), c) for w, c in shuffle((a,), (b,)).items())
    [('(a|b)', Fraction(1, 1)), ('(b|a)', Fraction(-1, 1))]
    """
    if not x or not y:
        raise ValueError("shuffle needs two nonempty words")
    letters = x + y
    degs = [g.deg for g in letters]
    acc: dict = {}
    for sigma in enumerate_shuffles(len(x), len(y)):
        inv = inverse(sigma)
        out = tuple(letters[inv[k]] for k in range(len(letters)))
        s = koszul_sign(degs, sigma)
        c = acc.get(out, 0) + s
        if c:
            acc[out] = c
        else:
            acc.pop(out, None)
    return Element.from_terms(acc.items())


def shuffle_elements(ex: Element, ey: Element) -> Element:
    """Bilinear extension of :func:`shuffle` to Elements of words."""
    acc = Element.zero()
    for wx, cx in ex.items():
        for wy, cy in ey.items():
            acc = acc + shuffle(wx, wy).scale(cx * cy)
    return acc


def cobracket(w: Word) -> Element:
    """Deconcatenation cobracket: sum over cuts of U (x) V - (-1)^{uv} V (x) U.

    Words of length 1 have no cut, so the result is zero.
    """
    acc = Element.zero()
    for j in range(1, len(w)):
        u, v = w[:j], w[j:]
        sign = -1 if (word_degree(u) * word_degree(v)) % 2 else 1
        acc = acc + Element.of((u, v)) - Element.of((v, u), sign)
    return acc


def _arrangements(items: Sequence[Generator]):
    """Distinct orderings of a multiset of generators, in lex order."""
    seen = set()
    for perm in itertools.permutations(sorted(items)):
        if perm not in seen:
            seen.add(perm)
            yield perm


class ShuffleQuotient:
    """Membership test for the shuffle span, block by block.

    The block of a word is its letter multiset; the span of all shuffle
    products of two nonempty words partitioning that multiset is
    row-reduced once per block and cached.
    """

    def __init__(self):
        self._bases: dict[tuple[Generator, ...], ReducedBasis] = {}

    def block_of(self, w: Word) -> tuple[Generator, ...]:
        return tuple(sorted(w))

    def span_basis(self, block: tuple[Generator, ...]) -> ReducedBasis:
        basis = self._bases.get(block)
        if basis is None:
            vectors = []
            n = len(block)
            for arr in _arrangements(block):
                for cut in range(1, n):
                    vectors.append(shuffle(arr[:cut], arr[cut:]))
            basis = ReducedBasis(vectors, key=word_key)
            self._bases[block] = basis
        return basis

    def normal_form_word(self, w: Word) -> Element:
        if len(w) < 2:
            return Element.of(w)
        return self.span_basis(self.block_of(w)).reduce(Element.of(w))

    def normal_form(self, v: Element) -> Element:
        """Normal form of an Element of words modulo all shuffle spans."""
        return v.map_basis(self.normal_form_word)

    def is_zero(self, v: Element) -> bool:
        """True iff the Element of words is zero in the shuffle quotient."""
        return self.normal_form(v).is_zero()

    def normal_form_tensor(self, v: Element, arity: int) -> Element:
        """Slotwise normal form on an Element of word tuples."""
        for slot in range(arity):
            v = apply_in_slot(v, slot, self.normal_form_word, 0, word_degree)
        return v

    def tensor_is_zero(self, v: Element, arity: int) -> bool:
        return self.normal_form_tensor(v, arity).is_zero()


def apply_in_slot(
    v: Element,
    slot: int,
    f: Callable,
    f_degree: int,
    deg_of: Callable,
) -> Element:
    """Apply a graded map to one slot of an Element of tuples.

    Koszul rule: moving a degree-``f_degree`` operator past the slots to
    the left of ``slot`` costs (-1)**(f_degree * sum of their degrees).
    ``f`` maps a slot entry to an Element of slot entries.
    """
    acc = Element.zero()
    for t, c in v.items():
        if f_degree % 2:
            left = sum(deg_of(x) for x in t[:slot])
            if left % 2:
                c = -c
        img = f(t[slot])
        for r, c2 in img.items():
            acc = acc + Element.of(t[:slot] + (r,) + t[slot + 1 :], c * c2)
    return acc


def splice_in_slot(
    v: Element,
    slot: int,
    f: Callable,
    f_degree: int,
    deg_of: Callable,
) -> Element:
    """Like :func:`apply_in_slot` for maps whose values are tuples of
    slot entries (cobrackets, coproducts): the result tuple is spliced
    into the slot, raising the tensor arity."""
    acc = Element.zero()
    for t, c in v.items():
        if f_degree % 2:
            left = sum(deg_of(x) for x in t[:slot])
            if left % 2:
                c = -c
        for r, c2 in f(t[slot]).items():
            acc = acc + Element.of(t[:slot] + r + t[slot + 1 :], c * c2)
    return acc


def contract_adjacent_slots(
    v: Element,
    slot: int,
    f2: Callable,
    f_degree: int,
    deg_of: Callable,
) -> Element:
    """Feed slots (slot, slot+1) to a binary graded map, lowering the arity."""
    acc = Element.zero()
    for t, c in v.items():
        if f_degree % 2:
            left = sum(deg_of(x) for x in t[:slot])
            if left % 2:
                c = -c
        for r, c2 in f2(t[slot], t[slot + 1]).items():
            acc = acc + Element.of(t[:slot] + (r,) + t[slot + 2 :], c * c2)
    return acc


def swap_adjacent_slots(v: Element, slot: int, deg_of: Callable) -> Element:
    """Graded flip of slots (slot, slot+1) on an Element of tuples."""
    acc = Element.zero()
    for t, c in v.items():
        if (deg_of(t[slot]) * deg_of(t[slot + 1])) % 2:
            c = -c
        swapped = t[:slot] + (t[slot + 1], t[slot]) + t[slot + 2 :]
        acc = acc + Element.of(swapped, c)
    return acc


#: process-wide cache of shuffle-span bases; safe for concurrent reads,
#: and a racing populate only recomputes the same value.
QUOTIENT = ShuffleQuotient()
