"""The symmetric coalgebra layer of the envelope.

Basis monomials are SymWords: nonempty multisets of tensor words stored
as canonically ordered tuples.  Reordering factors costs the Koszul
sign in the symmetric-layer degree deg_s = dg - a + b; the square of an
odd factor is zero.  On this space live:

- the two-block coproduct ``coproduct_delta`` (cocommutative,
  coassociative, degree 0),
- the coderivation extensions ``extend_m`` (of the word codifferential
  D) and ``extend_ell`` (of the symmetric bracket), and their sum, the
  codifferential ``q_codifferential`` with Q^2 = 0 modulo shuffles,
- the degree-(a-b) cobracket ``cobracket_doubleprime`` that cuts one
  factor at every deconcatenation point.

``kappa`` and ``poisson_cobracket`` are the directly coded cobrackets
of the Gerstenhaber-shaped (a-b = 1) and Poisson-shaped (a-b = 0)
specializations; they exist as independent oracles for
``cobracket_doubleprime`` and intentionally repeat its combinatorics
with their own degree bookkeeping.

Equality of the propositions' two sides is decided by rewriting every
tensor-word factor to its shuffle-quotient normal form
(:func:`sym_normal_form`) and comparing canonical Elements.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

from .ab_core import AbAlgebra, Coderivation, ell2_doubleprime
from .freemodule import Element
from .signs import koszul_sign
from .tensor_coalgebra import (
    ShuffleQuotient,
    Word,
    apply_in_slot,
    render_word,
    word_degree,
    word_key,
)

SymWord = tuple[Word, ...]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _normalize_with(deg_of: Callable[[Word], int], factors) -> tuple[int, SymWord | None]:
    """Sort factors canonically, accumulating the graded swap sign."""
    arr = list(factors)
    keys = [word_key(w) for w in arr]
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and keys[j] < keys[j - 1]:
            if deg_of(arr[j]) % 2 and deg_of(arr[j - 1]) % 2:
                sign = -sign
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            j -= 1
    for i in range(len(arr) - 1):
        if arr[i] == arr[i + 1] and deg_of(arr[i]) % 2:
            return 0, None
    return sign, tuple(arr)


def normalize(algebra: AbAlgebra, factors) -> tuple[int, SymWord | None]:
    """Canonical form of a factor sequence in deg_s grading; (0, None) if it dies."""
    return _normalize_with(algebra.deg_s, factors)


def sym_of(algebra: AbAlgebra, factors, coeff=1) -> Element:
    sign, sym = normalize(algebra, factors)
    if sym is None:
        return Element.zero()
    return Element.of(sym, Fraction(coeff) * sign)


def sym_degree(algebra: AbAlgebra, sym: SymWord) -> int:
    return sum(algebra.deg_s(w) for w in sym)


def render_sym(sym: SymWord) -> str:
    return ".".join(render_word(w) for w in sym)


def render_sym_tuple(t) -> str:
    return " (x) ".join(render_sym(s) for s in t)


def sym_key(sym: SymWord):
    return (len(sym), tuple(word_key(w) for w in sym))


def sym_tuple_key(t):
    return tuple(sym_key(s) for s in t)


# -- coproduct -----------------------------------------------------------


def coproduct_delta(algebra: AbAlgebra, sym: SymWord) -> Element:
    """Sum over proper two-block splits of the factor multiset.

    Each split carries the block Koszul sign in deg_s; a single factor
    has no proper split, so its coproduct is zero.
    """
    n = len(sym)
    if n < 2:
        return Element.zero()
    degs = [algebra.deg_s(w) for w in sym]
    acc = Element.zero()
    for r in range(1, n):
        for left in itertools.combinations(range(n), r):
            taken = set(left)
            right = tuple(i for i in range(n) if i not in taken)
            sigma = [0] * n
            for rank, i in enumerate(left):
                sigma[i] = rank
            for rank, j in enumerate(right):
                sigma[j] = r + rank
            s = koszul_sign(degs, sigma)
            acc = acc + Element.of(
                (tuple(sym[i] for i in left), tuple(sym[j] for j in right)), s
            )
    return acc


# -- coderivation extensions ----------------------------------------------


def extend_m(algebra: AbAlgebra, sym: SymWord, D: Coderivation) -> Element:
    """Apply D to one factor at a time, after bringing it to the front."""
    degs = [algebra.deg_s(w) for w in sym]
    acc = Element.zero()
    for i in range(len(sym)):
        front = _sign(degs[i] * sum(degs[:i]))
        rest = sym[:i] + sym[i + 1 :]
        for w, c in D(sym[i]).items():
            acc = acc + sym_of(algebra, (w,) + rest, c * front)
    return acc


def extend_ell(algebra: AbAlgebra, sym: SymWord) -> Element:
    """Contract one unordered factor pair with the symmetric bracket."""
    degs = [algebra.deg_s(w) for w in sym]
    acc = Element.zero()
    n = len(sym)
    for i in range(n):
        for j in range(i + 1, n):
            front = _sign(degs[i] * sum(degs[:i]) + degs[j] * (sum(degs[:j]) - degs[i]))
            rest = tuple(sym[k] for k in range(n) if k != i and k != j)
            for w, c in ell2_doubleprime(algebra, sym[i], sym[j]).items():
                acc = acc + sym_of(algebra, (w,) + rest, c * front)
    return acc


def q_codifferential(algebra: AbAlgebra, sym: SymWord, D: Coderivation) -> Element:
    """The codifferential Q = m + ell'' (degree 1 in deg_s)."""
    return extend_m(algebra, sym, D) + extend_ell(algebra, sym)


def q_by_taylor(algebra: AbAlgebra, sym: SymWord, D: Coderivation) -> Element:
    """Q assembled from its Taylor coefficients (D at one factor, the
    symmetric bracket at two, zero beyond); kept as a cross-check
    presentation of :func:`q_codifferential`."""
    n = len(sym)
    degs = [algebra.deg_s(w) for w in sym]
    acc = Element.zero()
    for r in (1, 2):
        if r > n:
            continue
        for left in itertools.combinations(range(n), r):
            taken = set(left)
            rest = tuple(sym[i] for i in range(n) if i not in taken)
            sigma = [0] * n
            for rank, i in enumerate(left):
                sigma[i] = rank
            pos = r
            for i in range(n):
                if i not in taken:
                    sigma[i] = pos
                    pos += 1
            s = koszul_sign(degs, sigma)
            if r == 1:
                val = D(sym[left[0]])
            else:
                val = ell2_doubleprime(algebra, sym[left[0]], sym[left[1]])
            for w, c in val.items():
                acc = acc + sym_of(algebra, (w,) + rest, c * s)
    return acc


# -- cobrackets ------------------------------------------------------------


def cobracket_doubleprime(algebra: AbAlgebra, sym: SymWord) -> Element:
    """Degree-(a-b) cobracket: cut one factor, split the rest two ways.

    For every factor X_s, every deconcatenation X_s = U (x) V and every
    ordered split (I, J) of the remaining factors this contributes

        eps * (-1)^((a-b)(deg_s X_I + deg_s U))
            * ( X_I.U (x) V.X_J  +  (-1)^(deg_s U deg_s V + a - b + 1) X_I.V (x) U.X_J )

    with eps the block Koszul sign arranging the factors into (I, s, J).
    """
    n = len(sym)
    amb = algebra.a - algebra.b
    degs = [algebra.deg_s(w) for w in sym]
    acc = Element.zero()
    for s in range(n):
        xs = sym[s]
        if len(xs) < 2:
            continue
        others = [i for i in range(n) if i != s]
        for r in range(len(others) + 1):
            for left in itertools.combinations(others, r):
                taken = set(left)
                right = tuple(i for i in others if i not in taken)
                sigma = [0] * n
                for rank, i in enumerate(left):
                    sigma[i] = rank
                sigma[s] = r
                for rank, j in enumerate(right):
                    sigma[j] = r + 1 + rank
                eps = koszul_sign(degs, sigma)
                deg_left = sum(degs[i] for i in left)
                fac_left = tuple(sym[i] for i in left)
                fac_right = tuple(sym[j] for j in right)
                for cut in range(1, len(xs)):
                    u, v = xs[:cut], xs[cut:]
                    du, dv = algebra.deg_s(u), algebra.deg_s(v)
                    c0 = eps * _sign(amb * (deg_left + du))
                    acc = acc + _sym_pair(
                        algebra, fac_left + (u,), (v,) + fac_right, c0
                    )
                    c1 = c0 * _sign(du * dv + amb + 1)
                    acc = acc + _sym_pair(
                        algebra, fac_left + (v,), (u,) + fac_right, c1
                    )
    return acc


def _sym_pair(algebra: AbAlgebra, left, right, coeff) -> Element:
    sl, wl = normalize(algebra, left)
    if wl is None:
        return Element.zero()
    sr, wr = normalize(algebra, right)
    if wr is None:
        return Element.zero()
    return Element.of((wl, wr), Fraction(coeff) * sl * sr)


def kappa(algebra: AbAlgebra, sym: SymWord) -> Element:
    """Directly coded cosymmetric cobracket of the Gerstenhaber shape.

    Uses the grading dg - 1 throughout.  When a - b = 1 this must agree
    with :func:`cobracket_doubleprime` term by term; the verifier tests
    that rather than assuming it.
    """
    dprime = lambda w: word_degree(w) - 1
    n = len(sym)
    degs = [dprime(w) for w in sym]
    acc = Element.zero()
    for s in range(n):
        xs = sym[s]
        if len(xs) < 2:
            continue
        others = [i for i in range(n) if i != s]
        for r in range(len(others) + 1):
            for left in itertools.combinations(others, r):
                taken = set(left)
                right = tuple(i for i in others if i not in taken)
                sigma = [0] * n
                for rank, i in enumerate(left):
                    sigma[i] = rank
                sigma[s] = r
                for rank, j in enumerate(right):
                    sigma[j] = r + 1 + rank
                eps = koszul_sign(degs, sigma)
                deg_left = sum(degs[i] for i in left)
                fac_left = tuple(sym[i] for i in left)
                fac_right = tuple(sym[j] for j in right)
                for cut in range(1, len(xs)):
                    u, v = xs[:cut], xs[cut:]
                    du, dv = dprime(u), dprime(v)
                    c0 = eps * _sign(deg_left + du)
                    acc = acc + _pair_with(dprime, fac_left + (u,), (v,) + fac_right, c0)
                    acc = acc + _pair_with(
                        dprime, fac_left + (v,), (u,) + fac_right, c0 * _sign(dv * du)
                    )
    return acc


def poisson_cobracket(algebra: AbAlgebra, sym: SymWord) -> Element:
    """Directly coded coantisymmetric cobracket of the Poisson shape.

    Uses the plain dg grading.  When a - b = 0 this must agree with
    :func:`cobracket_doubleprime`.
    """
    n = len(sym)
    degs = [word_degree(w) for w in sym]
    acc = Element.zero()
    for s in range(n):
        xs = sym[s]
        if len(xs) < 2:
            continue
        others = [i for i in range(n) if i != s]
        for r in range(len(others) + 1):
            for left in itertools.combinations(others, r):
                taken = set(left)
                right = tuple(i for i in others if i not in taken)
                sigma = [0] * n
                for rank, i in enumerate(left):
                    sigma[i] = rank
                sigma[s] = r
                for rank, j in enumerate(right):
                    sigma[j] = r + 1 + rank
                eps = koszul_sign(degs, sigma)
                fac_left = tuple(sym[i] for i in left)
                fac_right = tuple(sym[j] for j in right)
                for cut in range(1, len(xs)):
                    u, v = xs[:cut], xs[cut:]
                    du, dv = word_degree(u), word_degree(v)
                    acc = acc + _pair_with(word_degree, fac_left + (u,), (v,) + fac_right, eps)
                    acc = acc + _pair_with(
                        word_degree, fac_left + (v,), (u,) + fac_right, -eps * _sign(du * dv)
                    )
    return acc


def _pair_with(deg_of, left, right, coeff) -> Element:
    sl, wl = _normalize_with(deg_of, left)
    if wl is None:
        return Element.zero()
    sr, wr = _normalize_with(deg_of, right)
    if wr is None:
        return Element.zero()
    return Element.of((wl, wr), Fraction(coeff) * sl * sr)


# -- equality modulo shuffles ----------------------------------------------


def sym_normal_form(algebra: AbAlgebra, quotient: ShuffleQuotient, v: Element) -> Element:
    """Rewrite every factor of every SymWord to its quotient normal form."""
    return v.map_basis(lambda sym: _nf_sym_word(algebra, quotient, sym))


def _nf_sym_word(algebra: AbAlgebra, quotient: ShuffleQuotient, sym: SymWord) -> Element:
    parts: dict = {(): Fraction(1)}
    for w in sym:
        nfw = quotient.normal_form_word(w)
        new: dict = {}
        for prefix, c in parts.items():
            for w2, c2 in nfw.items():
                key = prefix + (w2,)
                acc = new.get(key, 0) + c * c2
                if acc:
                    new[key] = acc
                else:
                    new.pop(key, None)
        parts = new
    out = Element.zero()
    for factors, c in parts.items():
        out = out + sym_of(algebra, factors, c)
    return out


def sym_is_zero(algebra: AbAlgebra, quotient: ShuffleQuotient, v: Element) -> bool:
    return v.is_zero() or sym_normal_form(algebra, quotient, v).is_zero()


def sym_tensor_normal_form(
    algebra: AbAlgebra, quotient: ShuffleQuotient, v: Element, arity: int
) -> Element:
    deg = lambda sym: sym_degree(algebra, sym)
    for slot in range(arity):
        v = apply_in_slot(v, slot, lambda s: _nf_sym_word(algebra, quotient, s), 0, deg)
    return v


def sym_tensor_is_zero(
    algebra: AbAlgebra, quotient: ShuffleQuotient, v: Element, arity: int
) -> bool:
    return v.is_zero() or sym_tensor_normal_form(algebra, quotient, v, arity).is_zero()
