"""Words over a decoration alphabet: concatenation, lambda-shuffles, binarisation.

The lambda-shuffle interpolates the shuffle (lambda = 0), stuffle (lambda = 1)
and anti-stuffle (lambda = -1) products through one recursion; the contraction
term multiplies letters in the additive semigroup of positive integers, so a
nonzero lambda demands that alphabet.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import NotSemiconvergent, SemigroupRequired, UnsupportedAlphabet
from .lincomb import Coeff, LinComb
from .trees import (
    Alphabet,
    Decoration,
    alphabet_of,
    decoration_key,
    decoration_product,
    merge_alphabets,
)


@dataclass(frozen=True)
class Word:
    """Finite letter sequence; the empty word is the unit of concatenation."""

    letters: tuple[Decoration, ...] = ()

    def __post_init__(self):
        alph = None
        for letter in self.letters:
            alph = merge_alphabets(alph, alphabet_of(letter))

    @cached_property
    def sort_key(self) -> tuple:
        return tuple(decoration_key(l) for l in self.letters)

    @cached_property
    def alphabet(self) -> Alphabet | None:
        return alphabet_of(self.letters[0]) if self.letters else None

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, idx):
        return self.letters[idx]

    def decoration_count(self, dec: Decoration) -> int:
        return sum(1 for l in self.letters if l == dec)

    def weight(self) -> int:
        """Additive weight; positive-integer alphabet only."""
        if self.letters and self.alphabet is not Alphabet.POSINT:
            raise UnsupportedAlphabet("additive weight needs positive-integer letters")
        return sum(self.letters)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)!r})"


EMPTY_WORD = Word()


def word(letters: Iterable[Decoration]) -> Word:
    return Word(tuple(letters))


def concat_words(a: Word, b: Word) -> Word:
    merge_alphabets(a.alphabet, b.alphabet)
    return Word(a.letters + b.letters)


def prepend(letter: Decoration, comb: LinComb[Word]) -> LinComb[Word]:
    return comb.map_basis(lambda w: Word((letter,) + w.letters))


def _require_semigroup(lam: Coeff, *alphabets: Alphabet | None):
    if lam:
        for alph in alphabets:
            if alph is not None and alph is not Alphabet.POSINT:
                raise SemigroupRequired(
                    "contracting shuffle (lambda != 0) needs positive-integer letters"
                )


_SHUFFLE_CACHE: dict = {}


def shuffle_words_basis(a: Word, b: Word, lam: Coeff) -> LinComb[Word]:
    """Lambda-shuffle of two basis words."""
    merge_alphabets(a.alphabet, b.alphabet)
    _require_semigroup(lam, a.alphabet, b.alphabet)
    if isinstance(lam, Fraction) and lam.denominator == 1:
        lam = int(lam)
    return _shuffle_rec(a.letters, b.letters, lam)


def _shuffle_rec(u: tuple, v: tuple, lam: Coeff) -> LinComb[Word]:
    if not u:
        return LinComb.of(Word(v))
    if not v:
        return LinComb.of(Word(u))
    key = (u, v, lam)
    cached = _SHUFFLE_CACHE.get(key)
    if cached is not None:
        return cached
    head_u, rest_u = u[0], u[1:]
    head_v, rest_v = v[0], v[1:]
    out = prepend(head_u, _shuffle_rec(rest_u, v, lam)) + prepend(
        head_v, _shuffle_rec(u, rest_v, lam)
    )
    if lam:
        contracted = decoration_product(head_u, head_v)
        out = out + prepend(contracted, _shuffle_rec(rest_u, rest_v, lam)).scale(lam)
    _SHUFFLE_CACHE[key] = out
    return out


def shuffle_words(a: LinComb[Word] | Word, b: LinComb[Word] | Word, lam: Coeff) -> LinComb[Word]:
    """Bilinear lambda-shuffle on linear combinations of words."""
    if isinstance(a, Word):
        a = LinComb.of(a)
    if isinstance(b, Word):
        b = LinComb.of(b)
    return a.bilinear(b, lambda w1, w2: shuffle_words_basis(w1, w2, lam))


def clear_shuffle_cache():
    _SHUFFLE_CACHE.clear()


# -- convergence predicates ------------------------------------------------

def is_convergent_word(w: Word) -> bool:
    """Empty word, or first letter >= 2 (positive integers) / starts x and ends y."""
    if not w:
        return True
    if w.alphabet is Alphabet.POSINT:
        return w.letters[0] >= 2
    if w.alphabet is Alphabet.XY:
        return w.letters[0] == "x" and w.letters[-1] == "y"
    raise UnsupportedAlphabet("convergence is defined on positive-integer or {x,y} words")


def is_semiconvergent_word(w: Word) -> bool:
    """Binary words ending in y; on positive integers every word qualifies."""
    if not w:
        return True
    if w.alphabet is Alphabet.XY:
        return w.letters[-1] == "y"
    if w.alphabet is Alphabet.POSINT:
        return True
    raise UnsupportedAlphabet("convergence is defined on positive-integer or {x,y} words")


# -- binarisation ------------------------------------------------------------

def binarise(w: Word | Iterable[int]) -> Word:
    """Composition (n1..nk) -> binary word x^(n1-1) y ... x^(nk-1) y."""
    parts = w.letters if isinstance(w, Word) else tuple(w)
    letters: list[str] = []
    for part in parts:
        if not isinstance(part, int) or part < 1:
            raise UnsupportedAlphabet("binarisation needs positive-integer letters")
        letters.extend("x" * (part - 1))
        letters.append("y")
    return Word(tuple(letters))


def debinarise(b: Word) -> Word:
    """Inverse of :func:`binarise` on semiconvergent binary words."""
    if b and b.alphabet is not Alphabet.XY:
        raise NotSemiconvergent("debinarise needs a word over {x,y}")
    if b and b.letters[-1] != "y":
        raise NotSemiconvergent(f"word does not end in y: {b.letters}")
    parts: list[int] = []
    run = 0
    for letter in b.letters:
        if letter == "x":
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return Word(tuple(parts))
