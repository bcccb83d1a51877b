"""Structure maps on decorated forests.

* ``flatten``: the operated-algebra morphism onto words that sends grafting to
  left concatenation and forest concatenation to the lambda-shuffle.
* ``shuffle_forests``: the lambda-shuffle product on trees, defined by a
  grafting rule on pairs of trees and a 1/(k*n)-weighted redistribution rule
  when either argument is a proper forest.
* ``binarise_forest`` / ``debinarise_forest``: the branched binarisation
  sending a vertex decorated n to a chain of n-1 x-vertices over a y-vertex.
* convergence classification for both decoration alphabets.
"""
from __future__ import annotations

import enum
from fractions import Fraction

from .errors import NotInImage, SemigroupRequired
from .lincomb import Coeff, LinComb
from .trees import (
    EMPTY_FOREST,
    Alphabet,
    Forest,
    Tree,
    b_plus,
    concat_forests,
    decoration_product,
    merge_alphabets,
    tree_forest,
)
from .words import Word, shuffle_words, shuffle_words_basis

ForestComb = LinComb[Forest]
WordComb = LinComb[Word]


def _require_semigroup(lam: Coeff, *alphabets: Alphabet | None):
    if lam:
        for alph in alphabets:
            if alph is not None and alph is not Alphabet.POSINT:
                raise SemigroupRequired(
                    "contracting product (lambda != 0) needs positive-integer decorations"
                )


# -- flattening ---------------------------------------------------------------

_FLATTEN_CACHE: dict = {}


def flatten_forest(forest: Forest, lam: Coeff) -> WordComb:
    """Flattening of weight lambda of a basis forest."""
    _require_semigroup(lam, forest.alphabet)
    if isinstance(lam, Fraction) and lam.denominator == 1:
        lam = int(lam)
    return _flatten_rec(forest, lam)


def _flatten_rec(forest: Forest, lam: Coeff) -> WordComb:
    if not forest:
        return LinComb.of(Word())
    key = (forest, lam)
    cached = _FLATTEN_CACHE.get(key)
    if cached is not None:
        return cached
    if forest.is_tree():
        tree = forest.trees[0]
        inner = _flatten_rec(Forest(tree.children), lam)
        out = inner.map_basis(lambda w: Word((tree.decoration,) + w.letters))
    else:
        trees = forest.trees
        out = _flatten_rec(tree_forest(trees[0]), lam)
        for tree in trees[1:]:
            out = shuffle_words(out, _flatten_rec(tree_forest(tree), lam), lam)
    _FLATTEN_CACHE[key] = out
    return out


def flatten(comb: ForestComb | Forest, lam: Coeff) -> WordComb:
    """Linear extension of the flattening map."""
    if isinstance(comb, Forest):
        comb = LinComb.of(comb)
    out: WordComb = LinComb.zero()
    for forest, coeff in comb.items():
        out = out + flatten_forest(forest, lam).scale(coeff)
    return out


# -- lambda-shuffle on trees --------------------------------------------------

_TREE_SHUFFLE_CACHE: dict = {}


def shuffle_forests_basis(a: Forest, b: Forest, lam: Coeff) -> ForestComb:
    """Lambda-shuffle of two basis forests."""
    merge_alphabets(a.alphabet, b.alphabet)
    _require_semigroup(lam, a.alphabet, b.alphabet)
    if isinstance(lam, Fraction) and lam.denominator == 1:
        lam = int(lam)
    return _tree_shuffle_rec(a, b, lam)


def _graft(dec, comb: ForestComb) -> ForestComb:
    return comb.map_basis(lambda f: tree_forest(b_plus(dec, f)))


def _tree_shuffle_rec(a: Forest, b: Forest, lam: Coeff) -> ForestComb:
    if not a:
        return LinComb.of(b)
    if not b:
        return LinComb.of(a)
    key = (a, b, lam)
    cached = _TREE_SHUFFLE_CACHE.get(key)
    if cached is not None:
        return cached
    if a.is_tree() and b.is_tree():
        ta, tb = a.trees[0], b.trees[0]
        fa, fb = Forest(ta.children), Forest(tb.children)
        out = _graft(ta.decoration, _tree_shuffle_rec(fa, b, lam)) + _graft(
            tb.decoration, _tree_shuffle_rec(a, fb, lam)
        )
        if lam:
            contracted = decoration_product(ta.decoration, tb.decoration)
            out = out + _graft(contracted, _tree_shuffle_rec(fa, fb, lam)).scale(lam)
    else:
        k, n = len(a.trees), len(b.trees)
        out = LinComb.zero()
        for i in range(k):
            rest_a = a.without(i)
            for j in range(n):
                rest = concat_forests(rest_a, b.without(j))
                pair = _tree_shuffle_rec(tree_forest(a.trees[i]), tree_forest(b.trees[j]), lam)
                out = out + pair.map_basis(lambda f, rest=rest: concat_forests(f, rest))
        out = out.scale(Fraction(1, k * n))
    _TREE_SHUFFLE_CACHE[key] = out
    return out


def shuffle_forests(a: ForestComb | Forest, b: ForestComb | Forest, lam: Coeff) -> ForestComb:
    """Bilinear lambda-shuffle on linear combinations of forests."""
    if isinstance(a, Forest):
        a = LinComb.of(a)
    if isinstance(b, Forest):
        b = LinComb.of(b)
    return a.bilinear(b, lambda f1, f2: shuffle_forests_basis(f1, f2, lam))


def concat_comb(a: ForestComb | Forest, b: ForestComb | Forest) -> ForestComb:
    """Bilinear extension of forest concatenation."""
    if isinstance(a, Forest):
        a = LinComb.of(a)
    if isinstance(b, Forest):
        b = LinComb.of(b)
    return a.bilinear(b, concat_forests)


def associator(f1: Forest, f2: Forest, f3: Forest, lam: Coeff) -> ForestComb:
    """(f1 sh f2) sh f3 - f1 sh (f2 sh f3) for the lambda-shuffle on trees."""
    left = shuffle_forests(shuffle_forests_basis(f1, f2, lam), LinComb.of(f3), lam)
    right = shuffle_forests(LinComb.of(f1), shuffle_forests_basis(f2, f3, lam), lam)
    return left - right


def clear_forest_caches():
    _FLATTEN_CACHE.clear()
    _TREE_SHUFFLE_CACHE.clear()


# -- branched binarisation ----------------------------------------------------

def binarise_tree(tree: Tree) -> Tree:
    """Vertex decorated n becomes a chain of n-1 x's over a y carrying the children."""
    dec = tree.decoration
    if not isinstance(dec, int) or dec < 1:
        raise SemigroupRequired("branched binarisation needs positive-integer decorations")
    node = b_plus("y", binarise_forest(Forest(tree.children)))
    for _ in range(dec - 1):
        node = b_plus("x", tree_forest(node))
    return node


def binarise_forest(forest: Forest) -> Forest:
    return Forest(tuple(binarise_tree(t) for t in forest.trees))


def binarise_comb(comb: ForestComb | Forest) -> ForestComb:
    if isinstance(comb, Forest):
        comb = LinComb.of(comb)
    return comb.map_basis(binarise_forest)


def debinarise_tree(tree: Tree) -> Tree:
    """Strict inverse of :func:`binarise_tree`; raises NotInImage off the image."""
    run = 0
    node = tree
    while node.decoration == "x":
        if len(node.children) != 1:
            raise NotInImage("x-vertex must have exactly one child")
        run += 1
        node = node.children[0]
    if node.decoration != "y":
        raise NotInImage(f"chain ends in {node.decoration!r}, expected y")
    return b_plus(run + 1, debinarise_forest(Forest(node.children)))


def debinarise_forest(forest: Forest) -> Forest:
    return Forest(tuple(debinarise_tree(t) for t in forest.trees))


def debinarise_comb(comb: ForestComb | Forest) -> ForestComb:
    if isinstance(comb, Forest):
        comb = LinComb.of(comb)
    return comb.map_basis(debinarise_forest)


# -- convergence ---------------------------------------------------------------

class ConvergenceClass(enum.Enum):
    CONV_POSINT = "convergent"          # every root decoration >= 2
    CONV_XY = "convergent-xy"           # semiconvergent with all roots x
    SEMI_XY = "semiconvergent-xy"       # leaves and branching vertices all y
    NOT_CONVERGENT = "not-convergent"

    @property
    def is_convergent(self) -> bool:
        return self in (ConvergenceClass.CONV_POSINT, ConvergenceClass.CONV_XY)

    @property
    def is_semiconvergent(self) -> bool:
        return self is not ConvergenceClass.NOT_CONVERGENT


def _xy_semiconvergent(tree: Tree) -> bool:
    if not tree.children:
        return tree.decoration == "y"
    if len(tree.children) > 1 and tree.decoration != "y":
        return False
    return all(_xy_semiconvergent(c) for c in tree.children)


def convergence_class(forest: Forest, alphabet: Alphabet | None = None) -> ConvergenceClass:
    """Strongest convergence class of a forest.

    The empty forest is convergent in every alphabet; pass ``alphabet`` to pick
    which class tag it reports (positive integers by default).
    """
    alph = forest.alphabet or alphabet or Alphabet.POSINT
    if forest.alphabet is not None and alphabet is not None:
        merge_alphabets(forest.alphabet, alphabet)
    if alph is Alphabet.POSINT:
        if all(t.decoration >= 2 for t in forest.trees):
            return ConvergenceClass.CONV_POSINT
        return ConvergenceClass.NOT_CONVERGENT
    if alph is Alphabet.XY:
        if not all(_xy_semiconvergent(t) for t in forest.trees):
            return ConvergenceClass.NOT_CONVERGENT
        if all(t.decoration == "x" for t in forest.trees):
            return ConvergenceClass.CONV_XY
        return ConvergenceClass.SEMI_XY
    return ConvergenceClass.NOT_CONVERGENT


def is_convergent_forest(forest: Forest) -> bool:
    return convergence_class(forest).is_convergent
