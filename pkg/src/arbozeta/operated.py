"""Branched and lifted maps for user-supplied operators, with exact models.

An operator model packs a commutative-algebra carrier (values supporting
``+``, ``*`` and scaling by rationals), the map being branched, and an
embedding of decorations into the carrier.  The branched map is the unique
operated-algebra morphism determined by

    branch(empty) = 1,   branch(F1 F2) = branch(F1) branch(F2),
    branch(graft(w, F)) = op(embed(w) * branch(F)).

Two exact carrier families verify the factorization theorems symbolically:
truncated rational sequences under cumulative sums (weights +1 and -1) and
rational polynomials under integration from zero (weight 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .forest_algebra import flatten_forest, shuffle_forests_basis
from .lincomb import Coeff, LinComb
from .trees import Decoration, Forest, Tree
from .words import Word


@dataclass(frozen=True)
class OperatorModel:
    """A map ``op`` on a commutative algebra plus a decoration embedding."""

    name: str
    one: object
    op: Callable
    embed: Callable[[Decoration], object]
    weight: Coeff
    _tree_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _word_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def branch_tree(self, tree: Tree):
        cached = self._tree_cache.get(tree)
        if cached is None:
            cached = self.op(self.embed(tree.decoration) * self.branch(Forest(tree.children)))
            self._tree_cache[tree] = cached
        return cached

    def branch(self, forest: Forest | LinComb[Forest]):
        """The branched map, extended linearly over combinations."""
        if isinstance(forest, LinComb):
            acc = None
            for basis, coeff in forest.items():
                term = self.branch(basis) * coeff
                acc = term if acc is None else acc + term
            return acc if acc is not None else self.one * 0
        out = self.one
        for tree in forest.trees:
            out = out * self.branch_tree(tree)
        return out

    def branch_word(self, w: Word | LinComb[Word]):
        """The word-restricted branched map (ladder recursion)."""
        if isinstance(w, LinComb):
            acc = None
            for basis, coeff in w.items():
                term = self.branch_word(basis) * coeff
                acc = term if acc is None else acc + term
            return acc if acc is not None else self.one * 0
        cached = self._word_cache.get(w)
        if cached is None:
            cached = self.one
            if w.letters:
                rest = Word(w.letters[1:])
                cached = self.op(self.embed(w.letters[0]) * self.branch_word(rest))
            self._word_cache[w] = cached
        return cached


def lift(mapping: Callable[[Decoration], Decoration], value):
    """Decoration-wise relabeling of trees, forests or words (shape-preserving)."""
    if isinstance(value, Tree):
        return Tree(mapping(value.decoration), tuple(lift(mapping, c) for c in value.children))
    if isinstance(value, Forest):
        return Forest(tuple(lift(mapping, t) for t in value.trees))
    if isinstance(value, Word):
        return Word(tuple(mapping(l) for l in value.letters))
    raise TypeError(f"cannot lift over {type(value).__name__}")


def check_rota_baxter(op: Callable, samples: list[tuple], lam: Coeff) -> bool:
    """Exact check of op(a)op(b) = op(a op(b)) + op(op(a) b) + lam op(a b) on samples."""
    for a, b in samples:
        lhs = op(a) * op(b)
        rhs = op(a * op(b)) + op(op(a) * b) + op(a * b) * lam
        if lhs != rhs:
            return False
    return True


def verify_factorization(model: OperatorModel, forest: Forest) -> bool:
    """Branched map equals word-branched map after flattening, exactly."""
    direct = model.branch(forest)
    through_words = model.branch_word(flatten_forest(forest, model.weight))
    return direct == through_words


def verify_tree_shuffle_morphism(model: OperatorModel, f1: Forest, f2: Forest) -> bool:
    """Branched map is multiplicative for the matching lambda-shuffle on trees."""
    lhs = model.branch(shuffle_forests_basis(f1, f2, model.weight))
    rhs = model.branch(f1) * model.branch(f2)
    return lhs == rhs


# -- truncated rational sequences ----------------------------------------------

@dataclass(frozen=True)
class TruncSeq:
    """Sequence of rationals indexed 1..N with the pointwise product."""

    values: tuple[Fraction, ...]

    def __add__(self, other: "TruncSeq") -> "TruncSeq":
        return TruncSeq(tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def __mul__(self, other) -> "TruncSeq":
        if isinstance(other, TruncSeq):
            return TruncSeq(
                tuple(a * b for a, b in zip(self.values, other.values, strict=True))
            )
        return TruncSeq(tuple(a * other for a in self.values))

    __rmul__ = __mul__

    @classmethod
    def ones(cls, horizon: int) -> "TruncSeq":
        return cls((Fraction(1),) * horizon)

    @classmethod
    def power(cls, exponent: int, horizon: int) -> "TruncSeq":
        """The sequence k^(-exponent), k = 1..horizon."""
        return cls(tuple(Fraction(1, k**exponent) for k in range(1, horizon + 1)))


def cumsum_inclusive(seq: TruncSeq) -> TruncSeq:
    """(sum over m <= n); Rota-Baxter of weight -1."""
    out = []
    acc = Fraction(0)
    for v in seq.values:
        acc += v
        out.append(acc)
    return TruncSeq(tuple(out))


def cumsum_strict(seq: TruncSeq) -> TruncSeq:
    """(sum over m < n); Rota-Baxter of weight +1."""
    out = []
    acc = Fraction(0)
    for v in seq.values:
        out.append(acc)
        acc += v
    return TruncSeq(tuple(out))


def strict_sum_model(horizon: int = 12) -> OperatorModel:
    return OperatorModel(
        name="strict-sum",
        one=TruncSeq.ones(horizon),
        op=cumsum_strict,
        embed=lambda n: TruncSeq.power(n, horizon),
        weight=1,
    )


def nonstrict_sum_model(horizon: int = 12) -> OperatorModel:
    return OperatorModel(
        name="nonstrict-sum",
        one=TruncSeq.ones(horizon),
        op=cumsum_inclusive,
        embed=lambda n: TruncSeq.power(n, horizon),
        weight=-1,
    )


def broken_sum_model(horizon: int = 12) -> OperatorModel:
    """Negative control: a constant offset destroys the Rota-Baxter identity."""
    def op(seq: TruncSeq) -> TruncSeq:
        return cumsum_strict(seq) + TruncSeq.ones(horizon)

    return OperatorModel(
        name="broken-sum",
        one=TruncSeq.ones(horizon),
        op=op,
        embed=lambda n: TruncSeq.power(n, horizon),
        weight=1,
    )


# -- rational polynomials --------------------------------------------------------

@dataclass(frozen=True)
class PolyQ:
    """Polynomial over the rationals; coefficient i belongs to x^i."""

    coeffs: tuple[Fraction, ...] = ()

    @staticmethod
    def _trim(coeffs: list[Fraction]) -> "PolyQ":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return PolyQ(tuple(coeffs))

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return self._trim(out)

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            if not self.coeffs or not other.coeffs:
                return PolyQ()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return self._trim(out)
        return self._trim([c * other for c in self.coeffs])

    __rmul__ = __mul__

    @classmethod
    def monomial(cls, degree: int, coeff: Coeff = 1) -> "PolyQ":
        return cls((Fraction(0),) * degree + (Fraction(coeff),))


def integrate_from_zero(p: PolyQ) -> PolyQ:
    """x^k -> x^(k+1)/(k+1); Rota-Baxter of weight 0."""
    return PolyQ((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(p.coeffs)))


def integration_model() -> OperatorModel:
    return OperatorModel(
        name="integration",
        one=PolyQ.monomial(0),
        op=integrate_from_zero,
        embed=lambda n: PolyQ.monomial(n),
        weight=0,
    )
