"""Finite formal sums of basis elements with exact rational coefficients.

Basis elements are any hashable values carrying a ``sort_key`` attribute
(canonical forests and words).  Coefficients are ``int`` or
``fractions.Fraction``; integer values stay plain ints so the common
integer-coefficient paths avoid Fraction overhead.  Zero coefficients are
never stored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

B = TypeVar("B", bound=Hashable)

Coeff = int | Fraction


def _norm(q: Coeff) -> Coeff:
    if isinstance(q, Fraction) and q.denominator == 1:
        return int(q)
    return q


class LinComb(Generic[B]):
    """Immutable-by-convention map basis -> nonzero rational coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[B, Coeff] | Iterable[tuple[B, Coeff]] = ()):
        data: dict[B, Coeff] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for basis, coeff in items:
            if coeff:
                acc = data.get(basis, 0) + coeff
                if acc:
                    data[basis] = _norm(acc)
                else:
                    data.pop(basis, None)
        self._terms = data

    @classmethod
    def of(cls, basis: B, coeff: Coeff = 1) -> "LinComb[B]":
        return cls({basis: coeff} if coeff else {})

    @classmethod
    def zero(cls) -> "LinComb[B]":
        return cls()

    def items(self) -> Iterator[tuple[B, Coeff]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[B, Coeff]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def coefficient(self, basis: B) -> Coeff:
        return self._terms.get(basis, 0)

    def support(self) -> set[B]:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[B]:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LinComb[B]") -> "LinComb[B]":
        if not isinstance(other, LinComb):
            return NotImplemented
        data = dict(self._terms)
        for basis, coeff in other._terms.items():
            acc = data.get(basis, 0) + coeff
            if acc:
                data[basis] = _norm(acc)
            else:
                data.pop(basis, None)
        out = LinComb.__new__(LinComb)
        out._terms = data
        return out

    def __sub__(self, other: "LinComb[B]") -> "LinComb[B]":
        return self + other.scale(-1)

    def __neg__(self) -> "LinComb[B]":
        return self.scale(-1)

    def scale(self, q: Coeff) -> "LinComb[B]":
        if not q:
            return LinComb()
        out = LinComb.__new__(LinComb)
        out._terms = {b: _norm(c * q) for b, c in self._terms.items()}
        return out

    def map_basis(self, fn: Callable[[B], Hashable]) -> "LinComb":
        """Linear extension of a basis map (values may collide and recombine)."""
        return LinComb((fn(b), c) for b, c in self._terms.items())

    def bilinear(
        self,
        other: "LinComb",
        product: Callable[[B, B], "LinComb | Hashable"],
    ) -> "LinComb":
        """Bilinear extension of a product on basis elements.

        ``product`` may return either a basis element or a LinComb.
        """
        pairs: list[tuple[Hashable, Coeff]] = []
        for b1, c1 in self._terms.items():
            for b2, c2 in other._terms.items():
                res = product(b1, b2)
                c = c1 * c2
                if isinstance(res, LinComb):
                    for b, q in res._terms.items():
                        pairs.append((b, c * q))
                else:
                    pairs.append((res, c))
        return LinComb(pairs)

    def coefficient_sum(self) -> Coeff:
        return _norm(sum(self._terms.values(), start=Fraction(0)))

    def all_integer(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def __repr__(self) -> str:
        if not self._terms:
            return "LinComb(0)"
        inner = " + ".join(f"{c}*{b!r}" for b, c in self._terms.items())
        return f"LinComb({inner})"
