"""Numeric evaluation of (star) multiple zeta values, polylogarithms, and
exact reduction of arborified zeta values to combinations of them.

The series evaluator follows the iterated cumulative-sum scheme: one array
per nesting level over n <= N (strict sums shift by one, star sums do not),
with the discarded tail estimated and certifiably bounded by the per-level
Euler-Maclaurin models of :mod:`arbozeta.tails`.  All evaluations return a
value together with a certified absolute error bound.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tails
from .errors import (
    DivergentIndex,
    DomainError,
    NonConvergent,
    NotSemiconvergent,
    PrecisionUnreachable,
)
from .forest_algebra import ConvergenceClass, convergence_class, flatten
from .lincomb import Coeff, LinComb
from .trees import Alphabet, Forest
from .words import Word, debinarise, is_semiconvergent_word

Composition = tuple[int, ...]

DEFAULT_PRECISION = 1e-8
DEFAULT_MAX_N = 10**7
MIN_N = 8192

_LD = np.longdouble
_LD_EPS = float(np.finfo(_LD).eps)


def summation_cap(max_n: int | None = None) -> int:
    if max_n is not None:
        return max_n
    env = os.environ.get("ARBOZETA_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


@dataclass(frozen=True)
class MzvEval:
    """A numeric value with a certified absolute error bound."""

    value: float
    abs_error: float
    index: Composition = ()
    flavor: str = "strict"

    def agrees_with(self, other: float, slack: float = 0.0) -> bool:
        return abs(self.value - other) <= self.abs_error + slack


@dataclass(frozen=True)
class PolylogEval:
    value: float
    abs_error: float
    argument: float
    index: Composition = ()


@dataclass(frozen=True)
class MzvCombination:
    """Exact rational combination of composition-indexed zeta values."""

    terms: dict[Composition, Coeff] = field(default_factory=dict)
    flavor: str = "strict"

    def __post_init__(self):
        for index, coeff in self.terms.items():
            if index and index[0] < 2:
                raise NonConvergent(f"divergent index {index} in combination")
            if not coeff:
                raise ValueError("zero coefficient stored in combination")

    def sorted_items(self) -> list[tuple[Composition, Coeff]]:
        return sorted(self.terms.items())

    def all_integer(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)


def _validate_index(s: Composition, flavor: str):
    if flavor not in ("strict", "star"):
        raise ValueError(f"unknown flavor {flavor!r}")
    if any(not isinstance(p, int) or p < 1 for p in s):
        raise DivergentIndex(f"composition parts must be integers >= 1: {s}")
    if s and s[0] < 2:
        raise DivergentIndex(f"series diverges for first part {s[0]}")


def _sum_noise(values, noise) -> float:
    """Roundoff bound for values.sum(): pairwise summation plus input noise."""
    n = len(values)
    depth = max(1, int(math.ceil(math.log2(max(n, 2)))))
    return float(noise.sum()) + depth * _LD_EPS * float(np.abs(values).sum())


def _nested_arrays(s: Composition, n_cap: int, star: bool):
    """Level arrays over n <= n_cap; returns head, anchors and noise bounds.

    Anchors run innermost-first and hold the full partial sums that the tail
    models of :mod:`arbozeta.tails` are pinned to.  A parallel float64
    pipeline propagates per-entry roundoff bounds so the anchors and the head
    carry certified noise estimates.
    """
    k = len(s)
    ns = np.arange(1, n_cap + 1, dtype=_LD)
    current = ns ** (-s[k - 1])
    noise = 3.0 * _LD_EPS * np.abs(current).astype(np.float64)
    anchors: list[float] = []
    noises: list[float] = []
    for j in range(k - 1, 0, -1):
        anchors.append(float(current.sum()))
        noises.append(_sum_noise(current, noise))
        prefix = np.cumsum(current)
        # Sequential cumsum: input noise accumulates and each add incurs
        # eps times the running partial.
        noise_prefix = np.cumsum(noise) + _LD_EPS * np.cumsum(
            np.abs(prefix).astype(np.float64)
        )
        if not star:
            prefix = np.concatenate((np.zeros(1, dtype=_LD), prefix[:-1]))
            noise_prefix = np.concatenate(([0.0], noise_prefix[:-1]))
        power = ns ** (-s[j - 1])
        current = power * prefix
        noise = power.astype(np.float64) * noise_prefix + 3.0 * _LD_EPS * np.abs(
            current
        ).astype(np.float64)
    head = float(current.sum())
    return head, anchors, noises, _sum_noise(current, noise)


def _min_horizon(s: Composition) -> int:
    ones = sum(1 for p in s[1:] if p == 1)
    return max(MIN_N, int(math.exp(ones + 2.2)) + 1)


def _eval_series(s: Composition, star: bool, precision: float, cap: int) -> MzvEval:
    n = _min_horizon(s)
    if n > cap:
        raise PrecisionUnreachable(f"horizon {n} needed for {s} exceeds cap {cap}")
    flavor = "star" if star else "strict"
    while True:
        head, anchors, noises, head_noise = _nested_arrays(s, n, star)
        anchor_point = n if star else n + 1
        tail_est, tail_bound = tails.nested_tail(
            s,
            anchors,
            noises,
            anchor_point=anchor_point,
            tail_start=n + 1,
            include_diagonal=star,
        )
        err = tail_bound + head_noise + 1e-15 * abs(head)
        if err <= precision:
            return MzvEval(head + tail_est, err, s, flavor)
        if 2 * n > cap:
            raise PrecisionUnreachable(
                f"needed error {precision:g} for {flavor} {s}, reached {err:g} at N={n}"
            )
        n *= 2


_MZV_CACHE: dict[tuple[str, Composition], MzvEval] = {}


def eval_mzv(
    s,
    flavor: str = "strict",
    precision: float = DEFAULT_PRECISION,
    max_n: int | None = None,
) -> MzvEval:
    """Multiple zeta value (strict nesting) or its star variant (non-strict)."""
    s = tuple(s)
    _validate_index(s, flavor)
    if not s:
        return MzvEval(1.0, 0.0, s, flavor)
    key = (flavor, s)
    cached = _MZV_CACHE.get(key)
    if cached is not None and cached.abs_error <= precision:
        return cached
    result = _eval_series(s, flavor == "star", precision, summation_cap(max_n))
    _MZV_CACHE[key] = result
    return result


def clear_mzv_cache():
    _MZV_CACHE.clear()


# -- combinations ----------------------------------------------------------------

def reduce_azv(comb: LinComb[Forest] | Forest, flavor: str) -> MzvCombination:
    """Exact reduction of an arborified zeta value to a zeta combination.

    Flavors: ``stuffle`` and ``star`` flatten with weights +1 and -1 over
    positive-integer forests; ``shuffle`` flattens a binary forest with weight
    0 and lands on compositions through debinarisation.  The input combination
    is canonicalized first, so divergent basis forests are admissible as long
    as they cancel.
    """
    if isinstance(comb, Forest):
        comb = LinComb.of(comb)
    if flavor not in ("stuffle", "star", "shuffle"):
        raise ValueError(f"unknown flavor {flavor!r}")
    required = ConvergenceClass.CONV_XY if flavor == "shuffle" else ConvergenceClass.CONV_POSINT
    alphabet = Alphabet.XY if flavor == "shuffle" else Alphabet.POSINT
    for forest in comb:
        if convergence_class(forest, alphabet) is not required:
            raise NonConvergent(f"forest {forest!r} is not convergent for {flavor}")
    lam = {"stuffle": 1, "star": -1, "shuffle": 0}[flavor]
    words = flatten(comb, lam)
    terms: dict[Composition, Coeff] = {}
    for w, coeff in words.items():
        if flavor == "shuffle":
            w = debinarise(w)
        index: Composition = w.letters
        if index and index[0] < 2:
            raise NonConvergent(f"reduction produced divergent word {index}")
        acc = terms.get(index, 0) + coeff
        if acc:
            terms[index] = acc
        else:
            terms.pop(index, None)
    out_flavor = "star" if flavor == "star" else "strict"
    result = MzvCombination(terms, out_flavor)
    if comb.all_integer():
        assert result.all_integer(), "integer input must reduce to integer coefficients"
    return result


def eval_combination(
    comb: MzvCombination,
    precision: float = DEFAULT_PRECISION,
    max_n: int | None = None,
) -> MzvEval:
    """Sum of coeff * zeta(index) with the error budget split across terms."""
    if not comb.terms:
        return MzvEval(0.0, 0.0, (), comb.flavor)
    weight = sum(abs(c) for c in comb.terms.values())
    per_term = precision / (2.0 * float(weight))
    total = 0.0
    err = 0.0
    evaluations: dict[Composition, MzvEval] = {}
    for index, coeff in comb.sorted_items():
        ev = eval_mzv(index, comb.flavor, per_term, max_n)
        evaluations[index] = ev
        total += float(coeff) * ev.value
        err += abs(float(coeff)) * ev.abs_error
    if err > precision:
        # Redistribute the budget toward the dominating terms and retry once.
        for index, coeff in comb.sorted_items():
            share = abs(float(coeff)) * evaluations[index].abs_error / err
            target = precision * share / (2.0 * abs(float(coeff)))
            evaluations[index] = eval_mzv(index, comb.flavor, target, max_n)
        total = sum(float(c) * evaluations[i].value for i, c in comb.terms.items())
        err = sum(abs(float(c)) * evaluations[i].abs_error for i, c in comb.terms.items())
        if err > precision:
            raise PrecisionUnreachable(f"combination error {err:g} exceeds {precision:g}")
    return MzvEval(total, err, (), comb.flavor)


def azv(
    forest_or_comb,
    flavor: str,
    precision: float = DEFAULT_PRECISION,
    max_n: int | None = None,
) -> MzvEval:
    """Arborified zeta value: reduce, then evaluate."""
    return eval_combination(reduce_azv(forest_or_comb, flavor), precision, max_n)


def brute_force_azv(forest: Forest, horizon: int, flavor: str = "stuffle") -> MzvEval:
    """Direct nested summation over the tree structure, truncated at ``horizon``.

    Child variables run strictly below (stuffle) or up to (star) their parent.
    The coarse tail bound majorizes the inner levels by harmonic-log growth;
    this is the desk-scale oracle against the reduction pipeline, so it never
    touches the flattening machinery.
    """
    if flavor not in ("stuffle", "star"):
        raise ValueError(f"unknown flavor {flavor!r}")
    star = flavor == "star"
    ns = np.arange(1, horizon + 1, dtype=_LD)

    def tree_array(tree):
        out = ns ** (-tree.decoration)
        for child in tree.children:
            prefix = np.cumsum(tree_array(child))
            if not star:
                prefix = np.concatenate((np.zeros(1, dtype=_LD), prefix[:-1]))
            out = out * prefix
        return out

    def log_tail(exponent: int, vertices: int, start: int) -> float:
        # sum_{n >= start} n^-exponent (1+ln n)^(vertices-1), via binomial expansion
        p = vertices - 1
        total = 0.0
        for j in range(p + 1):
            total += math.comb(p, j) * tails.em_tail_upper(exponent, j, start)
        return total

    values = []
    tail_bounds = []
    full_bounds = []
    for tree in forest.trees:
        arr = tree_array(tree)
        values.append(float(arr.sum()))
        tail_bounds.append(log_tail(tree.decoration, tree.vertex_count, horizon + 1))
        full_bounds.append(1.0 + log_tail(tree.decoration, tree.vertex_count, 2))
    value = math.prod(values)
    err = 0.0
    for i, tail in enumerate(tail_bounds):
        err += tail * math.prod(
            full_bounds[j] for j in range(len(values)) if j != i
        )
    return MzvEval(value, err, (), "star" if star else "strict")


def star_to_strict(s) -> MzvCombination:
    """Star value as the sum of strict values over all adjacent-part merges."""
    s = tuple(s)
    _validate_index(s, "star")
    if not s:
        return MzvCombination({(): 1}, "strict")
    terms: dict[Composition, Coeff] = {}
    for mask in range(2 ** (len(s) - 1)):
        parts = [s[0]]
        for i in range(1, len(s)):
            if mask >> (i - 1) & 1:
                parts[-1] += s[i]
            else:
                parts.append(s[i])
        index = tuple(parts)
        terms[index] = terms.get(index, 0) + 1
    return MzvCombination(terms, "strict")


# -- polylogarithms ----------------------------------------------------------------

def _polylog_series(s: Composition, z: float, precision: float, cap: int) -> PolylogEval:
    k = len(s)
    r_ones = sum(1 for p in s[1:] if p == 1)
    n = 64
    while True:
        ns = np.arange(1, n + 1, dtype=_LD)
        current = ns ** (-s[k - 1])
        for j in range(k - 1, 0, -1):
            prefix = np.cumsum(current)
            prefix = np.concatenate((np.zeros(1, dtype=_LD), prefix[:-1]))
            current = ns ** (-s[j - 1]) * prefix
        zpow = np.power(_LD(z), ns)
        head = float((zpow * current).sum())
        # Geometric tail: the level product is majorized by 2 per part >= 2
        # and (1 + ln n) per trailing part 1.
        maj = 2.0 ** (k - 1 - r_ones) * (1.0 + math.log(n + 1)) ** r_ones
        ratio = z * math.exp(r_ones / ((n + 1) * (1.0 + math.log(n + 1))))
        if ratio < 1.0:
            tail = z ** (n + 1) * (n + 1) ** float(-s[0]) * maj / (1.0 - ratio)
            err = tail + n * _LD_EPS * abs(head) * 4.0 + 1e-16
            if err <= precision:
                return PolylogEval(head, err, z, s)
        if 2 * n > cap:
            raise PrecisionUnreachable(f"polylog {s} at z={z} stuck at N={n}")
        n *= 2


def eval_polylog(
    s,
    z: float,
    precision: float = DEFAULT_PRECISION,
    max_n: int | None = None,
) -> PolylogEval:
    """Single-variable multiple polylogarithm via its power series, 0 <= z < 1."""
    s = tuple(s)
    if any(not isinstance(p, int) or p < 1 for p in s):
        raise DivergentIndex(f"composition parts must be integers >= 1: {s}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"polylog series needs 0 <= z < 1, got {z}")
    if not s:
        return PolylogEval(1.0, 0.0, z, s)
    if z == 0.0:
        return PolylogEval(0.0, 0.0, z, s)
    return _polylog_series(s, z, precision, summation_cap(max_n))


def eval_arborified_polylog(
    forest_or_comb,
    z: float,
    precision: float = DEFAULT_PRECISION,
    max_n: int | None = None,
) -> PolylogEval:
    """Arborified polylogarithm of a semiconvergent binary forest."""
    comb = (
        LinComb.of(forest_or_comb) if isinstance(forest_or_comb, Forest) else forest_or_comb
    )
    for forest in comb:
        if not convergence_class(forest, Alphabet.XY).is_semiconvergent:
            raise NotSemiconvergent(f"forest {forest!r} is not semiconvergent")
    words = flatten(comb, 0)
    if words.is_zero():
        return PolylogEval(0.0, 0.0, z, ())
    budget = sum(abs(c) for c in (coeff for _, coeff in words.items()))
    per_term = precision / (2.0 * float(budget))
    total = 0.0
    err = 0.0
    for w, coeff in words.sorted_items():
        if not is_semiconvergent_word(w):
            raise NotSemiconvergent(f"flattening produced non-semiconvergent {w!r}")
        ev = eval_polylog(debinarise(w).letters, z, per_term, max_n)
        total += float(coeff) * ev.value
        err += abs(float(coeff)) * ev.abs_error
    return PolylogEval(total, err, z, ())
