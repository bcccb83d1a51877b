"""Certified tail estimation for iterated (non-)strict power sums.

The evaluator computes nested sums by cumulative arrays up to a horizon N and
must bound the discarded tail.  Each level's partial-sum function

    U(n) = sum over m < n (or m <= n) of m^(-t) * U_child(m)

is modeled for n >= N as   C + sum of c[a,p] * n^(-a) * ln(n)^p   plus a
certified error envelope, where the constant C is anchored to the computed
array and the n-dependent terms come from closed-form antiderivatives plus
first-order Euler-Maclaurin boundary corrections.  Every approximation step
(Euler-Maclaurin remainder, dropped high-order terms, anchor noise) is folded
into the envelope, so the final tail estimate carries a rigorous bound up to
floating-point roundoff, which the caller accounts for separately.

Term keys are pairs (a, p) for n^(-a) * ln(n)^p; envelopes map the same keys
to nonnegative magnitudes and are valid for all n >= the anchor point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

Terms = dict[tuple[int, int], float]

A_MAX = 3  # expansion order: n^(-a) terms with a > A_MAX are swept into the envelope


def _falling(p: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= p - i
    return out


def integral_tail_terms(b: int, p: int) -> Terms:
    """Expansion of I(n) = integral_n^inf x^(-b) ln(x)^p dx, exact, for b > 1."""
    return {
        (b - 1, p - j): _falling(p, j) / (b - 1) ** (j + 1)
        for j in range(p + 1)
    }


def eval_terms(terms: Terms, n: float) -> float:
    ln = math.log(n)
    return sum(c * n ** (-a) * ln**p for (a, p), c in terms.items())


def em_tail(b: int, p: int, n: int) -> tuple[float, float]:
    """Estimate and error bound for sum_{m >= n} m^(-b) ln(m)^p, b > 1."""
    ln = math.log(n)
    est = eval_terms(integral_tail_terms(b, p), n)
    est += 0.5 * n ** (-b) * ln**p
    fprime = n ** (-b - 1) * (p * ln ** (p - 1) - b * ln**p)
    est -= fprime / 12.0
    err = (
        b * (b + 1) * eval_terms(integral_tail_terms(b + 2, p), n)
        + (p * (2 * b + 1) * eval_terms(integral_tail_terms(b + 2, p - 1), n) if p else 0.0)
        + (p * (p - 1) * eval_terms(integral_tail_terms(b + 2, p - 2), n) if p >= 2 else 0.0)
    ) / 12.0
    return est, err


def em_tail_upper(b: int, p: int, n: int) -> float:
    est, err = em_tail(b, p, n)
    return abs(est) + err


def _add(terms: Terms, key: tuple[int, int], value: float):
    if value:
        terms[key] = terms.get(key, 0.0) + value


def _antiderivative_terms(b: int, p: int) -> Terms:
    """n-dependent part of integral^n x^(-b) ln(x)^p dx."""
    if b == 1:
        return {(0, p + 1): 1.0 / (p + 1)}
    return {key: -c for key, c in integral_tail_terms(b, p).items()}


def _s_terms(b: int, p: int) -> tuple[Terms, Terms]:
    """n-dependent part and envelope of sum_{m < n} m^(-b) ln(m)^p."""
    terms = dict(_antiderivative_terms(b, p))
    _add(terms, (b, p), -0.5)
    if p:
        _add(terms, (b + 1, p - 1), p / 12.0)
    _add(terms, (b + 1, p), -b / 12.0)
    band: Terms = {}
    for coef, q in ((b * (b + 1), p), (p * (2 * b + 1), p - 1), (p * (p - 1), p - 2)):
        if coef and q >= 0:
            for (a, pp), c in integral_tail_terms(b + 2, q).items():
                _add(band, (a, pp), coef * c / 12.0)
    return terms, band


def _clamp(terms: Terms, band: Terms, n0: int):
    """Sweep n^(-a) with a > A_MAX into the envelope (valid for n >= n0)."""
    for key in [k for k in terms if k[0] > A_MAX]:
        a, p = key
        band_key = (A_MAX, p)
        band[band_key] = band.get(band_key, 0.0) + abs(terms.pop(key)) * n0 ** (A_MAX - a)
    for key in [k for k in band if k[0] > A_MAX]:
        a, p = key
        band_key = (A_MAX, p)
        band[band_key] = band.get(band_key, 0.0) + band.pop(key) * n0 ** (A_MAX - a)


@dataclass
class LevelModel:
    """C + terms(n), with |unmodeled(n)| <= band(n) for n >= anchor."""

    constant: float
    terms: Terms
    band: Terms
    anchor: int


UNIT_MODEL_TERMS: Terms = {}


def unit_model(anchor: int) -> LevelModel:
    return LevelModel(constant=1.0, terms={}, band={}, anchor=anchor)


def level_step(
    t: int,
    child: LevelModel,
    anchor_value: float,
    anchor_noise: float,
    include_diagonal: bool,
) -> LevelModel:
    """Model of U(n) = sum_{m<n or m<=n} m^(-t) * U_child(m), anchored to data.

    ``anchor_value`` is the exact partial sum at the anchor point and
    ``anchor_noise`` bounds its floating-point error.
    """
    n0 = child.anchor
    max_p = max(
        (p for (_, p) in (*child.terms, *child.band)),
        default=0,
    )
    if math.log(n0) <= max_p + 1:
        raise ValueError("anchor too small for the logarithmic orders in play")
    terms: Terms = {}
    band: Terms = {}

    contributions = [((0, 0), child.constant)] + list(child.terms.items())
    for (a, p), coeff in contributions:
        if not coeff:
            continue
        b = t + a
        s_t, s_band = _s_terms(b, p)
        for key, c in s_t.items():
            _add(terms, key, coeff * c)
        for key, mag in s_band.items():
            _add(band, key, abs(coeff) * mag)
        if include_diagonal:
            _add(terms, (b, p), coeff)

    ln0 = math.log(n0)
    for (a, p), mag in child.band.items():
        b = t + a
        if b > 1:
            _add(band, (0, 0), mag * em_tail_upper(b, p, n0))
        else:
            _add(band, (0, p + 1), mag / (p + 1))
            _add(band, (0, 0), mag * ln0**p / n0)
        if include_diagonal:
            _add(band, (b, p), mag)

    _clamp(terms, band, n0)
    delta = eval_terms(band, n0) + anchor_noise
    constant = anchor_value - eval_terms(terms, n0)
    _add(band, (0, 0), delta)
    return LevelModel(constant=constant, terms=terms, band=band, anchor=n0)


def tail_sum(s1: int, model: LevelModel, start: int) -> tuple[float, float]:
    """Estimate and bound for sum_{n >= start} n^(-s1) * U(n), s1 >= 2."""
    est = 0.0
    bound = 0.0
    for (a, p), coeff in [((0, 0), model.constant)] + list(model.terms.items()):
        if not coeff:
            continue
        e, r = em_tail(s1 + a, p, start)
        est += coeff * e
        bound += abs(coeff) * r
    for (a, p), mag in model.band.items():
        bound += mag * em_tail_upper(s1 + a, p, start)
    return est, bound


def nested_tail(
    exponents: tuple[int, ...],
    anchors: list[float],
    anchor_noises: list[float],
    anchor_point: int,
    tail_start: int,
    include_diagonal: bool,
) -> tuple[float, float]:
    """Tail of the full nested sum beyond the computed horizon.

    ``exponents`` is the composition (s1, ..., sk); ``anchors[j]`` holds the
    computed partial sum of level j+2's summand (list runs over levels
    k, k-1, ..., 2 of the nesting, innermost first).
    """
    model = unit_model(anchor_point)
    k = len(exponents)
    for idx, j in enumerate(range(k - 1, 0, -1)):
        model = level_step(
            exponents[j],
            model,
            anchor_value=anchors[idx],
            anchor_noise=anchor_noises[idx],
            include_diagonal=include_diagonal,
        )
    return tail_sum(exponents[0], model, tail_start)
