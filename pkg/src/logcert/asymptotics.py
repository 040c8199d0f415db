"""Audits of asymptotic formulas and bound claims against exact values.

The claimed bounds are treated as statements under test, never as axioms:
several fail at small indices, and the audits report every violating index
plus the threshold from which each side actually holds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath

from .kernel import DEFAULT_PRECISION, log_of_rational, to_mpf
from .report import FIRST_VIOLATION, HOLDS, AnalysisReport
from .sequences import SequenceValues, apery, format_exact, sequence_table


@dataclass(frozen=True)
class AsymptoticEval:
    n: int
    exact: Fraction
    formula: object  # mpf
    relative_error: object  # mpf
    order: str  # "main" | "corrected"


def apery_asymptotic(n: int, order: str = "corrected", precision: int = DEFAULT_PRECISION) -> AsymptoticEval:
    """Saddle-point approximation of the Apery numbers, with optional 1/n term.

    formula = (1+sqrt 2)^(4n+2) / (2 pi n sqrt 2)^(3/2) * (1 - (48-15 sqrt 2)/(64n))
    where the trailing factor is dropped for order="main".
    """
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    if order not in ("main", "corrected"):
        raise ValueError(f"unknown order {order!r}")
    exact = Fraction(apery(n))
    with mpmath.workprec(precision + 32):
        s2 = mpmath.sqrt(2)
        formula = (1 + s2) ** (4 * n + 2) / (2 * mpmath.pi * n * s2) ** mpmath.mpf("1.5")
        if order == "corrected":
            formula *= 1 - (48 - 15 * s2) / (64 * n)
        rel = abs(formula / to_mpf(exact, precision + 32) - 1)
    return AsymptoticEval(n, exact, formula, rel, order)


def weight_profile_eval(kind: str, n: int, k: int) -> Fraction:
    """Exact value of the summand weight profile.

    kind "a": h_k = k^4 / ((4(k-1)^2 - 1)(n+k)^2) for k >= 1 (negative at k=1);
    kind "b": f_k = (n-k)(3k^2+3k+1) / n^4 for 0 <= k <= n-1.
    """
    if kind == "a":
        if k < 1 or k > n:
            raise ValueError(f"a-profile needs 1 <= k <= n, got k = {k}")
        return Fraction(k ** 4, (4 * (k - 1) ** 2 - 1) * (n + k) ** 2)
    if kind == "b":
        if k < 0 or k > n - 1:
            raise ValueError(f"b-profile needs 0 <= k <= n-1, got k = {k}")
        return Fraction((n - k) * (3 * k * k + 3 * k + 1), n ** 4)
    raise ValueError(f"unknown profile kind {kind!r}")


def a_from_weights(n: int) -> Fraction:
    """a_n reassembled as (1/n^3) sum_k C(n,k)^2 C(n+k,k)^2 h_k (exact cross-check)."""
    total = Fraction(0)
    B = n * (n + 1)  # C(n,k) C(n+k,k) at k=1
    for k in range(1, n + 1):
        total += B * B * weight_profile_eval("a", n, k)
        B = B * (n - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total / n ** 3


def b_from_weights(n: int) -> Fraction:
    """b_n reassembled over C(n,k)^2 C(n+k,k)^2 (exact cross-check).

    The exact rearrangement carries an extra (n-k)/n beyond the bound profile
    f_k (which keeps only the first-order weight used for the bound claims).
    """
    total = Fraction(0)
    B = 1
    for k in range(n):
        total += B * B * weight_profile_eval("b", n, k) * Fraction(n - k, n)
        B = B * (n - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total


def _bounds_audit(
    name: str,
    start: int,
    end: int,
    lower,
    upper,
    extra_notes: str = "",
    extra_details: Optional[dict] = None,
) -> AnalysisReport:
    vals = sequence_table(name, end - sequence_table(name, 1).offset + 1)
    lower_viol: List[int] = []
    upper_viol: List[int] = []
    for n in range(start, end + 1):
        v = vals[n]
        if not lower(n) <= v:
            lower_viol.append(n)
        if not v <= upper(n):
            upper_viol.append(n)
    def threshold(violations):
        if not violations:
            return start
        return violations[-1] + 1 if violations[-1] < end else None

    details = {
        "lower_violations": lower_viol,
        "upper_violations": upper_viol,
        "lower_threshold": threshold(lower_viol),
        "upper_threshold": threshold(upper_viol),
    }
    if extra_details:
        details.update(extra_details)
    first = min(lower_viol + upper_viol) if lower_viol or upper_viol else None
    if first is None:
        return AnalysisReport(name, "claimed-bounds", HOLDS, start, end, notes=extra_notes, details=details)
    side = "lower" if first in lower_viol else "upper"
    witness = vals[first] - (lower(first) if side == "lower" else upper(first))
    return AnalysisReport(
        name,
        "claimed-bounds",
        FIRST_VIOLATION,
        start,
        end,
        witness_index=first,
        witness=format_exact(witness),
        notes=(f"{side} bound fails first; " + extra_notes).strip("; "),
        details=details,
    )


def a_bounds_audit(start: int, end: int) -> AnalysisReport:
    """Check A_n/(4n^5) <= a_n <= A_n/(16n^3) exactly, index by index."""
    A = sequence_table("apery", end + 1)
    notes = (
        "profile facts: h_1 < 0 for every n, and h_n exceeds 1/16, so the claimed "
        "profile bounds 1/(4n^2) <= h_k <= 1/16 fail at both edges of the k-range"
    )
    return _bounds_audit(
        "a",
        start,
        end,
        lower=lambda n: Fraction(A[n], 4 * n ** 5),
        upper=lambda n: Fraction(A[n], 16 * n ** 3),
        extra_notes=notes,
    )


def b_profile_extrema(n: int, precision: int = DEFAULT_PRECISION) -> dict:
    """Continuous vs discrete extrema of the b-profile f_k at fixed n."""
    with mpmath.workprec(precision):
        disc = mpmath.sqrt(n * n + n)
        k_hi = (n - 1 + disc) / 3
        k_lo = (n - 1 - disc) / 3

        def f(k):
            return (n - k) * (3 * k * k + 3 * k + 1) / mpmath.mpf(n) ** 4

        discrete = [(weight_profile_eval("b", n, k), k) for k in range(n)]
        f_discrete_max, argmax = max(discrete)
        f_discrete_min, argmin = min(discrete)
        return {
            "k_star_max": k_hi,
            "k_star_min": k_lo,
            "f_at_k_star_max": f(k_hi),
            "f_at_k_star_min": f(k_lo),
            "f_discrete_max": f_discrete_max,
            "f_discrete_argmax": argmax,
            "f_discrete_min": f_discrete_min,
            "f_discrete_argmin": argmin,
            "f_at_zero": weight_profile_eval("b", n, 0),
        }


def b_bounds_audit(start: int, end: int, precision: int = DEFAULT_PRECISION) -> AnalysisReport:
    """Check S_n/(4n^2) <= b_n <= (4/9) S_n exactly, plus f-profile diagnostics."""
    S = sequence_table("s", end)
    prof = b_profile_extrema(max(end, 2), precision)
    notes = (
        "f(0) = 1/n^3 sits below the asymptotic minimum expression ~1/(4n^2) for n > 4; "
        "the negative critical point k*_min lies outside [0, n-1], so the claimed "
        "f_min location does not correspond to an admissible k"
    )
    extra = {
        "profile_at_n": max(end, 2),
        "k_star_max": mpmath.nstr(prof["k_star_max"], 12),
        "f_at_k_star_max": mpmath.nstr(prof["f_at_k_star_max"], 12),
        "f_discrete_max": prof["f_discrete_max"],
        "f_discrete_min": prof["f_discrete_min"],
        "f_at_zero": prof["f_at_zero"],
    }
    return _bounds_audit(
        "b",
        start,
        end,
        lower=lambda n: Fraction(S[n], 4 * n ** 2),
        upper=lambda n: Fraction(4 * S[n], 9),
        extra_notes=notes,
        extra_details=extra,
    )


def decay_exponent_fit(
    vals: SequenceValues,
    growth_base,
    window: Tuple[int, int],
    precision: int = DEFAULT_PRECISION,
):
    """Polynomial decay exponent t in u_n ~ const * base^n / n^t, by regression.

    Least-squares slope of ln(u_n / base^n) against ln n over the window;
    returns t (the negated slope) as an mpf.
    """
    lo, hi = window
    if not vals.covers(lo, hi):
        raise ValueError(f"window [{lo}, {hi}] outside available indices")
    with mpmath.workprec(precision):
        base = mpmath.mpf(growth_base) if not isinstance(growth_base, Fraction) else to_mpf(growth_base, precision)
        if not base > 0:
            raise ValueError("growth base must be positive")
        log_base = mpmath.log(base)
        xs, ys = [], []
        for n in range(lo, hi + 1):
            if vals[n] <= 0:
                raise ValueError(f"{vals.name}: nonpositive term at index {n}")
            xs.append(mpmath.log(mpmath.mpf(n)))
            ys.append(log_of_rational(vals[n], precision) - n * log_base)
        count = len(xs)
        sx = mpmath.fsum(xs)
        sy = mpmath.fsum(ys)
        sxx = mpmath.fsum(x * x for x in xs)
        sxy = mpmath.fsum(x * y for x, y in zip(xs, ys))
        slope = (count * sxy - sx * sy) / (count * sxx - sx * sx)
        return -slope
