"""Ratio/difference operators and certification of log-behavior properties.

Everything that certifies works on exact rationals; high-precision floats only
appear where a quantity is genuinely transcendental (logs, fitted exponents),
and there always with an explicit precision and an error margin.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    def mpz(x):
        return int(x)

from .kernel import DEFAULT_PRECISION, log_of_rational, to_mpf
from .report import FIRST_VIOLATION, HOLDS, MIXED, THRESHOLD, AnalysisReport
from .sequences import SequenceValues, format_exact


def ratio_seq(vals: SequenceValues) -> SequenceValues:
    """r_n = u_{n+1} / u_n, indexed at n."""
    out = []
    for n in range(vals.offset, vals.last_index):
        if vals[n] == 0:
            raise ZeroDivisionError(f"{vals.name}: zero term at index {n}")
        out.append(vals[n + 1] / vals[n])
    return SequenceValues(f"{vals.name}:ratio", vals.offset, out)


def ratio2_seq(vals: SequenceValues) -> SequenceValues:
    """Second ratio u_n * u_{n+2} / u_{n+1}^2, indexed at n."""
    out = []
    for n in range(vals.offset, vals.last_index - 1):
        if vals[n + 1] == 0 or vals[n] == 0:
            raise ZeroDivisionError(f"{vals.name}: zero term near index {n}")
        out.append(vals[n] * vals[n + 2] / vals[n + 1] ** 2)
    return SequenceValues(f"{vals.name}:ratio2", vals.offset, out)


def L_operator(vals: SequenceValues, k: int = 1) -> SequenceValues:
    """k-fold application of u_n -> u_{n+2} u_n - u_{n+1}^2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    current = vals
    for _ in range(k):
        if len(current) < 3:
            raise ValueError(f"{vals.name}: not enough terms for L^{k}")
        out = [
            current[n] * current[n + 2] - current[n + 1] ** 2
            for n in range(current.offset, current.last_index - 1)
        ]
        current = SequenceValues(f"{current.name}:L", current.offset, out)
    return current


def classify_log_behavior(vals: SequenceValues, horizon: int) -> AnalysisReport:
    """Minimal N from which the L-sign is constant on [N, horizon-2].

    Works on the positive tail of the sequence; negative leading terms (such as
    a_1 = -1) are skipped and recorded in the notes.
    """
    end = min(horizon, vals.last_index)
    tail = None
    for n in range(end, vals.offset - 1, -1):
        if vals[n] <= 0:
            break
        tail = n
    if tail is None:
        raise ValueError(f"{vals.name}: no positive tail below index {end}")
    signs = []
    for n in range(tail, end - 1):
        diff = vals[n] * vals[n + 2] - vals[n + 1] ** 2
        signs.append((n, 1 if diff > 0 else (-1 if diff < 0 else 0)))
    if not signs:
        raise ValueError(f"{vals.name}: positive tail too short to classify")
    last_sign = signs[-1][1]
    threshold = signs[-1][0]
    for n, s in reversed(signs):
        if s != last_sign or s == 0:
            break
        threshold = n
    notes = f"positive tail starts at n = {tail}"
    if last_sign == 0 or threshold >= horizon - 10:
        return AnalysisReport(vals.name, "log-behavior", MIXED, tail, end, notes=notes)
    flavor = "log-convex" if last_sign > 0 else "log-concave"
    return AnalysisReport(
        vals.name,
        "log-behavior",
        THRESHOLD,
        tail,
        end,
        threshold=threshold,
        notes=notes,
        details={"flavor": flavor},
    )


def monotone_ratio_certify(
    vals: SequenceValues, direction: str, start: int, end: int
) -> AnalysisReport:
    """Strict monotonicity of n -> u_{n+1}/u_n, by exact comparison.

    Compares the consecutive ratio pairs (r_n, r_{n+1}) for n in [start, end-1];
    the ratio at n uses u_{n+1}, so values must cover [start, end+1].
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"unknown direction {direction!r}")
    if not vals.covers(start, end + 1):
        raise ValueError(
            f"{vals.name}: need values on [{start}, {end + 1}], have [{vals.offset}, {vals.last_index}]"
        )
    prop = f"ratio-{direction}"
    for n in range(start, end):
        for m in (n, n + 1):
            if vals[m] == 0:
                raise ZeroDivisionError(f"{vals.name}: zero term at index {m}")
        left = vals[n + 1] / vals[n]
        right = vals[n + 2] / vals[n + 1]
        ok = left < right if direction == "increasing" else left > right
        if not ok:
            return AnalysisReport(
                vals.name,
                prop,
                FIRST_VIOLATION,
                start,
                end,
                witness_index=n,
                witness=format_exact(right - left),
                notes=f"r_{n} = {format_exact(left)}, r_{n + 1} = {format_exact(right)}",
                details={"ratio_left": left, "ratio_right": right},
            )
    return AnalysisReport(vals.name, prop, HOLDS, start, end)


def find_monotone_start(vals: SequenceValues, direction: str, end: int) -> Optional[int]:
    """Minimal start index from which the strict ratio monotonicity holds to ``end``."""
    best = None
    for n in range(end - 1, vals.offset - 1, -1):
        if vals[n] == 0 or vals[n + 1] == 0:
            break
        left = vals[n + 1] / vals[n]
        right = vals[n + 2] / vals[n + 1]
        ok = left < right if direction == "increasing" else left > right
        if not ok:
            break
        best = n
    return best


def _nth_root_exact_check(um: Fraction, u0: Fraction, up: Fraction, n: int) -> bool:
    """True iff the root-ratio strictly decreases at n.

    Equivalent integer form of ln u_{n+1}/(n+1) + ln u_{n-1}/(n-1) < 2 ln u_n / n,
    with all exponents halved (they are even and both sides are positive).
    """
    a2 = n * (n - 1) // 2  # exponent of u_{n+1}
    b2 = n * (n + 1) // 2  # exponent of u_{n-1}
    c2 = n * n - 1  # exponent of u_n
    lhs = mpz(up.numerator) ** a2 * mpz(um.numerator) ** b2 * mpz(u0.denominator) ** c2
    rhs = mpz(u0.numerator) ** c2 * mpz(up.denominator) ** a2 * mpz(um.denominator) ** b2
    return lhs < rhs


def _nth_root_log_check(um, u0, up, n: int, precision: int) -> Optional[bool]:
    """Certified-margin log comparison; None when the margin straddles zero."""
    with mpmath.workprec(precision):
        logs = [log_of_rational(u, precision) for u in (um, u0, up)]
        val = (
            n * (n - 1) * logs[2] + n * (n + 1) * logs[0] - 2 * (n * n - 1) * logs[1]
        )
        weight = 4 * n * n * (max(abs(l) for l in logs) + 1)
        err = weight * mpmath.mpf(2) ** (-(precision - 8))
        if abs(val) <= err:
            return None
        return val < 0


EXACT_MODE_LIMIT = 120  # above this the integer powers get impractically wide


def nth_root_ratio_certify(
    vals: SequenceValues,
    start: int,
    end: int,
    mode: str = "auto",
    precision: int = DEFAULT_PRECISION,
) -> AnalysisReport:
    """Strict decrease of n -> u_{n+1}^(1/(n+1)) / u_n^(1/n).

    ``exact`` compares huge integer powers (zero false verdicts, slower);
    ``log`` uses high-precision logs with a certified margin, escalating
    precision 256 -> 512 -> 1024 and falling back to exact if still ambiguous;
    ``auto`` switches from exact to log above n = 120.
    """
    if mode not in ("auto", "exact", "log"):
        raise ValueError(f"unknown mode {mode!r}")
    if not vals.covers(start - 1, end + 1):
        raise ValueError(
            f"{vals.name}: need values on [{start - 1}, {end + 1}], have [{vals.offset}, {vals.last_index}]"
        )
    for m in range(start - 1, end + 2):
        if vals[m] <= 0:
            raise ValueError(f"{vals.name}: nonpositive term at index {m}")
    for n in range(start, end + 1):
        um, u0, up = vals[n - 1], vals[n], vals[n + 1]
        if mode == "exact" or (mode == "auto" and n <= EXACT_MODE_LIMIT):
            ok = _nth_root_exact_check(um, u0, up, n)
        else:
            ok = None
            for prec in (precision, 2 * precision, 4 * precision):
                ok = _nth_root_log_check(um, u0, up, n, prec)
                if ok is not None:
                    break
            if ok is None:
                ok = _nth_root_exact_check(um, u0, up, n)
        if not ok:
            witness = up ** (n * (n - 1)) * um ** (n * (n + 1)) - u0 ** (2 * (n * n - 1))
            return AnalysisReport(
                vals.name,
                "nth-root-ratio-decreasing",
                FIRST_VIOLATION,
                start,
                end,
                witness_index=n,
                witness=format_exact(witness),
                notes="u_(n+1)^(n(n-1)) u_(n-1)^(n(n+1)) - u_n^(2(n^2-1)) is nonnegative",
            )
    return AnalysisReport(vals.name, "nth-root-ratio-decreasing", HOLDS, start, end)


def nth_root_limit_probe(
    vals: SequenceValues, start: int, end: int, precision: int = DEFAULT_PRECISION
) -> List[Tuple[int, object, object]]:
    """(n, root-ratio, distance to 1) for n in [start, end], at precision."""
    if not vals.covers(start, end + 1):
        raise ValueError(f"{vals.name}: need values on [{start}, {end + 1}]")
    out = []
    with mpmath.workprec(precision):
        for n in range(start, end + 1):
            if vals[n] <= 0 or vals[n + 1] <= 0:
                raise ValueError(f"{vals.name}: nonpositive term at index {n}")
            expo = log_of_rational(vals[n + 1], precision) / (n + 1) - log_of_rational(
                vals[n], precision
            ) / n
            rr = mpmath.exp(expo)
            out.append((n, rr, rr - 1))
    return out


def delta_op(series: Sequence, k: int = 1) -> list:
    """k-fold backward difference (u_n - u_{n-1}); output is k entries shorter."""
    if k < 1:
        raise ValueError("k must be >= 1")
    current = list(series)
    for _ in range(k):
        if len(current) < 2:
            raise ValueError("series too short for the requested difference order")
        current = [current[i] - current[i - 1] for i in range(1, len(current))]
    return current


@dataclass(frozen=True)
class PuiseuxFit:
    """Fit of a second-ratio tail to 1 + c / n^alpha over a window."""

    c: object  # mpf
    alpha: object  # mpf
    beta: object  # mpf (expansion horizon; defaults to alpha + 1)
    window: Tuple[int, int]
    residual: object  # mpf: max abs log-space residual (~max relative residual)


def puiseux_fit(
    r2: SequenceValues,
    window: Tuple[int, int],
    beta=None,
    precision: int = DEFAULT_PRECISION,
) -> PuiseuxFit:
    """Least-squares line through (ln(n+1), ln|r2_n - 1|) over the window.

    The abscissa is the midpoint of the three-term stencil behind r2_n, which
    removes the leading 1/n bias of the estimate (calibrated on sequences with
    closed-form second ratios).  Requires a constant sign of r2 - 1 on the
    window, which also fixes the sign of c.
    """
    lo, hi = window
    if hi - lo + 1 < 8:
        raise ValueError("fit window must contain at least 8 points")
    if not r2.covers(lo, hi):
        raise ValueError(f"window [{lo}, {hi}] outside available indices")
    deviations = [(n, r2[n] - 1) for n in range(lo, hi + 1)]
    signs = {1 if d > 0 else (-1 if d < 0 else 0) for _, d in deviations}
    if len(signs) != 1 or 0 in signs:
        raise ValueError("r2 - 1 changes sign (or vanishes) inside the fit window")
    sign = signs.pop()
    with mpmath.workprec(precision):
        xs = [mpmath.log(mpmath.mpf(n + 1)) for n, _ in deviations]
        ys = [log_of_rational(abs(d), precision) for _, d in deviations]
        slope, intercept = _least_squares_line(xs, ys)
        alpha = -slope
        c = sign * mpmath.exp(intercept)
        residual = max(abs(y - (intercept + slope * x)) for x, y in zip(xs, ys))
        beta_val = mpmath.mpf(beta) if beta is not None else alpha + 1
    if not alpha > 0:
        raise ValueError(f"fitted exponent is not positive: {alpha}")
    return PuiseuxFit(c, alpha, beta_val, (lo, hi), residual)


def _least_squares_line(xs, ys):
    n = len(xs)
    sx = mpmath.fsum(xs)
    sy = mpmath.fsum(ys)
    sxx = mpmath.fsum(x * x for x in xs)
    sxy = mpmath.fsum(x * y for x, y in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    intercept = (sy - slope * sx) / n
    return slope, intercept


def r_order(fit: PuiseuxFit) -> Tuple[int, str]:
    """Asymptotic r-log order from fitted (c, alpha, beta).

    c > 0: r = floor(beta/alpha) if alpha < 2, else floor((beta-alpha)/2) + 1
    (convex); c < 0 with alpha < 2: r = floor(beta/alpha) (concave);
    c < 0 with alpha >= 2 has no rule and raises.
    """
    c, alpha, beta = fit.c, fit.alpha, fit.beta
    if c == 0:
        raise ValueError("fit has c = 0; no order can be read off")
    if c > 0:
        if alpha < 2:
            return int(mpmath.floor(beta / alpha)), "convex"
        return int(mpmath.floor((beta - alpha) / 2)) + 1, "convex"
    if alpha < 2:
        return int(mpmath.floor(beta / alpha)), "concave"
    raise ValueError("c < 0 with alpha >= 2 is outside the classification's scope")
