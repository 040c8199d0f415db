"""P-recurrences: representation, verification, exact guessing, spectral analysis.

A recurrence of order d is sum_{i=0}^{d} p_i(n) * u_{n+i} = 0 with integer
polynomial coefficients, asserted for all n >= offset.  Canonical form divides
out the integer content across all coefficients and fixes the sign so the
leading polynomial p_d has positive leading coefficient.

Recurrences are rediscovered from exact terms by nullspace computation
(fraction-free elimination), never by creative telescoping.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import math
import mpmath

from .kernel import DEFAULT_PRECISION, IntPolynomial, X, poly_gcd, to_mpf
from .linalg import clear_denominators, nullspace_int
from .report import FIRST_VIOLATION, HOLDS, AnalysisReport
from .sequences import SequenceValues, format_exact


class SingularityError(ValueError):
    """Leading coefficient vanished at an index the extension needed."""

    def __init__(self, index: int):
        super().__init__(f"leading coefficient vanishes at n = {index}")
        self.index = index


class CoverageError(ValueError):
    pass


class NotSquarefreeError(ValueError):
    def __init__(self, factor: IntPolynomial):
        super().__init__(f"polynomial is not squarefree; repeated factor gcd = {factor}")
        self.factor = factor


class AmbiguousDominantRootError(ValueError):
    pass


@dataclass(frozen=True)
class PRecurrence:
    coeffs: Tuple[IntPolynomial, ...]  # p_0 .. p_d
    offset: int = 1

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("recurrence needs order >= 1")
        if self.coeffs[0].is_zero or self.coeffs[-1].is_zero:
            raise ValueError("trailing and leading coefficient polynomials must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def canonical(self) -> "PRecurrence":
        all_ints = [c for p in self.coeffs for c in p.coeffs]
        g = math.gcd(*all_ints)
        if self.coeffs[-1].leading < 0:
            g = -g
        return PRecurrence(tuple(IntPolynomial([c // g for c in p.coeffs]) for p in self.coeffs), self.offset)

    def residual(self, vals: SequenceValues, n: int) -> Fraction:
        """Exact value of sum_i p_i(n) * u_{n+i}."""
        return sum((Fraction(p(n)) * vals[n + i] for i, p in enumerate(self.coeffs)), Fraction(0))

    def to_text(self) -> str:
        lines = [f"order {self.order}", f"offset {self.offset}"]
        for i, p in enumerate(self.coeffs):
            coeff_list = " ".join(str(c) for c in p.coeffs) or "0"
            lines.append(f"p{i} {coeff_list}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PRecurrence":
        order = offset = None
        polys: dict = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, rest = line.split(None, 1)
            if key == "order":
                order = int(rest)
            elif key == "offset":
                offset = int(rest)
            elif key.startswith("p"):
                polys[int(key[1:])] = IntPolynomial(int(c) for c in rest.split())
        if order is None or offset is None or set(polys) != set(range(order + 1)):
            raise ValueError("malformed recurrence text")
        return cls(tuple(polys[i] for i in range(order + 1)), offset)


def known_recurrence(name: str) -> PRecurrence:
    """The four-term recurrences (found by creative telescoping) for a and b."""
    n = X
    if name == "a":
        coeffs = (
            n ** 3 * (n + 1) * (2 * n + 5),
            -(n + 1) * (2 * n + 5) * IntPolynomial([62, 191, 152, 35]),
            (n + 2) * (2 * n + 1) * IntPolynomial([88, 224, 163, 35]),
            -(n + 2) * (n + 3) ** 3 * (2 * n + 1),
        )
    elif name == "b":
        coeffs = (
            (n + 1) * (2 * n + 5) * IntPolynomial([11, 12, 3]) * IntPolynomial([25, 24, 6]) * n ** 3,
            -(n + 1) * (2 * n + 5)
            * IntPolynomial([3076, 21646, 59512, 82777, 64134, 28137, 6552, 630]),
            IntPolynomial([5072, 30640, 73445, 93469, 68751, 29271, 6678, 630])
            * (2 * n + 1) * (n + 2),
            -(n + 2) * (2 * n + 1) * IntPolynomial([2, 6, 3]) * IntPolynomial([7, 12, 6]) * (n + 3) ** 3,
        )
    else:
        raise ValueError(f"no known recurrence for sequence {name!r}")
    return PRecurrence(coeffs, offset=1).canonical()


def extend_by_recurrence(rec: PRecurrence, seed: SequenceValues, count: int) -> SequenceValues:
    """Append ``count`` terms computed from the recurrence; values stay rational."""
    d = rec.order
    if len(seed) < d:
        raise CoverageError(f"seed holds {len(seed)} values; recurrence has order {d}")
    values = list(seed.values)
    lead = rec.coeffs[-1]
    for _ in range(count):
        n = seed.offset + len(values) - d  # relation index producing u_{n+d}
        if n < rec.offset:
            raise CoverageError(f"relation not asserted below n = {rec.offset} (needed n = {n})")
        denom = lead(n)
        if denom == 0:
            raise SingularityError(n)
        acc = Fraction(0)
        for i in range(d):
            acc += Fraction(rec.coeffs[i](n)) * values[n - seed.offset + i]
        values.append(-acc / denom)
    return SequenceValues(seed.name, seed.offset, values)


def verify_recurrence(rec: PRecurrence, vals: SequenceValues, start: int, end: int) -> AnalysisReport:
    """Exact residue check of the recurrence on n in [start, end]."""
    if not vals.covers(start, end + rec.order):
        raise CoverageError(
            f"need values on [{start}, {end + rec.order}], have [{vals.offset}, {vals.last_index}]"
        )
    for n in range(start, end + 1):
        residue = rec.residual(vals, n)
        if residue != 0:
            return AnalysisReport(
                subject=vals.name,
                prop="recurrence",
                verdict=FIRST_VIOLATION,
                start=start,
                end=end,
                witness_index=n,
                witness=format_exact(residue),
                notes="nonzero residue of sum_i p_i(n) u_(n+i)",
            )
    return AnalysisReport(vals.name, "recurrence", HOLDS, start, end)


def guess_recurrence(
    vals: SequenceValues, max_order: int, max_degree: int, margin: int = 10
) -> Optional[PRecurrence]:
    """Minimal (order, then degree) recurrence annihilating all given terms.

    The candidate is found by an exact nullspace computation and re-verified on
    every provided term (the trailing ``margin`` terms act as a safety check
    against spurious underdetermined fits).  Returns None if nothing within
    the bounds annihilates the data.
    """
    need = (max_order + 1) * (max_degree + 1) + max_order + margin
    if len(vals) < need:
        raise CoverageError(f"need at least {need} terms for bounds ({max_order}, {max_degree}); have {len(vals)}")
    for order in range(1, max_order + 1):
        for degree in range(0, max_degree + 1):
            rec = _guess_at(vals, order, degree)
            if rec is not None:
                return rec
    return None


def _guess_at(vals: SequenceValues, order: int, degree: int) -> Optional[PRecurrence]:
    unknowns = (order + 1) * (degree + 1)
    rows = []
    for n in range(vals.offset, vals.last_index - order + 1):
        entries = []
        lcm = 1
        for i in range(order + 1):
            u = vals[n + i]
            lcm = lcm * u.denominator // math.gcd(lcm, u.denominator)
        for i in range(order + 1):
            u = vals[n + i] * lcm
            power = 1
            for _ in range(degree + 1):
                entries.append(int(u * power))
                power *= n
        assert len(entries) == unknowns
        rows.append(entries)
    if len(rows) < unknowns:
        return None
    basis = nullspace_int(rows)
    # vectors whose first or last block vanishes encode shifted lower-order
    # relations; the plain lower-order search covers those
    block = degree + 1
    usable = [
        v
        for v in basis
        if any(v[:block]) and any(v[order * block:])
    ]
    if not usable:
        # combine a vector carrying the first block with one carrying the
        # last; the sum stays in the nullspace and keeps both blocks nonzero
        first = next((v for v in basis if any(v[:block])), None)
        last = next((v for v in basis if any(v[order * block:])), None)
        if first is None or last is None:
            return None
        usable = [[x + y for x, y in zip(first, last)]]
    basis = usable
    vector = _smallest_degree_profile(basis, order, degree)
    polys = tuple(
        IntPolynomial(vector[i * block: (i + 1) * block]) for i in range(order + 1)
    )
    rec = PRecurrence(polys, offset=vals.offset).canonical()
    if all(rec.residual(vals, n) == 0 for n in range(vals.offset, vals.last_index - order + 1)):
        return rec
    return None


def _smallest_degree_profile(basis: List[List[int]], order: int, degree: int) -> List[int]:
    def profile(vec):
        degs = []
        for i in range(order + 1):
            chunk = vec[i * (degree + 1): (i + 1) * (degree + 1)]
            d = max((j for j, c in enumerate(chunk) if c), default=-1)
            degs.append(d)
        return tuple(degs)

    return min(basis, key=lambda v: (profile(v), [abs(c) for c in v]))


def characteristic_poly(rec: PRecurrence) -> IntPolynomial:
    """x-polynomial of the top n-degree coefficients of the p_i, made primitive."""
    top = max(p.degree for p in rec.coeffs)
    return IntPolynomial([p.coeff(top) for p in rec.coeffs]).primitive()


@dataclass(frozen=True)
class RootInfo:
    value: object  # mpmath.mpf
    tag: str  # rational | quadratic-surd | numeric
    exact: Optional[Fraction] = None  # for rational roots
    surd: Optional[tuple] = None  # (p, q, d) Fractions: root = p + q*sqrt(d)


@dataclass(frozen=True)
class CharPolyResult:
    poly: IntPolynomial
    roots: Tuple[RootInfo, ...]
    dominant: int
    precision: int


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = set()
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            out.add(n // f)
        f += 1
    return sorted(out)


def roots_real(poly: IntPolynomial, precision: int = DEFAULT_PRECISION) -> CharPolyResult:
    """All real roots of a squarefree integer polynomial.

    Rational roots are extracted exactly; leftover quadratics are solved in
    closed form (tagged ``quadratic-surd``); higher-degree remainders are
    isolated by Sturm sign counts and refined by bisection (tagged ``numeric``).
    """
    if poly.degree < 1:
        raise ValueError("degree must be >= 1")
    g = poly_gcd(poly, poly.derivative())
    if g.degree >= 1:
        raise NotSquarefreeError(g)
    work = [Fraction(c) for c in poly.coeffs]
    roots: List[RootInfo] = []
    with mpmath.workprec(precision):
        if work[0] == 0:  # squarefree, so multiplicity exactly one
            roots.append(RootInfo(mpmath.mpf(0), "rational", exact=Fraction(0)))
            work = work[1:]
        prim = poly.primitive()
        for p in _divisors(prim.coeff(0) if prim.coeff(0) else 1):
            for q in _divisors(prim.leading):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if len(work) > 1 and _eval_frac(work, cand) == 0:
                        roots.append(RootInfo(to_mpf(cand, precision), "rational", exact=cand))
                        work = _deflate(work, cand)
        degree = len(work) - 1
        if degree == 1:
            root = -work[0] / work[1]
            roots.append(RootInfo(to_mpf(root, precision), "rational", exact=root))
        elif degree == 2:
            a, b, c = work[2], work[1], work[0]
            disc = b * b - 4 * a * c
            if disc > 0:
                sq = mpmath.sqrt(to_mpf(disc, precision))
                center = to_mpf(Fraction(-b, 2 * a), precision)
                scale = to_mpf(Fraction(1, 2 * a), precision)
                for sign in (-1, 1):
                    roots.append(
                        RootInfo(
                            center + sign * scale * sq,
                            "quadratic-surd",
                            surd=(Fraction(-b, 2 * a), Fraction(sign, 2 * a), disc),
                        )
                    )
        elif degree >= 3:
            for lo, hi in _isolate_real_roots(work):
                roots.append(RootInfo(_refine_root(work, lo, hi, precision), "numeric"))
        roots = sorted(roots, key=lambda r: r.value)
        dominant = max(range(len(roots)), key=lambda i: abs(roots[i].value)) if roots else -1
    return CharPolyResult(poly, tuple(roots), dominant, precision)


def _eval_frac(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[Fraction], root: Fraction) -> List[Fraction]:
    # synthetic division by (x - root); remainder is zero for an exact root
    quotient = []
    carry = Fraction(0)
    for c in reversed(coeffs):
        carry = carry * root + c
        quotient.append(carry)
    quotient.pop()  # the remainder slot
    return list(reversed(quotient))


def _sturm_chain(coeffs: Sequence[Fraction]) -> List[List[Fraction]]:
    def trim(cs):
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    def rem(a, b):
        a = a[:]
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            trim(a)
        return a

    chain = [trim(list(coeffs)), trim([i * c for i, c in enumerate(coeffs)][1:])]
    while chain[-1]:
        r = [-c for c in rem(chain[-2], chain[-1])]
        if not r:
            break
        chain.append(r)
    return [c for c in chain if c]


def _variations(chain, x: Fraction) -> int:
    signs = []
    for coeffs in chain:
        v = _eval_frac(coeffs, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _isolate_real_roots(coeffs: Sequence[Fraction]) -> List[Tuple[Fraction, Fraction]]:
    chain = _sturm_chain(coeffs)
    lead = coeffs[-1]
    bound = Fraction(1) + max(abs(c / lead) for c in coeffs[:-1])
    out: List[Tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        count = _variations(chain, lo) - _variations(chain, hi)
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _eval_frac(coeffs, mid) == 0:
            out.append((mid, mid))
            eps = (hi - lo) / 1024
            stack.extend([(lo, mid - eps), (mid + eps, hi)])
        else:
            stack.extend([(lo, mid), (mid, hi)])
    return sorted(out)


def _refine_root(coeffs, lo: Fraction, hi: Fraction, precision: int):
    if lo == hi:
        return to_mpf(lo, precision)
    flo = _eval_frac(coeffs, lo)
    target = Fraction(1, 2 ** (precision + 16))
    scale = max(Fraction(1), abs(lo), abs(hi))
    while hi - lo > target * scale:
        mid = (lo + hi) / 2
        fmid = _eval_frac(coeffs, mid)
        if fmid == 0:
            return to_mpf(mid, precision)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return to_mpf((lo + hi) / 2, precision)


@dataclass(frozen=True)
class RatioLimitResult:
    value: object  # mpf: dominant characteristic root
    root: RootInfo
    empirical: object  # mpf: tail ratio u_{N+1}/u_N
    gap: object  # mpf
    note: str


def ratio_limit(rec: PRecurrence, vals: SequenceValues, precision: int = DEFAULT_PRECISION) -> RatioLimitResult:
    """Dominant characteristic root as candidate term-ratio limit, with tail check.

    The dominant root is only the Poincare-Perron candidate: the theorem does
    not by itself pin the limit for one particular solution, so the observed
    tail gap is reported alongside.
    """
    result = roots_real(characteristic_poly(rec), precision)
    with mpmath.workprec(precision):
        moduli = [abs(r.value) for r in result.roots]
        dom = moduli[result.dominant]
        for i, m in enumerate(moduli):
            if i != result.dominant and not m < dom * (1 - mpmath.mpf(2) ** (-precision // 4)):
                raise AmbiguousDominantRootError("no unique root of maximal modulus")
        root = result.roots[result.dominant]
        n_last = vals.last_index
        tail = vals[n_last] / vals[n_last - 1]
        empirical = to_mpf(tail, precision)
        gap = abs(empirical - root.value)
        note = (
            f"Poincare-Perron candidate only (convergence of this particular solution is "
            f"observed, not proved); tail ratio at n = {n_last - 1} differs from the "
            f"dominant root by {mpmath.nstr(gap, 8)}"
        )
    return RatioLimitResult(root.value, root, empirical, gap, note)
