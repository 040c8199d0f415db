"""Exact evaluation of the studied binomial-sum sequences.

Four named sequences are built in:

* ``a``  (offset 1): a_n = (1/n)   * sum_{k=0}^{n-1} C(n-1,k)^2 C(n+k,k)^2 / (4k^2-1)
* ``b``  (offset 1): b_n = (1/n^3) * sum_{k=0}^{n-1} (3k^2+3k+1) C(n-1,k)^2 C(n+k,k)^2
* ``apery`` (offset 0): A_n = sum_{k=0}^{n} C(n,k)^2 C(n+k,k)^2
* ``s``  (offset 1): S_n = sum_{k=0}^{n-1} C(n-1,k)^2 C(n+k,k)^2

All values are exact rationals; note a_1 = -1 (the k=0 term has denominator
4*0^2-1 = -1), so the positive tail of ``a`` starts at n = 2.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .kernel import binomial

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class SequenceValues:
    """A contiguous block of exact sequence values starting at ``offset``."""

    name: str
    offset: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last_index(self) -> int:
        return self.offset + len(self.values) - 1

    def covers(self, start: int, end: int) -> bool:
        return self.offset <= start and end <= self.last_index

    def __getitem__(self, n: int) -> Fraction:
        if not self.offset <= n <= self.last_index:
            raise IndexError(f"{self.name}: index {n} outside [{self.offset}, {self.last_index}]")
        return self.values[n - self.offset]

    def indices(self):
        return range(self.offset, self.last_index + 1)

    def with_values(self, extra) -> "SequenceValues":
        return SequenceValues(self.name, self.offset, self.values + tuple(extra))


def _check_positive_index(n: int) -> None:
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")


def a_direct(n: int, form: str = "primary") -> Fraction:
    """a_n by direct summation; ``dual`` uses the signed binomial C(-n-1,k)^2."""
    _check_positive_index(n)
    if form not in ("primary", "dual"):
        raise ValueError(f"unknown form {form!r}")
    if form == "dual":
        total = Fraction(0)
        for k in range(n):
            total += Fraction(binomial(n - 1, k) ** 2 * binomial(-n - 1, k) ** 2, 4 * k * k - 1)
        return total / n
    total = Fraction(0)
    B = 1  # C(n-1,k) * C(n+k,k), updated incrementally along k
    for k in range(n):
        total += Fraction(B * B, 4 * k * k - 1)
        B = B * (n - 1 - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total / n


def a_transformed(n: int) -> Fraction:
    """a_n via the k-shifted rearrangement over C(n,k)^2 C(n+k,k)^2 weights."""
    _check_positive_index(n)
    total = Fraction(0)
    B = n * (n + 1)  # C(n,k) * C(n+k,k) at k=1
    for k in range(1, n + 1):
        total += Fraction(k ** 4 * B * B, (4 * (k - 1) ** 2 - 1) * (n + k) ** 2)
        B = B * (n - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total / n ** 3


def b_direct(n: int) -> Fraction:
    _check_positive_index(n)
    total = 0
    B = 1
    for k in range(n):
        total += (3 * k * k + 3 * k + 1) * B * B
        B = B * (n - 1 - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return Fraction(total, n ** 3)


def apery(n: int) -> int:
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    total = 0
    B = 1  # C(n,k) * C(n+k,k)
    for k in range(n + 1):
        total += B * B
        B = B * (n - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total


def s_sum(n: int) -> int:
    _check_positive_index(n)
    total = 0
    B = 1
    for k in range(n):
        total += B * B
        B = B * (n - 1 - k) * (n + k + 1) // ((k + 1) * (k + 1))
    return total


_BUILTIN = {
    "a": (1, a_direct),
    "b": (1, b_direct),
    "apery": (0, apery),
    "s": (1, s_sum),
}

_table_lock = threading.Lock()
_tables: dict = {}


def sequence_table(name: str, count: int) -> SequenceValues:
    """First ``count`` terms of a built-in sequence, memoized across calls."""
    if name not in _BUILTIN:
        raise ValueError(f"unknown sequence {name!r}; expected one of {sorted(_BUILTIN)}")
    offset, term = _BUILTIN[name]
    with _table_lock:
        cached = _tables.get(name, [])
        while len(cached) < count:
            cached.append(Fraction(term(offset + len(cached))))
        _tables[name] = cached
        return SequenceValues(name, offset, cached[:count])


def format_exact(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_exact(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def write_sequence(path, vals: SequenceValues) -> None:
    """Persist as b-file-like exact text: one "index<TAB>value" line per term."""
    lines = [f"{n}\t{format_exact(vals[n])}\n" for n in vals.indices()]
    Path(path).write_text("".join(lines))


def read_sequence(path, name: str | None = None) -> SequenceValues:
    path = Path(path)
    entries = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        idx_text, value_text = line.split(None, 1)
        entries.append((int(idx_text), parse_exact(value_text)))
    if not entries:
        raise ValueError(f"{path}: no sequence entries")
    entries.sort()
    offset = entries[0][0]
    for pos, (idx, _) in enumerate(entries):
        if idx != offset + pos:
            raise ValueError(f"{path}: index gap at {idx}")
    return SequenceValues(name or path.stem, offset, [v for _, v in entries])
