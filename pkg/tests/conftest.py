from fractions import Fraction
from math import comb

import pytest

from logcert import sequence_table


@pytest.fixture(scope="session")
def a_table():
    return sequence_table("a", 503)


@pytest.fixture(scope="session")
def b_table():
    return sequence_table("b", 503)


# Brute-force summation oracles: independent of the incremental production
# code (plain math.comb per term, no ratio updates).

def oracle_a(n: int) -> Fraction:
    total = sum(
        Fraction(comb(n - 1, k) ** 2 * comb(n + k, k) ** 2, 4 * k * k - 1) for k in range(n)
    )
    return total / n


def oracle_b(n: int) -> Fraction:
    total = sum(
        (3 * k * k + 3 * k + 1) * comb(n - 1, k) ** 2 * comb(n + k, k) ** 2 for k in range(n)
    )
    return Fraction(total, n ** 3)


def oracle_apery(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def oracle_s(n: int) -> int:
    return sum(comb(n - 1, k) ** 2 * comb(n + k, k) ** 2 for k in range(n))
