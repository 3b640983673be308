"""Independent brute-force oracles used to freeze expected test values.

Everything here is written directly against the statistic definitions with
itertools, on purpose: these functions share no code with the package, so a
test comparing the two sides genuinely checks the implementation.
"""

from __future__ import annotations

import itertools
from collections import Counter


def descent_counts(n: int) -> Counter:
    """Descent distribution over S_n from one-line words."""
    counts: Counter = Counter()
    for word in itertools.permutations(range(1, n + 1)):
        des = sum(word[i] > word[i + 1] for i in range(n - 1))
        counts[des] += 1
    return counts


def plain_exc_fix_cyc(n: int) -> Counter:
    """(exc, fix, cyc) distribution over S_n."""
    counts: Counter = Counter()
    for word in itertools.permutations(range(1, n + 1)):
        exc = sum(v > i for i, v in enumerate(word, 1))
        fix = sum(v == i for i, v in enumerate(word, 1))
        seen = set()
        cyc = 0
        for start in range(1, n + 1):
            if start not in seen:
                cyc += 1
                j = start
                while j not in seen:
                    seen.add(j)
                    j = word[j - 1]
        counts[(exc, fix, cyc)] += 1
    return counts


def signed_words(n: int):
    for pi in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield tuple(s * v for s, v in zip(signs, pi))


def signed_exc(word) -> int:
    """Hyperoctahedral excedances: positions with sigma(|sigma(i)|) > sigma(i)."""
    return sum(word[abs(v) - 1] > v for v in word)


def signed_fix(word) -> int:
    return sum(v == i for i, v in enumerate(word, 1))


def signed_derangement_exc_counts(n: int) -> Counter:
    counts: Counter = Counter()
    for word in signed_words(n):
        if signed_fix(word) == 0:
            counts[signed_exc(word)] += 1
    return counts


def colored_flag_exc_counts(n: int, r: int) -> Counter:
    """Distribution of the flag-order excedance number over r-colored words."""
    counts: Counter = Counter()
    for pi in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(r), repeat=n):
            exc = sum(
                v > i or (v == i and c > 0)
                for i, (v, c) in enumerate(zip(pi, colors), 1)
            )
            counts[exc] += 1
    return counts


def derangement_count(n: int) -> int:
    """Inclusion-exclusion count of fixed-point-free permutations."""
    import math

    return sum((-1) ** k * math.comb(n, k) * math.factorial(n - k) for k in range(n + 1))
