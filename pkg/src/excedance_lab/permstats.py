"""Enumeration of permutation classes with the full battery of statistics.

Four classes are supported:

* plain      S_n, one-line words over [n]
* signed     the hyperoctahedral group: words over +-[n] with distinct
             absolute values (sigma(-i) = -sigma(i) is implicit)
* colored    r-colored permutations: words of (value, color) pairs with
             color in [0, r-1]
* stirling   k-Stirling permutations: words over {1^k, ..., n^k} where all
             entries between the two occurrences of i are >= i

Statistics follow the cycle-form conventions of the source material: cycles
are written smallest-absolute-value first and sorted by that first entry;
signed and colored cycle counts are orbit counts of i -> |sigma(i)| resp.
i -> pi_i on [n].

Two cycle-peak statistics coexist on purpose: ``cpk_sec2`` closes each cycle
with the wraparound sentinel c_{len+1} = c_1, while ``cpk_inf`` closes the
canonical cycle word with +infinity.  They differ (e.g. on a 2-cycle) and
both are needed: the wraparound version drives the cycle-classification
action, the +infinity version drives cycle runs via crun = 2*cpk_inf + cyc.

Enumeration order is lexicographic on the one-line word (colors as a
secondary key), so golden outputs are stable.  Aggregation goes through a
cached joint distribution per class, so repeated generating-polynomial
queries against the same class enumerate it only once.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Optional, Union

from .multipoly import Context, Poly

DEFAULT_MAX_CLASS = 20_000_000
ENV_GUARD = "EXCEDANCE_LAB_MAX_CLASS"

KINDS = ("plain", "signed", "colored", "stirling")

# Stat-name tuples in storage order for each class's joint distribution.
PLAIN_BASE = (
    "exc", "drop", "fix", "cyc", "des", "dd", "lpk",
    "cda", "cdd_sec2", "cpk_sec2", "cpk_inf",
)
PLAIN_DERIVED = ("wexc", "crun", "rlen")
SIGNED_BASE = ("exc", "aexc", "fix", "single", "neg", "cyc", "exc_A", "des_B")
SIGNED_DERIVED = ("aexc_A", "fexc", "wexc")
COLORED_BASE = ("exc_B", "fix", "single", "csum", "cyc", "exc_A")
COLORED_DERIVED = ("exc_f", "aexc_f", "aexc_A", "fexc_r")
STIRLING_BASE = ("ap", "lap", "first_block_constant")


class SizeExceeded(RuntimeError):
    """The requested class is larger than the enumeration guard."""

    def __init__(self, size: int, guard: int):
        super().__init__(f"class size {size} exceeds guard {guard}")
        self.size = size
        self.guard = guard


class UnknownStat(KeyError):
    """A weighting or filter referenced a statistic the class does not have."""


def guard_limit(max_class: Optional[int] = None) -> int:
    if max_class is not None:
        return max_class
    env = os.environ.get(ENV_GUARD)
    return int(env) if env else DEFAULT_MAX_CLASS


def class_size(kind: str, n: int, *, r: int = 1, k: int = 1) -> int:
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    if kind == "plain":
        return fact
    if kind == "signed":
        return fact << n
    if kind == "colored":
        return fact * r**n
    if kind == "stirling":
        size = 1
        for i in range(n):
            size *= i * k + 1
        return size
    raise ValueError(f"unknown kind {kind!r}")


def _check_guard(kind, n, r, k, max_class):
    size = class_size(kind, n, r=r, k=k)
    guard = guard_limit(max_class)
    if size > guard:
        raise SizeExceeded(size, guard)
    return size


# ---------------------------------------------------------------------------
# permutation objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermObject:
    """One element of a permutation class, in canonical one-line form.

    ``word`` holds ints for plain/signed/stirling and (value, color) pairs
    for colored.
    """

    kind: str
    n: int
    word: tuple
    r: int = 1
    k: int = 1

    def cycles(self) -> list[tuple[int, ...]]:
        if self.kind == "plain":
            return _cycles_plain(self.word)
        if self.kind == "signed":
            return _cycles_signed(self.word)
        if self.kind == "colored":
            return _cycles_plain(tuple(v for v, _ in self.word))
        raise ValueError("stirling words have no cycle form")

    def word_string(self) -> str:
        if self.kind == "colored":
            return " ".join(f"{v}^{c}" for v, c in self.word)
        return " ".join(str(v) for v in self.word)

    def cycle_string(self) -> str:
        if self.kind == "stirling":
            return ""
        if self.kind == "colored":
            color = {v: c for v, c in self.word}
            # in cycle form, letter v carries the color of the entry equal to v
            def fmt(v):
                c = color[v]
                return str(v) if c == 0 else f"{v}^{c}"
        else:
            fmt = str
        return "".join(
            "(" + ",".join(fmt(v) for v in cyc) + ")" for cyc in self.cycles()
        )


def _cycles_plain(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    n = len(word)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = word[start - 1]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = word[j - 1]
        cycles.append(tuple(cyc))
    return cycles


def _cycles_signed(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cycle letters follow c -> sigma(|c|); each cycle starts at its
    minimum-absolute-value letter."""
    n = len(word)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        orbit = []
        j = start
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = abs(word[j - 1])
        # letter with absolute value v is sigma(pre(v)) where pi(pre(v)) = v;
        # equivalently the letter sequence starting at the signed letter +-start
        sign = {abs(word[i - 1]): word[i - 1] for i in orbit}
        cyc = [sign[start]]
        j = abs(sign[start])
        while True:
            nxt = word[j - 1]
            if abs(nxt) == start:
                break
            cyc.append(nxt)
            j = abs(nxt)
        cycles.append(tuple(cyc))
    return cycles


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def _cycle_roles_counts(cycles) -> tuple[int, int, int, int, int]:
    """(cda, cdd, cpk, cval) with the wraparound sentinel, plus cpk_inf."""
    cda = cdd = cpk = cval = cpk_inf = 0
    for cyc in cycles:
        L = len(cyc)
        for idx in range(1, L):
            prev = cyc[idx - 1]
            cur = cyc[idx]
            nxt = cyc[idx + 1] if idx + 1 < L else cyc[0]
            if prev < cur:
                if cur < nxt:
                    cda += 1
                else:
                    cpk += 1
            else:
                if cur > nxt:
                    cdd += 1
                else:
                    cval += 1
            # +infinity sentinel: the last letter ascends to infinity
            nxt_inf = cyc[idx + 1] if idx + 1 < L else None
            if nxt_inf is not None and prev < cur > nxt_inf:
                cpk_inf += 1
    return cda, cdd, cpk, cval, cpk_inf


def plain_base_stats(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    exc = drop = fix = 0
    for i, v in enumerate(word, 1):
        if v > i:
            exc += 1
        elif v < i:
            drop += 1
        else:
            fix += 1
    des = sum(word[i] > word[i + 1] for i in range(n - 1))
    padded = (0, *word, 0)
    dd = sum(padded[i - 1] > padded[i] > padded[i + 1] for i in range(1, n + 1))
    lpk = sum(padded[i - 1] < padded[i] > padded[i + 1] for i in range(1, n))
    cycles = _cycles_plain(word)
    cda, cdd, cpk, _cval, cpk_inf = _cycle_roles_counts(cycles)
    return (exc, drop, fix, len(cycles), des, dd, lpk, cda, cdd, cpk, cpk_inf)


def _plain_full(base: tuple[int, ...], n: int) -> dict[str, int]:
    stats = dict(zip(PLAIN_BASE, base))
    stats["wexc"] = stats["exc"] + stats["fix"]
    stats["crun"] = 2 * stats["cpk_inf"] + stats["cyc"]
    stats["rlen"] = n - stats["cyc"]
    return stats


def signed_base_stats(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    pi = tuple(abs(v) for v in word)
    sign = [0] * (n + 1)
    for v in word:
        sign[abs(v)] = 1 if v > 0 else -1
    inv = [0] * (n + 1)
    for i, v in enumerate(pi, 1):
        inv[v] = i
    exc = aexc = fix = single = exc_A = 0
    for v in range(1, n + 1):
        a = sign[v] * v
        w = pi[v - 1]
        b = sign[w] * w
        if w == v:
            if sign[v] > 0:
                fix += 1
            else:
                single += 1
        elif b > a:
            exc += 1
        else:
            aexc += 1
        if sign[v] * v > inv[v]:
            exc_A += 1
    neg = sum(1 for v in word if v < 0)
    seen = [False] * (n + 1)
    cyc = 0
    for start in range(1, n + 1):
        if not seen[start]:
            cyc += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = pi[j - 1]
    des_B = (1 if n and word[0] < 0 else 0) + sum(
        word[i] > word[i + 1] for i in range(n - 1)
    )
    return (exc, aexc, fix, single, neg, cyc, exc_A, des_B)


def _signed_full(base: tuple[int, ...], n: int) -> dict[str, int]:
    stats = dict(zip(SIGNED_BASE, base))
    stats["aexc_A"] = n - stats["exc_A"] - stats["fix"] - stats["single"]
    stats["fexc"] = 2 * stats["exc_A"] + stats["neg"]
    stats["wexc"] = stats["exc"] + stats["fix"]
    return stats


def colored_base_stats(word: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    n = len(word)
    exc_B = fix = single = csum = exc_A = 0
    for i, (v, c) in enumerate(word, 1):
        csum += c
        if v == i:
            if c == 0:
                fix += 1
            else:
                single += 1
        elif v > i:
            exc_B += 1
            if c == 0:
                exc_A += 1
    pi = tuple(v for v, _ in word)
    seen = [False] * (n + 1)
    cyc = 0
    for start in range(1, n + 1):
        if not seen[start]:
            cyc += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = pi[j - 1]
    return (exc_B, fix, single, csum, cyc, exc_A)


def _colored_full(base: tuple[int, ...], n: int, r: int) -> dict[str, int]:
    stats = dict(zip(COLORED_BASE, base))
    stats["exc_f"] = stats["exc_B"] + stats["single"]
    stats["aexc_f"] = n - stats["exc_f"] - stats["fix"]
    stats["aexc_A"] = n - stats["exc_A"] - stats["fix"] - stats["single"]
    stats["fexc_r"] = r * stats["exc_A"] + stats["csum"]
    return stats


def stirling_base_stats(word: tuple[int, ...], k: int) -> tuple[int, ...]:
    L = len(word)
    ap = 0
    for i in range(1, L - k + 1):  # 0-based start of a run of k equal entries
        if word[i - 1] < word[i] and all(
            word[i + j] == word[i] for j in range(1, k)
        ):
            ap += 1
    fbc = 1 if L and all(word[j] == word[0] for j in range(k)) else 0
    lap = ap + fbc
    return (ap, lap, fbc)


# ---------------------------------------------------------------------------
# generators (lexicographic one-line order)
# ---------------------------------------------------------------------------


def _plain_words(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


def _signed_words(n: int) -> Iterator[tuple[int, ...]]:
    letters = list(range(-n, 0)) + list(range(1, n + 1))
    word: list[int] = []
    used = [False] * (n + 1)

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for v in letters:
            if not used[abs(v)]:
                used[abs(v)] = True
                word.append(v)
                yield from rec()
                word.pop()
                used[abs(v)] = False

    return rec()


def _colored_words(n: int, r: int) -> Iterator[tuple[tuple[int, int], ...]]:
    for pi in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(r), repeat=n):
            yield tuple(zip(pi, colors))


def _stirling_words(n: int, k: int) -> list[tuple[int, ...]]:
    words = [()]
    for m in range(1, n + 1):
        block = (m,) * k
        words = [
            w[:pos] + block + w[pos:]
            for w in words
            for pos in range(len(w) + 1)
        ]
    words.sort()
    return words


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------


def stat_names(kind: str) -> tuple[str, ...]:
    if kind == "plain":
        return PLAIN_BASE + PLAIN_DERIVED
    if kind == "signed":
        return SIGNED_BASE + SIGNED_DERIVED
    if kind == "colored":
        return COLORED_BASE + COLORED_DERIVED
    if kind == "stirling":
        return STIRLING_BASE
    raise ValueError(f"unknown kind {kind!r}")


def enumerate_class(
    kind: str,
    n: int,
    *,
    r: int = 1,
    k: int = 1,
    max_class: Optional[int] = None,
) -> Iterator[tuple[PermObject, dict[str, int]]]:
    """Stream (object, statistics) pairs in deterministic lexicographic order."""
    _check_guard(kind, n, r, k, max_class)
    if kind == "plain":
        for word in _plain_words(n):
            yield PermObject("plain", n, word), _plain_full(
                plain_base_stats(word), n
            )
    elif kind == "signed":
        for word in _signed_words(n):
            yield PermObject("signed", n, word), _signed_full(
                signed_base_stats(word), n
            )
    elif kind == "colored":
        if r < 1:
            raise ValueError("colored classes need r >= 1")
        # value-major generation with nested color vectors is already the
        # (value, color)-lexicographic order on words
        for word in _colored_words(n, r):
            yield PermObject("colored", n, word, r=r), _colored_full(
                colored_base_stats(word), n, r
            )
    elif kind == "stirling":
        if k < 1:
            raise ValueError("stirling classes need k >= 1")
        for word in _stirling_words(n, k):
            yield PermObject("stirling", n, word, k=k), dict(
                zip(STIRLING_BASE, stirling_base_stats(word, k))
            )
    else:
        raise ValueError(f"unknown kind {kind!r}")


@lru_cache(maxsize=None)
def _distribution_cached(kind: str, n: int, r: int, k: int) -> Counter:
    """Joint distribution Counter over the base stat tuple (unordered sum)."""
    dist: Counter = Counter()
    if kind == "plain":
        for word in _plain_words(n):
            dist[plain_base_stats(word)] += 1
    elif kind == "signed":
        # sign vectors are indexed by value, so the statistics collapse to
        # one pass over values; cycle data depends only on the underlying
        # permutation and is hoisted out of the sign loop
        sign_vectors = list(itertools.product((1, -1), repeat=n))
        for pi in itertools.permutations(range(1, n + 1)):
            inv = [0] * (n + 1)
            for i, v in enumerate(pi, 1):
                inv[v] = i
            seen = [False] * (n + 1)
            cyc = 0
            for s in range(1, n + 1):
                if not seen[s]:
                    cyc += 1
                    j = s
                    while not seen[j]:
                        seen[j] = True
                        j = pi[j - 1]
            for eps in sign_vectors:
                exc = aexc = fix = single = neg = exc_A = 0
                for v0 in range(n):
                    v = v0 + 1
                    sv = eps[v0]
                    w = pi[v0]
                    if sv < 0:
                        neg += 1
                    if w == v:
                        if sv > 0:
                            fix += 1
                        else:
                            single += 1
                    elif eps[w - 1] * w > sv * v:
                        exc += 1
                    else:
                        aexc += 1
                    if sv * v > inv[v]:
                        exc_A += 1
                sig = [eps[w - 1] * w for w in pi]
                des_B = (1 if n and sig[0] < 0 else 0) + sum(
                    sig[i] > sig[i + 1] for i in range(n - 1)
                )
                dist[(exc, aexc, fix, single, neg, cyc, exc_A, des_B)] += 1
    elif kind == "colored":
        for pi in itertools.permutations(range(1, n + 1)):
            for colors in itertools.product(range(r), repeat=n):
                dist[colored_base_stats(tuple(zip(pi, colors)))] += 1
    elif kind == "stirling":
        for word in _stirling_words(n, k):
            dist[stirling_base_stats(word, k)] += 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return dist


def stat_distribution(
    kind: str,
    n: int,
    *,
    r: int = 1,
    k: int = 1,
    max_class: Optional[int] = None,
) -> dict[tuple[tuple[str, int], ...], int]:
    """Counts of full stat dicts (as sorted item tuples) over the class."""
    _check_guard(kind, n, r, k, max_class)
    base = _distribution_cached(kind, n, r, k)
    out: dict[tuple[tuple[str, int], ...], int] = {}
    for tup, count in base.items():
        stats = _full_stats(kind, tup, n, r)
        out[tuple(sorted(stats.items()))] = count
    return out


def _full_stats(kind, tup, n, r):
    if kind == "plain":
        return _plain_full(tup, n)
    if kind == "signed":
        return _signed_full(tup, n)
    if kind == "colored":
        return _colored_full(tup, n, r)
    return dict(zip(STIRLING_BASE, tup))


def gen_poly(
    ctx: Context,
    kind: str,
    n: int,
    weighting: Mapping[str, Union[str, int]],
    *,
    r: int = 1,
    k: int = 1,
    where: Optional[Callable[[dict[str, int]], bool]] = None,
    max_class: Optional[int] = None,
) -> Poly:
    """Generating polynomial  sum over the class of  prod var^stat.

    ``weighting`` maps statistic names to variables (names or ids); several
    statistics may share a variable, in which case exponents add.  ``where``
    filters on the statistics dict.
    """
    names = stat_names(kind)
    for stat in weighting:
        if stat not in names:
            raise UnknownStat(stat)
    _check_guard(kind, n, r, k, max_class)
    base = _distribution_cached(kind, n, r, k)
    weight_vids = {stat: ctx._resolve(v) for stat, v in weighting.items()}
    acc: dict = {}
    for tup, count in base.items():
        stats = _full_stats(kind, tup, n, r)
        if where is not None and not where(stats):
            continue
        exps: dict[int, int] = {}
        for stat, vid in weight_vids.items():
            e = stats[stat]
            if e:
                exps[vid] = exps.get(vid, 0) + e
        key = tuple(sorted(exps.items()))
        acc[key] = acc.get(key, 0) + count
    return Poly(ctx, {key: c for key, c in acc.items() if c})


def stirling_identities(
    ctx: Context, n: int, k: int, var: str = "x", max_class: Optional[int] = None
) -> tuple[Poly, Poly]:
    """(sum x^ap, sum x^lap) over the k-Stirling permutations of order n."""
    ap = gen_poly(ctx, "stirling", n, {"ap": var}, k=k, max_class=max_class)
    lap = gen_poly(ctx, "stirling", n, {"lap": var}, k=k, max_class=max_class)
    return ap, lap
