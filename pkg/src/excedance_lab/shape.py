"""Symmetric decompositions, gamma expansions, and unimodality-type verdicts.

All operations work on an exact coefficient sequence together with a declared
length ``m`` (the intended degree).  The declared length matters: trailing
zero coefficients change which inequality chains are being asserted, so ``m``
is authoritative and the stored support is not.

Conventions, for ``f = f_0 + f_1 x + ... + f_m x^m``:

* symmetric          f_i == f_{m-i}
* gamma expansion    f = sum_k  gamma_k x^k (1+x)^{m-2k}       (needs symmetry)
* decomposition      f = a + x b  with a symmetric about m/2 and b about (m-1)/2;
                     a = (f - x^{m+1} f(1/x)) / (1-x),  b = (x^m f(1/x) - f) / (1-x),
                     both divisions exact
* alternatingly increasing   f_0 <= f_m <= f_1 <= f_{m-1} <= ...
* spiral                     f_m <= f_0 <= f_{m-1} <= f_1 <= ...

Verdicts use non-strict inequalities throughout; ties pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .multipoly import Context, Poly

Number = Union[int, Fraction]

PROPERTIES = (
    "symmetric",
    "unimodal",
    "gamma_positive",
    "bi_gamma_positive",
    "alternatingly_increasing",
    "spiral",
)


class NotSymmetric(ValueError):
    """Raised when a gamma expansion is requested for an asymmetric sequence."""


@dataclass(frozen=True)
class CoeffSeq:
    """Exact coefficients ``coeffs[0..m]`` of a polynomial of declared length m.

    ``m = -1`` with no coefficients denotes the zero polynomial of empty length
    (it shows up as the b-part of a symmetric input).
    """

    coeffs: tuple[Number, ...]
    m: int

    @staticmethod
    def make(coeffs: Sequence, m: int | None = None) -> "CoeffSeq":
        vals = tuple(coeffs)
        if m is None:
            m = len(vals) - 1
        if m < len(vals) - 1:
            raise ValueError("declared length below the support")
        vals = vals + (0,) * (m + 1 - len(vals))
        return CoeffSeq(vals, m)

    @staticmethod
    def from_poly(f: Poly, var: Union[str, int], m: int | None = None) -> "CoeffSeq":
        """Extract the coefficient sequence of a univariate polynomial."""
        coeffs = []
        for c in f.coeffs_in(var):
            if set(c.terms) - {()}:
                raise ValueError("polynomial is not univariate in the chosen variable")
            coeffs.append(c.constant_term())
        return CoeffSeq.make(coeffs, m)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_poly(self, ctx: Context, var: str = "x") -> Poly:
        x = ctx.var(var)
        total = ctx.zero()
        for i, c in enumerate(self.coeffs):
            total = total + ctx.const(c) * x**i
        return total


def _div_one_minus_x(coeffs: Sequence[Number]) -> list[Number]:
    """Exact division of a coefficient list by (1 - x); asserts exactness."""
    out: list[Number] = []
    acc = 0
    for c in coeffs:
        acc = c + acc
        out.append(acc)
    if out and out[-1] != 0:
        raise AssertionError("division by (1-x) left a remainder")
    return out[:-1] if out else []


def decompose(f: CoeffSeq) -> tuple[CoeffSeq, CoeffSeq]:
    """Unique symmetric decomposition f = a + x*b at declared length m."""
    m = f.m
    if m < 0:
        return CoeffSeq((), -1), CoeffSeq((), -1)
    fw = list(f.coeffs)
    rev = [0] + fw[::-1]                       # x^{m+1} f(1/x)
    num_a = [fw[i] - rev[i] for i in range(m + 1)] + [-rev[m + 1]]
    a = _div_one_minus_x(num_a)
    rev_b = fw[::-1]                           # x^m f(1/x)
    num_b = [rev_b[i] - fw[i] for i in range(m + 1)]
    b = _div_one_minus_x(num_b)
    a_seq = CoeffSeq.make(a, m)
    b_seq = CoeffSeq.make(b, m - 1) if m >= 1 else CoeffSeq((), -1)
    assert _is_symmetric(a_seq) and _is_symmetric(b_seq)
    for i in range(m + 1):
        fi = a_seq[i] + (b_seq[i - 1] if 1 <= i <= b_seq.m + 1 else 0)
        assert fi == f[i]
    return a_seq, b_seq


def _is_symmetric(f: CoeffSeq) -> bool:
    return all(f[i] == f[f.m - i] for i in range(f.m + 1))


def gamma_expand(f: CoeffSeq) -> list[Number]:
    """Gamma coefficients of a symmetric sequence; raises NotSymmetric otherwise."""
    if f.m < 0:
        return []
    if not _is_symmetric(f):
        raise NotSymmetric(f"not symmetric about {f.m}/2: {f.coeffs}")
    m = f.m
    work = list(f.coeffs)
    gammas: list[Number] = []
    for k in range(m // 2 + 1):
        g = work[k]
        gammas.append(g)
        if g:
            # subtract g * x^k (1+x)^{m-2k}
            row = 1
            for j in range(m - 2 * k + 1):
                work[k + j] -= g * row
                row = row * (m - 2 * k - j) // (j + 1)
    assert all(c == 0 for c in work)
    return gammas


def gamma_assemble(ctx: Context, gammas: Sequence[Number], m: int, var: str = "x") -> Poly:
    """Rebuild ``sum gamma_k x^k (1+x)^{m-2k}`` as a polynomial."""
    x = ctx.var(var)
    onepx = ctx.const(1) + x
    total = ctx.zero()
    for k, g in enumerate(gammas):
        if g:
            total = total + ctx.const(g) * x**k * onepx ** (m - 2 * k)
    return total


def check(f: CoeffSeq, prop: str) -> bool:
    """Verdict for one shape property at the declared length."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if f.m < 0:
        return True
    if prop == "symmetric":
        return _is_symmetric(f)
    if prop == "unimodal":
        i = 0
        while i < f.m and f[i] <= f[i + 1]:
            i += 1
        while i < f.m and f[i] >= f[i + 1]:
            i += 1
        return i == f.m
    if prop == "gamma_positive":
        if not _is_symmetric(f):
            return False
        return all(g >= 0 for g in gamma_expand(f))
    if prop == "bi_gamma_positive":
        a, b = decompose(f)
        return all(g >= 0 for g in gamma_expand(a)) and all(
            g >= 0 for g in gamma_expand(b)
        )
    if prop == "alternatingly_increasing":
        # chain f_0 <= f_m <= f_1 <= f_{m-1} <= ...
        seq = [f[0]]
        lo, hi = 1, f.m
        while hi >= lo:
            seq.append(f[hi])
            hi -= 1
            if hi < lo:
                break
            seq.append(f[lo])
            lo += 1
        return all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))
    # spiral: f_m <= f_0 <= f_{m-1} <= f_1 <= ...
    seq = [f[f.m]]
    lo, hi = 0, f.m - 1
    while lo <= hi:
        seq.append(f[lo])
        lo += 1
        if lo > hi:
            break
        seq.append(f[hi])
        hi -= 1
    return all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))


@dataclass
class ShapeReport:
    """Decomposition, gamma data and the six shape verdicts for one sequence."""

    seq: CoeffSeq
    a: CoeffSeq
    b: CoeffSeq
    gamma_a: list[Number] | None
    gamma_b: list[Number] | None
    verdicts: dict[str, bool]

    def to_json_obj(self) -> dict:
        def nums(vals):
            return None if vals is None else [str(v) for v in vals]

        return {
            "m": self.seq.m,
            "coeffs": nums(self.seq.coeffs),
            "a": nums(self.a.coeffs),
            "b": nums(self.b.coeffs),
            "gamma_a": nums(self.gamma_a),
            "gamma_b": nums(self.gamma_b),
            "verdicts": dict(self.verdicts),
        }


def shape_report(f: CoeffSeq) -> ShapeReport:
    """Full report: decomposition, gamma vectors where defined, all verdicts."""
    a, b = decompose(f)
    try:
        ga = gamma_expand(a)
    except NotSymmetric:  # pragma: no cover - decompose output is symmetric
        ga = None
    try:
        gb = gamma_expand(b)
    except NotSymmetric:  # pragma: no cover
        gb = None
    verdicts = {prop: check(f, prop) for prop in PROPERTIES}
    return ShapeReport(f, a, b, ga, gb, verdicts)


def implications_hold(verdicts: dict[str, bool], nonnegative: bool) -> bool:
    """The expected chain: gamma => bi-gamma => alternatingly increasing => unimodal.

    The last step needs nonnegative coefficients (unimodality as defined here
    compares raw values).
    """
    if verdicts["gamma_positive"] and not verdicts["bi_gamma_positive"]:
        return False
    if verdicts["bi_gamma_positive"] and not verdicts["alternatingly_increasing"]:
        return False
    if (
        nonnegative
        and verdicts["alternatingly_increasing"]
        and not verdicts["unimodal"]
    ):
        return False
    return True


class PartialGammaFailure(NotSymmetric):
    """A y-slice of a bivariate polynomial failed to be symmetric."""


@dataclass
class PartialGamma:
    """Triangle mu[(i, j)] with  p(x,y) = sum_i y^i sum_j mu_ij x^j (1+x)^{n-i-2j}."""

    n: int
    mu: dict[tuple[int, int], Number]

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.mu.values())

    def assemble(self, ctx: Context, xvar: str = "x", yvar: str = "y") -> Poly:
        y = ctx.var(yvar)
        total = ctx.zero()
        for (i, j), v in sorted(self.mu.items()):
            total = total + ctx.const(v) * y**i * gamma_assemble(
                ctx, [0] * j + [1], self.n - i, xvar
            )
        return total


def partial_gamma_expand(
    p: Poly, xvar: str, yvar: str, n: int
) -> PartialGamma:
    """Per-slice gamma expansion of a bivariate polynomial in (xvar, yvar).

    The coefficient of ``yvar^i`` is expanded in the basis
    ``x^j (1+x)^{n-i-2j}``; raises :class:`PartialGammaFailure` if any slice
    is not symmetric at its declared length ``n - i``.
    """
    mu: dict[tuple[int, int], Number] = {}
    for i, slice_poly in enumerate(p.coeffs_in(yvar)):
        if i > n:
            if not slice_poly.is_zero():
                raise PartialGammaFailure(f"slice y^{i} beyond declared length {n}")
            continue
        seq = CoeffSeq.from_poly(slice_poly, xvar, m=n - i)
        try:
            gammas = gamma_expand(seq)
        except NotSymmetric as exc:
            raise PartialGammaFailure(f"slice y^{i}: {exc}") from exc
        for j, g in enumerate(gammas):
            if g:
                mu[(i, j)] = g
    return PartialGamma(n, mu)
