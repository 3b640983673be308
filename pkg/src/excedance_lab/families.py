"""Recurrence- and formula-defined polynomial families.

Everything here is built by exact recurrences or closed combinatorial
formulas, never by enumerating permutation classes; the verification layer
compares these families against the enumeration side.  Size parameters ``k``
(inverse-Eulerian weight) and ``r`` (color count) may be numeric or symbolic:
pass an int for a numeric value or ``None`` to keep the parameter as a
registry variable, wherever the recurrence is polynomial in it.

The central triangle gamma[n, i, j](q) is defined by

    gamma[n+1,i,j] = q*gamma[n,i-1,j] + (i+1)*gamma[n,i+1,j-1]
                     + j*gamma[n,i,j] + (2n-2i-4j+4)*gamma[n,i,j-1]

with gamma[1,1,0] = q, and reassembles the fix/cycle Eulerian polynomials:

    A_n(x,p,q) = sum_i p^i sum_j gamma[n,i,j](q) x^j (1+x)^(n-i-2j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import permstats
from .multipoly import Context, Poly, binomial

SPRINGER = (1, 1, 3, 11, 57, 361, 2763, 24611)


class BadParams(ValueError):
    """Family parameters outside the recurrence's domain."""


class OutOfTable(LookupError):
    """Index beyond a table-backed sequence."""


def springer(n: int) -> int:
    """Tabulated Springer numbers (type-B Euler numbers)."""
    if not 0 <= n < len(SPRINGER):
        raise OutOfTable(f"springer({n}) outside the stored range 0..{len(SPRINGER)-1}")
    return SPRINGER[n]


def q_bracket(ctx: Context, n: int, base: Union[str, int] = "p") -> Poly:
    """[n]_base = 1 + base + ... + base^(n-1), with [0] = 0."""
    if n < 0:
        raise BadParams("bracket index must be nonnegative")
    b = Poly(ctx, {((ctx._resolve(base), 1),): 1})
    total = ctx.zero()
    for i in range(n):
        total = total + b**i
    return total


def _param_poly(ctx: Context, value: Optional[int], name: str) -> Poly:
    if value is None:
        return ctx.var(name)
    if not isinstance(value, int) or value < 1:
        raise BadParams(f"{name} must be a positive integer or None for symbolic")
    return ctx.const(value)


# ---------------------------------------------------------------------------
# the gamma triangle and the (p,q)-Eulerian polynomials
# ---------------------------------------------------------------------------


def gamma_triangle(ctx: Context, n: int) -> dict[tuple[int, int], Poly]:
    """Level-n coefficients gamma[n,i,j](q) as polynomials in q (n >= 1)."""
    if n < 1:
        raise BadParams("gamma triangle starts at n = 1")
    q = ctx.var("q")
    cur: dict[tuple[int, int], Poly] = {(1, 0): q}
    for m in range(1, n):
        nxt: dict[tuple[int, int], Poly] = {}
        for i in range(m + 2):
            for j in range((m + 1 - i) // 2 + 1):
                term = ctx.zero()
                g = cur.get((i - 1, j))
                if g is not None:
                    term = term + q * g
                g = cur.get((i + 1, j - 1))
                if g is not None:
                    term = term + (i + 1) * g
                g = cur.get((i, j))
                if g is not None and j:
                    term = term + j * g
                g = cur.get((i, j - 1))
                if g is not None:
                    term = term + (2 * m - 2 * i - 4 * j + 4) * g
                if term:
                    nxt[(i, j)] = term
        cur = nxt
    return cur


def gamma_poly(ctx: Context, n: int) -> Poly:
    """gamma_n(x,p,q) = sum_{i,j} gamma[n,i,j](q) p^i x^j."""
    if n == 0:
        return ctx.const(1)
    p, x = ctx.var("p"), ctx.var("x")
    total = ctx.zero()
    for (i, j), g in sorted(gamma_triangle(ctx, n).items()):
        total = total + g * p**i * x**j
    return total


def fix_cyc_eulerian(ctx: Context, n: int) -> Poly:
    """A_n(x,p,q), assembled from the gamma triangle."""
    if n == 0:
        return ctx.const(1)
    p, x = ctx.var("p"), ctx.var("x")
    onepx = ctx.const(1) + x
    total = ctx.zero()
    for (i, j), g in sorted(gamma_triangle(ctx, n).items()):
        total = total + g * p**i * x**j * onepx ** (n - i - 2 * j)
    return total


def q_eulerian(ctx: Context, n: int) -> Poly:
    """A_n(x,q) from A_{n+1} = (n x + q) A_n + x(1-x) dA_n/dx, A_0 = 1."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    x, q = ctx.var("x"), ctx.var("q")
    one = ctx.const(1)
    f = one
    for m in range(n):
        f = (m * x + q) * f + x * (one - x) * f.differentiate("x")
    return f


def classical_eulerian(ctx: Context, n: int) -> Poly:
    """A_n(x), via the q-Eulerian recurrence at q = 1."""
    return q_eulerian(ctx, n).substitute({"q": 1})


def derangement_poly(ctx: Context, n: int) -> Poly:
    """d_n(x) by inclusion-exclusion over fixed points of A_m(x)."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    total = ctx.zero()
    for j in range(n + 1):
        total = total + ((-1) ** j * binomial(n, j)) * classical_eulerian(ctx, n - j)
    return total


# ---------------------------------------------------------------------------
# 1/k-Eulerian polynomials and their symmetric-decomposition tables
# ---------------------------------------------------------------------------


def one_over_k_coeffs(ctx: Context, n: int, k: Optional[int]) -> list[Poly]:
    """Coefficient row [A_{n,0;k}, ..., A_{n,n-1;k}] (entries polynomial in k)."""
    if n < 1:
        raise BadParams("coefficient rows start at n = 1")
    kp = _param_poly(ctx, k, "k")
    one = ctx.const(1)
    row = [one]
    for m in range(1, n):
        nxt = []
        for j in range(m + 1):
            term = ctx.zero()
            if j < len(row):
                term = term + (one + j * kp) * row[j]
            if 0 <= j - 1 < len(row):
                term = term + (m - j + 1) * kp * row[j - 1]
            nxt.append(term)
        row = nxt
    return row


def one_over_k_eulerian(ctx: Context, n: int, k: Optional[int]) -> Poly:
    """A_n^{(k)}(x) = k^n A_n(x, 1/k) = sum_j A_{n,j;k} x^j."""
    if n == 0:
        return ctx.const(1)
    x = ctx.var("x")
    total = ctx.zero()
    for j, c in enumerate(one_over_k_coeffs(ctx, n, k)):
        total = total + c * x**j
    return total


def one_over_k_pm_tables(
    ctx: Context, n: int, k: Optional[int]
) -> tuple[dict[int, Poly], dict[int, Poly]]:
    """(A+_{n,i;k}, A-_{n,i;k}) tables from the coupled recurrence."""
    if n < 1:
        raise BadParams("the plus/minus system starts at n = 1")
    kp = _param_poly(ctx, k, "k")
    one = ctx.const(1)
    plus: dict[int, Poly] = {0: one}
    minus: dict[int, Poly] = {}
    for m in range(1, n):
        nplus: dict[int, Poly] = {}
        nminus: dict[int, Poly] = {}
        for i in range((m + 1) // 2 + 1):
            term = ctx.zero()
            if i in plus:
                term = term + (one + i * kp) * plus[i]
            if i - 1 in plus:
                term = term + 2 * (m - 2 * i + 1) * kp * plus[i - 1]
            if i - 1 in minus:
                term = term + minus[i - 1]
            if term:
                nplus[i] = term
            term = ctx.zero()
            if i in minus:
                term = term + (i + 1) * kp * minus[i]
            if i - 1 in minus:
                term = term + 2 * (m - 2 * i) * kp * minus[i - 1]
            if i in plus:
                term = term + (kp - one) * plus[i]
            if term:
                nminus[i] = term
        plus, minus = nplus, nminus
    return plus, minus


def one_over_k_pm_polys(ctx: Context, n: int, k: Optional[int]) -> tuple[Poly, Poly]:
    """(A+_{n;k}(x), A-_{n;k}(x)) = generating polynomials of the pm tables."""
    plus, minus = one_over_k_pm_tables(ctx, n, k)
    x = ctx.var("x")
    fp = ctx.zero()
    for i, c in sorted(plus.items()):
        fp = fp + c * x**i
    fm = ctx.zero()
    for i, c in sorted(minus.items()):
        fm = fm + c * x**i
    return fp, fm


def one_over_k_decomposition(ctx: Context, n: int, k: Optional[int]) -> tuple[Poly, Poly]:
    """(a_n^{(k)}, b_n^{(k)}):  a = sum A+ x^i (1+x)^{n-1-2i},  likewise b."""
    plus, minus = one_over_k_pm_tables(ctx, n, k)
    x = ctx.var("x")
    onepx = ctx.const(1) + x
    a = ctx.zero()
    for i, c in sorted(plus.items()):
        a = a + c * x**i * onepx ** (n - 1 - 2 * i)
    b = ctx.zero()
    for i, c in sorted(minus.items()):
        b = b + c * x**i * onepx ** (n - 2 - 2 * i)
    return a, b


def xi_tables(ctx: Context, n: int) -> tuple[dict[int, Poly], dict[int, Poly]]:
    """The cycle-run gamma tables: xi+- coincide with the k = 2 pm tables."""
    return one_over_k_pm_tables(ctx, n, 2)


# ---------------------------------------------------------------------------
# colored Eulerian polynomials
# ---------------------------------------------------------------------------


def colored_eulerian_coeffs(ctx: Context, n: int, r: Optional[int]) -> list[Poly]:
    """Row [A_r(n,0), ..., A_r(n,n)] from the coefficient recurrence."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    rp = _param_poly(ctx, r, "r")
    one = ctx.const(1)
    row: list[Poly] = [one]
    for m in range(1, n + 1):
        nxt = []
        for j in range(m + 1):
            term = ctx.zero()
            if j < len(row):
                term = term + (rp * j + one) * row[j]
            if 0 <= j - 1 < len(row):
                term = term + (rp * (m - j) + rp - one) * row[j - 1]
            nxt.append(term)
        row = nxt
    return row


def colored_eulerian(ctx: Context, n: int, r: Optional[int]) -> Poly:
    """A_{n,r}(x): the flag-order excedance polynomial of the wreath product."""
    x = ctx.var("x")
    total = ctx.zero()
    for j, c in enumerate(colored_eulerian_coeffs(ctx, n, r)):
        total = total + c * x**j
    return total


def alpha_tables(
    ctx: Context, n: int, r: Optional[int]
) -> tuple[dict[int, Poly], dict[int, Poly]]:
    """(alpha+_{n,k;r}, alpha-_{n,k;r}) tables for the colored decomposition."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    rp = _param_poly(ctx, r, "r")
    one = ctx.const(1)
    plus: dict[int, Poly] = {0: one}
    minus: dict[int, Poly] = {}
    for m in range(n):
        nplus: dict[int, Poly] = {}
        nminus: dict[int, Poly] = {}
        for i in range(m // 2 + 2):
            term = ctx.zero()
            if i in plus:
                term = term + (one + rp * i) * plus[i]
            if i - 1 in plus:
                term = term + 2 * (m - 2 * i + 2) * rp * plus[i - 1]
            if i - 1 in minus:
                term = term + 2 * minus[i - 1]
            if term:
                nplus[i] = term
            term = ctx.zero()
            if i in plus:
                term = term + (rp - 2 * one) * plus[i]
            if i in minus:
                term = term + (rp - one + rp * i) * minus[i]
            if i - 1 in minus:
                term = term + 2 * (m - 2 * i + 1) * rp * minus[i - 1]
            if term:
                nminus[i] = term
        plus, minus = nplus, nminus
    return plus, minus


def alpha_polys(ctx: Context, n: int, r: Optional[int]) -> tuple[Poly, Poly]:
    """Generating polynomials  sum alpha+- x^k  of the alpha tables."""
    plus, minus = alpha_tables(ctx, n, r)
    x = ctx.var("x")
    fp = ctx.zero()
    for i, c in sorted(plus.items()):
        fp = fp + c * x**i
    fm = ctx.zero()
    for i, c in sorted(minus.items()):
        fm = fm + c * x**i
    return fp, fm


def colored_decomposition(ctx: Context, n: int, r: Optional[int]) -> tuple[Poly, Poly]:
    """Symmetric-decomposition parts of A_{n,r}(x) built from the alpha tables."""
    plus, minus = alpha_tables(ctx, n, r)
    x = ctx.var("x")
    onepx = ctx.const(1) + x
    a = ctx.zero()
    for i, c in sorted(plus.items()):
        a = a + c * x**i * onepx ** (n - 2 * i)
    b = ctx.zero()
    for i, c in sorted(minus.items()):
        b = b + c * x**i * onepx ** (n - 1 - 2 * i)
    return a, b


def type_b_q_eulerian(ctx: Context, n: int) -> Poly:
    """B_n(x,q) from its derivative recurrence (descent/negative-entry pair)."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    x, q = ctx.var("x"), ctx.var("q")
    one = ctx.const(1)
    f = one
    for m in range(1, n + 1):
        f = (one + (one + q) * m * x - x) * f + (one + q) * (
            x - x * x
        ) * f.differentiate("x")
    return f


def phi_kernel(ctx: Context, n: int) -> Poly:
    """Phi_n(x,y) = xy (x^{n-1} - y^{n-1}) / (x - y); zero for n < 2."""
    if n < 0:
        raise BadParams("n must be nonnegative")
    if n < 2:
        return ctx.zero()
    x, y = ctx.var("x"), ctx.var("y")
    total = ctx.zero()
    for a in range(1, n):
        total = total + x**a * y ** (n - a)
    return total


# ---------------------------------------------------------------------------
# the substituted-Eulerian transform
# ---------------------------------------------------------------------------


def substituted_eulerian(
    ctx: Context,
    n: int,
    exc_weight: Poly,
    drop_weight: Poly,
    fix_weight: Poly,
    cyc_var: Union[str, int] = "q",
    *,
    max_class: Optional[int] = None,
) -> Poly:
    """sum over S_n of  excW^exc * dropW^drop * fixW^fix * q^cyc.

    This is the denominator-free form shared by the signed and colored
    transform theorems: rational substitutions into A_n(x,p,q) are realised
    by weighting each statistic with a polynomial.
    """
    permstats._check_guard("plain", n, 1, 1, max_class)
    base = permstats._distribution_cached("plain", n, 1, 1)
    joint: dict[tuple[int, int, int, int], int] = {}
    for tup, count in base.items():
        key = (tup[0], tup[1], tup[2], tup[3])
        joint[key] = joint.get(key, 0) + count
    qv = Poly(ctx, {((ctx._resolve(cyc_var), 1),): 1})
    pow_exc: dict[int, Poly] = {0: ctx.const(1)}
    pow_drop: dict[int, Poly] = {0: ctx.const(1)}
    pow_fix: dict[int, Poly] = {0: ctx.const(1)}
    pow_q: dict[int, Poly] = {0: ctx.const(1)}

    def power(cache, base_poly, e):
        if e not in cache:
            cache[e] = power(cache, base_poly, e - 1) * base_poly
        return cache[e]

    total = ctx.zero()
    for (e, d, f, c), count in sorted(joint.items()):
        term = (
            count
            * power(pow_exc, exc_weight, e)
            * power(pow_drop, drop_weight, d)
            * power(pow_fix, fix_weight, f)
            * power(pow_q, qv, c)
        )
        total = total + term
    return total


# ---------------------------------------------------------------------------
# the family registry (CLI surface)
# ---------------------------------------------------------------------------


@dataclass
class Family:
    name: str
    description: str
    build: Callable
    needs_k: bool = False
    needs_r: bool = False
    default_m: Optional[Callable[[int], int]] = None
    variables: tuple[str, ...] = ("x",)


def _build_springer(ctx: Context, n: int) -> Poly:
    return ctx.const(springer(n))


REGISTRY: dict[str, Family] = {}


def _register(fam: Family):
    REGISTRY[fam.name] = fam


_register(Family(
    "A_pq", "fix/cycle Eulerian polynomial A_n(x,p,q)",
    lambda ctx, n: fix_cyc_eulerian(ctx, n),
    default_m=lambda n: max(n - 1, 0), variables=("x", "p", "q"),
))
_register(Family(
    "A_q", "cycle q-Eulerian polynomial A_n(x,q)",
    lambda ctx, n: q_eulerian(ctx, n),
    default_m=lambda n: max(n - 1, 0), variables=("x", "q"),
))
_register(Family(
    "A_classic", "classical Eulerian polynomial A_n(x)",
    lambda ctx, n: classical_eulerian(ctx, n),
    default_m=lambda n: max(n - 1, 0),
))
_register(Family(
    "d_classic", "derangement polynomial d_n(x)",
    lambda ctx, n: derangement_poly(ctx, n),
    default_m=lambda n: max(n - 1, 0),
))
_register(Family(
    "gamma_pq", "partial-gamma generating polynomial gamma_n(x,p,q)",
    lambda ctx, n: gamma_poly(ctx, n), variables=("x", "p", "q"),
))
_register(Family(
    "one_over_k", "1/k-Eulerian polynomial  sum_pi x^exc k^(n-cyc)",
    lambda ctx, n, k=None: one_over_k_eulerian(ctx, n, k),
    needs_k=True, default_m=lambda n: max(n - 1, 0), variables=("x", "k"),
))
_register(Family(
    "onek_plus", "gamma vector of the symmetric part of A_n^{(k)}",
    lambda ctx, n, k=None: one_over_k_pm_polys(ctx, n, k)[0],
    needs_k=True, variables=("x", "k"),
))
_register(Family(
    "onek_minus", "gamma vector of the shifted part of A_n^{(k)}",
    lambda ctx, n, k=None: one_over_k_pm_polys(ctx, n, k)[1],
    needs_k=True, variables=("x", "k"),
))
_register(Family(
    "xi_plus", "cycle-run gamma vector (k = 2 specialisation, 4^cpk weights)",
    lambda ctx, n: one_over_k_pm_polys(ctx, n, 2)[0],
))
_register(Family(
    "xi_minus", "cycle-run gamma vector, shifted part",
    lambda ctx, n: one_over_k_pm_polys(ctx, n, 2)[1],
))
_register(Family(
    "A_r", "colored Eulerian polynomial A_{n,r}(x)",
    lambda ctx, n, r=None: colored_eulerian(ctx, n, r),
    needs_r=True, default_m=lambda n: n, variables=("x", "r"),
))
_register(Family(
    "alpha_plus", "colored decomposition gamma vector, symmetric part",
    lambda ctx, n, r=None: alpha_polys(ctx, n, r)[0],
    needs_r=True, variables=("x", "r"),
))
_register(Family(
    "alpha_minus", "colored decomposition gamma vector, shifted part",
    lambda ctx, n, r=None: alpha_polys(ctx, n, r)[1],
    needs_r=True, variables=("x", "r"),
))
_register(Family(
    "B_typeB_q", "type-B q-Eulerian polynomial B_n(x,q)",
    lambda ctx, n: type_b_q_eulerian(ctx, n),
    default_m=lambda n: n, variables=("x", "q"),
))
_register(Family(
    "phi", "convolution kernel Phi_n(x,y)",
    lambda ctx, n: phi_kernel(ctx, n), variables=("x", "y"),
))
_register(Family(
    "springer", "Springer number s_n (constant)",
    _build_springer, variables=(),
))
_register(Family(
    "q_bracket", "[n]_p = 1 + p + ... + p^(n-1)",
    lambda ctx, n: q_bracket(ctx, n, "p"), variables=("p",),
))


def family(
    ctx: Context,
    name: str,
    n: int,
    *,
    k: Optional[int] = None,
    r: Optional[int] = None,
) -> Poly:
    """Build a registered family member; BadParams on a bad name or index."""
    fam = REGISTRY.get(name)
    if fam is None:
        raise BadParams(f"unknown family {name!r} (try: {', '.join(sorted(REGISTRY))})")
    if n < 0:
        raise BadParams("n must be nonnegative")
    kwargs = {}
    if fam.needs_k:
        kwargs["k"] = k
    if fam.needs_r:
        kwargs["r"] = r
    try:
        return fam.build(ctx, n, **kwargs)
    except OutOfTable:
        raise
