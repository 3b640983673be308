"""Identity registry: every cross-check the toolkit certifies, by stable id.

Each identity computes two (or more) routes to the same exact object -- a
grammar iterate against an enumeration, a recurrence against a statistic
distribution, a closed form against a specialisation -- and compares them
with zero tolerance.  Results carry a structured mismatch list so a failure
shows both sides and their difference.

Identities are grouped by the acceptance criterion they certify (the
``criterion`` field); ``run_suite`` executes any subset at ``quick`` or
``full`` bounds and reports deterministically ordered results regardless of
worker scheduling.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import families, fsaction, permstats, shape
from .families import (
    alpha_tables,
    classical_eulerian,
    colored_decomposition,
    colored_eulerian,
    derangement_poly,
    fix_cyc_eulerian,
    gamma_poly,
    gamma_triangle,
    one_over_k_decomposition,
    one_over_k_eulerian,
    one_over_k_pm_tables,
    phi_kernel,
    q_bracket,
    q_eulerian,
    springer,
    substituted_eulerian,
    type_b_q_eulerian,
)
from .grammar import Grammar
from .multipoly import Context, Poly, binomial
from .permstats import SizeExceeded, gen_poly
from .shape import CoeffSeq, check as shape_check, decompose, gamma_expand, shape_report

DEFAULT_SEED = 94101


class UnknownIdentity(KeyError):
    """No identity with the requested id."""


@dataclass
class Env:
    seed: int = DEFAULT_SEED
    max_class: Optional[int] = None

    def rng(self, ident: str) -> random.Random:
        return random.Random(f"{self.seed}:{ident}")


class Checker:
    """Accumulates mismatches and report details for one identity run."""

    def __init__(self):
        self.mismatches: list[dict] = []
        self.details: dict[str, str] = {}

    def eq(self, context: str, lhs, rhs):
        if lhs != rhs:
            entry = {"context": context, "lhs": str(lhs), "rhs": str(rhs)}
            if isinstance(lhs, Poly) and isinstance(rhs, Poly):
                entry["diff"] = str(lhs - rhs)
            self.mismatches.append(entry)

    def ok(self, context: str, condition: bool, info: str = ""):
        if not condition:
            self.mismatches.append(
                {"context": context, "lhs": "expected true", "rhs": info or "false"}
            )

    def note(self, key: str, value):
        self.details[key] = str(value)


@dataclass
class IdentityRecord:
    id: str
    description: str
    criterion: Optional[int]
    bounds: dict
    quick: dict
    run: Callable[[dict, Env, Checker], None] = field(repr=False)

    def effective_bounds(self, profile: str, overrides: Optional[dict] = None) -> dict:
        merged = dict(self.bounds)
        if profile == "quick":
            merged.update(self.quick)
        if overrides:
            merged.update({k: v for k, v in overrides.items() if v is not None})
        return merged


@dataclass
class IdentityResult:
    id: str
    status: str  # pass | fail | skipped
    elapsed: float
    detail: str
    details: dict
    mismatches: list[dict]

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "elapsed": round(self.elapsed, 3),
            "detail": self.detail,
            "details": self.details,
            "mismatches": self.mismatches,
        }


REGISTRY: dict[str, IdentityRecord] = {}


def _identity(id: str, description: str, criterion: Optional[int], bounds: dict, quick: dict):
    def wrap(fn):
        REGISTRY[id] = IdentityRecord(id, description, criterion, bounds, quick, fn)
        return fn

    return wrap


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _plain_joint(n: int, max_class=None) -> dict:
    """(exc, drop, fix, cyc, cda, des, dd, lpk, cpk_inf, crun) -> count."""
    permstats._check_guard("plain", n, 1, 1, max_class)
    out: dict[tuple, int] = {}
    for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
        exc, drop, fix, cyc, des, dd, lpk, cda, _cdd, _cpk2, cpk_inf = tup
        key = (exc, drop, fix, cyc, cda, des, dd, lpk, cpk_inf, 2 * cpk_inf + cyc)
        out[key] = out.get(key, 0) + cnt
    return out


def _poly_from_coeffs(ctx: Context, coeffs, var="x") -> Poly:
    x = ctx.var(var)
    total = ctx.zero()
    for i, c in enumerate(coeffs):
        total = total + ctx.const(c) * x**i
    return total


def _gamma_basis_sum(ctx: Context, table: dict[int, int], m: int, var="x") -> Poly:
    """sum table[i] * x^i (1+x)^(m-2i)."""
    x = ctx.var(var)
    onepx = ctx.const(1) + x
    total = ctx.zero()
    for i, c in sorted(table.items()):
        total = total + ctx.const(c) * x**i * onepx ** (m - 2 * i)
    return total


def _colored_fexc_from_plain(
    ctx: Context, n: int, r: int, *, derangements_only: bool = False, max_class=None
) -> Poly:
    """sum over colored class of x^fexc q^cyc, computed from the plain class.

    Colors are independent across positions once the underlying permutation
    is fixed: an excedance position contributes x^r + x [r-1]_x, every other
    non-fixed position contributes [r]_x.  The derangement variant keeps only
    fixed-point-free underlying permutations (fixed points would need t or s
    weights, both zero there).  Cross-validated against direct colored
    enumeration at small n by the calling identity.
    """
    x = ctx.var("x")
    exc_factor = x**r + x * q_bracket(ctx, r - 1, "x") if r > 1 else x
    rest_factor = q_bracket(ctx, r, "x")
    qv = ctx.var("q")
    permstats._check_guard("plain", n, 1, 1, max_class)
    joint: dict[tuple[int, int], int] = {}
    for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
        exc, fix, cyc = tup[0], tup[2], tup[3]
        if derangements_only and fix:
            continue
        key = (exc, fix, cyc)
        joint[key] = joint.get(key, 0) + cnt
    total = ctx.zero()
    for (exc, fix, cyc), cnt in sorted(joint.items()):
        if derangements_only:
            term = cnt * exc_factor**exc * rest_factor ** (n - exc) * qv**cyc
        else:
            # fixed points take any color: color 0 is a fixed point (x^0),
            # color c > 0 is a singleton contributing x^c
            term = (
                cnt
                * exc_factor**exc
                * rest_factor ** (n - exc - fix)
                * rest_factor**fix
                * qv**cyc
            )
        total = total + term
    return total


def _signed_gen(ctx, n, weighting, where=None, max_class=None):
    return gen_poly(ctx, "signed", n, weighting, where=where, max_class=max_class)


def _colored_gen(ctx, n, r, weighting, where=None, max_class=None):
    return gen_poly(ctx, "colored", n, weighting, r=r, where=where, max_class=max_class)


# ---------------------------------------------------------------------------
# criterion 1: grammar iterates against enumeration
# ---------------------------------------------------------------------------


@_identity(
    "lemma7-grammar-exc",
    "grammar {I->Ipq, p->xy, x->xy, y->xy} generates the excedance/drop/fix/cycle distribution",
    1,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_lemma7(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        g = Grammar(ctx, {"I": "I*p*q", "p": "x*y", "x": "x*y", "y": "x*y"})
        lhs = g.iterate(ctx.var("I"), n)
        rhs = ctx.var("I") * gen_poly(
            ctx, "plain", n,
            {"exc": "x", "drop": "y", "fix": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "lemma8-grammar-onek",
    "grammar {I->Iy, x->kxy, y->kxy} generates the 1/k-Eulerian coefficients, k symbolic and numeric",
    1,
    {"max_n": 7, "ks": (1, 2, 3)},
    {"max_n": 5, "ks": (1, 2)},
)
def _run_lemma8(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        g = Grammar(ctx, {"I": "I*y", "x": "k*x*y", "y": "k*x*y"})
        lhs = g.iterate(ctx.var("I"), n)
        rhs = ctx.var("I") * gen_poly(
            ctx, "plain", n,
            {"exc": "x", "drop": "y", "fix": "y", "rlen": "k"},
            max_class=env.max_class,
        )
        ck.eq(f"n={n} symbolic", lhs, rhs)
        for k in bounds["ks"]:
            gk = Grammar(ctx, {"I": "I*y", "x": f"{k}*x*y", "y": f"{k}*x*y"})
            ck.eq(
                f"n={n} k={k}",
                gk.iterate(ctx.var("I"), n),
                lhs.substitute({"k": k}),
            )


@_identity(
    "change-of-grammar",
    "substituting the defining bindings into the transformed grammars recovers the originals",
    1,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_change_of_grammar(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        g0 = Grammar(ctx, {"I": "I*y", "x": "k*x*y", "y": "k*x*y"})
        g1 = Grammar(ctx, {
            "I": "J", "J": "J*u + (k-1)*I*v", "u": "2*k*v", "v": "k*u*v",
        })
        bound = {
            "J": ctx.poly("I*y"), "u": ctx.poly("x+y"), "v": ctx.poly("x*y"),
        }
        ck.eq(
            f"G1->G0 n={n}",
            g1.iterate(ctx.var("I"), n).substitute(bound),
            g0.iterate(ctx.var("I"), n),
        )
        g = Grammar(ctx, {"I": "I*p*q", "p": "x*y", "x": "x*y", "y": "x*y"})
        g2 = Grammar(ctx, {"I": "I*p*q", "p": "u", "u": "u*v", "v": "2*u"})
        ck.eq(
            f"G2->G n={n}",
            g2.iterate(ctx.var("I"), n).substitute(
                {"u": ctx.poly("x*y"), "v": ctx.poly("x+y")}
            ),
            g.iterate(ctx.var("I"), n),
        )


@_identity(
    "lemma-g3-grammar-signed",
    "the signed-permutation grammar generates the six-statistic distribution",
    1,
    {"max_n": 5},
    {"max_n": 4},
)
def _run_g3(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        rhs_rule = "(1+p)*x*y"
        g3 = Grammar(ctx, {
            "J": "q*J*(t+s*p)", "s": rhs_rule, "t": rhs_rule,
            "x": rhs_rule, "y": rhs_rule,
        })
        lhs = g3.iterate(ctx.var("J"), n)
        rhs = ctx.var("J") * _signed_gen(
            ctx, n,
            {"exc": "x", "aexc": "y", "single": "s", "fix": "t", "neg": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "lemma-g8-grammar-colored",
    "grammar {u->uv^r, v->u^r v} encodes the colored Eulerian coefficients",
    1,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_g8(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            g8 = Grammar(ctx, {"u": f"u*v^{r}", "v": f"u^{r}*v"})
            seed = ctx.monomial({"u": r - 1, "v": 1})
            lhs = g8.iterate(seed, n)
            counts = _colored_gen(
                ctx, n, r, {"exc_f": "x"}, max_class=env.max_class
            ).coeffs_in("x")
            rhs = ctx.zero()
            for kk, c in enumerate(counts):
                rhs = rhs + c * ctx.monomial(
                    {"u": (n - kk) * r + r - 1, "v": kk * r + 1}
                )
            ck.eq(f"r={r} n={n}", lhs, rhs)


@_identity(
    "g10-grammar-colored",
    "first colored grammar vs the (exc, aexc, fix, cyc) distribution",
    1,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_g10(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            g10 = Grammar(ctx, {
                "I": f"q*I*(({r}-1)*x + p)",
                "x": f"{r}*x*y", "y": f"{r}*x*y", "p": f"{r}*x*y",
            })
            lhs = g10.iterate(ctx.var("I"), n)
            rhs = ctx.var("I") * _colored_gen(
                ctx, n, r,
                {"exc_f": "x", "aexc_f": "y", "fix": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


@_identity(
    "g12-grammar-colored",
    "second colored grammar (color-sum refinement) vs enumeration, p symbolic",
    1,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_g12(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            bracket_r = q_bracket(ctx, r, "p")
            bracket_r1 = q_bracket(ctx, r - 1, "p")
            rule = bracket_r * ctx.poly("x*y")
            g12 = Grammar(ctx, {
                "I": ctx.var("q") * ctx.var("I")
                * (ctx.var("t") + ctx.var("s") * ctx.var("p") * bracket_r1),
                "x": rule, "y": rule, "t": rule, "s": rule,
            })
            lhs = g12.iterate(ctx.var("I"), n)
            rhs = ctx.var("I") * _colored_gen(
                ctx, n, r,
                {"exc_B": "x", "aexc_f": "y", "single": "s", "fix": "t",
                 "csum": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


@_identity(
    "g14-grammar-colored",
    "third colored grammar (natural-order statistics) vs enumeration, p symbolic",
    1,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_g14(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            bracket_r1 = q_bracket(ctx, r - 1, "p")
            rule = ctx.poly("x*y") + ctx.var("p") * bracket_r1 * ctx.poly("y^2")
            g14 = Grammar(ctx, {
                "I": ctx.var("q") * ctx.var("I")
                * (ctx.var("t") + ctx.var("s") * ctx.var("p") * bracket_r1),
                "t": rule, "s": rule, "x": rule, "y": rule,
            })
            lhs = g14.iterate(ctx.var("I"), n)
            rhs = ctx.var("I") * _colored_gen(
                ctx, n, r,
                {"exc_A": "x", "aexc_A": "y", "single": "s", "fix": "t",
                 "csum": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


# ---------------------------------------------------------------------------
# criterion 2: recurrences against enumeration
# ---------------------------------------------------------------------------


@_identity(
    "rec-anxq",
    "the derivative recurrence for A_n(x,q) matches the excedance/cycle distribution",
    2,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_rec_anxq(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        ck.eq(
            f"n={n}",
            q_eulerian(ctx, n),
            gen_poly(ctx, "plain", n, {"exc": "x", "cyc": "q"}, max_class=env.max_class),
        )


@_identity(
    "rec-anjk",
    "the 1/k-Eulerian coefficient recurrence matches x^exc k^(n-cyc) enumeration",
    2,
    {"max_n": 8, "ks": (1, 2, 3, 4)},
    {"max_n": 6, "ks": (1, 2, 3)},
)
def _run_rec_anjk(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        sym = one_over_k_eulerian(ctx, n, None)
        enum = gen_poly(
            ctx, "plain", n, {"exc": "x", "rlen": "k"}, max_class=env.max_class
        )
        ck.eq(f"n={n} symbolic", sym, enum)
        scaled = (ctx.var("k") ** n) * q_eulerian(ctx, n)
        for k in bounds["ks"]:
            ck.eq(
                f"n={n} k={k} numeric rows",
                one_over_k_eulerian(ctx, n, k),
                sym.substitute({"k": k}),
            )
            ck.eq(
                f"n={n} k={k} equals k^n A_n(x,1/k)",
                scaled.eval_rational({"q": Fraction(1, k)}).substitute({"k": k}),
                one_over_k_eulerian(ctx, n, k),
            )


@_identity(
    "rec-enij-prop14",
    "the partial-gamma triangle recurrence equals cycle counts over no-double-ascent classes",
    2,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_rec_enij(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        tri = gamma_triangle(ctx, n)
        seen = set()
        for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
            exc, fix, cyc, cda = tup[0], tup[2], tup[3], tup[7]
            if cda == 0:
                seen.add((fix, exc))
        for (i, j) in sorted(set(tri) | seen):
            lhs = tri.get((i, j), ctx.zero())
            rhs = gen_poly(
                ctx, "plain", n, {"cyc": "q"},
                where=lambda s, i=i, j=j: s["cda"] == 0 and s["fix"] == i and s["exc"] == j,
                max_class=env.max_class,
            )
            ck.eq(f"n={n} gamma[{i},{j}]", lhs, rhs)
        ck.eq(
            f"n={n} reassembly",
            fix_cyc_eulerian(ctx, n),
            gen_poly(
                ctx, "plain", n, {"exc": "x", "fix": "p", "cyc": "q"},
                max_class=env.max_class,
            ),
        )


@_identity(
    "rec-arnk",
    "the colored Eulerian coefficient recurrence matches flag-order excedance counts",
    2,
    {"max_n": 5, "rs": (1, 2, 3), "sym_max_n": 8},
    {"max_n": 4, "rs": (1, 2), "sym_max_n": 6},
)
def _run_rec_arnk(bounds, env, ck):
    for n in range(bounds["sym_max_n"] + 1):
        ctx = Context()
        sym = colored_eulerian(ctx, n, None)
        for r in bounds["rs"]:
            ck.eq(
                f"n={n} r={r} symbolic specialisation",
                sym.substitute({"r": r}),
                colored_eulerian(ctx, n, r),
            )
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            ck.eq(
                f"n={n} r={r} enumeration",
                colored_eulerian(ctx, n, r),
                _colored_gen(ctx, n, r, {"exc_f": "x"}, max_class=env.max_class),
            )


@_identity(
    "rec-bnxq",
    "the type-B q-Eulerian recurrence matches weak excedances weighted by positive entries",
    2,
    {"max_n": 6},
    {"max_n": 5},
)
def _run_rec_bnxq(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        fam = type_b_q_eulerian(ctx, n)
        raw = _signed_gen(ctx, n, {"wexc": "x", "neg": "q"}, max_class=env.max_class)
        ck.eq(f"n={n} enumeration", fam, raw.reverse_in("q", n))
        colored_sym = colored_eulerian(ctx, n, None)
        ck.eq(
            f"n={n} colored specialisation r=q+1",
            colored_sym.substitute({"r": ctx.poly("q+1")}),
            fam,
        )


@_identity(
    "thm18-crun",
    "the cycle-run gamma vectors: recurrence tables equal 4^cpk sums over crun classes",
    2,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_thm18(bounds, env, ck):
    for n in range(2, bounds["max_n"] + 1):
        ctx = Context()
        plus, minus = one_over_k_pm_tables(ctx, n, 2)
        joint = _plain_joint(n, max_class=env.max_class)
        by_crun: dict[int, int] = {}
        for key, cnt in joint.items():
            cpk_inf, crun = key[8], key[9]
            by_crun[(crun, cpk_inf)] = by_crun.get((crun, cpk_inf), 0) + cnt
        enum_plus: dict[int, int] = {}
        enum_minus: dict[int, int] = {}
        for (crun, cpk), cnt in by_crun.items():
            if crun % 2:
                enum_plus[(crun - 1) // 2] = enum_plus.get((crun - 1) // 2, 0) + cnt * 4**cpk
            else:
                enum_minus[(crun - 2) // 2] = enum_minus.get((crun - 2) // 2, 0) + cnt * 4**cpk
        for i in sorted(set(plus) | set(enum_plus)):
            ck.eq(f"n={n} xi+[{i}]", plus.get(i, ctx.zero()), ctx.const(enum_plus.get(i, 0)))
        for i in sorted(set(minus) | set(enum_minus)):
            ck.eq(f"n={n} xi-[{i}]", minus.get(i, ctx.zero()), ctx.const(enum_minus.get(i, 0)))
        lhs = gen_poly(
            ctx, "plain", n, {"exc": "x", "rlen": "k"}, max_class=env.max_class
        ).substitute({"k": 2})
        a, b = one_over_k_decomposition(ctx, n, 2)
        ck.eq(f"n={n} decomposition", lhs, a + ctx.var("x") * b)
        if n == 3:
            fp, _ = families.one_over_k_pm_polys(ctx, 3, 2)
            ck.note("xi_plus[3]", fp)
    ctx = Context()
    if bounds["max_n"] >= 3:
        ck.note("xi_plus_tables", {
            n: str(families.one_over_k_pm_polys(ctx, n, 2)[0])
            for n in range(2, min(4, bounds["max_n"] + 1))
        })


@_identity(
    "rec-onek-decom",
    "the plus/minus recurrence system assembles the symmetric decomposition of A_n^{(k)}",
    2,
    {"max_n": 8, "ks": (1, 2, 3, 4)},
    {"max_n": 6, "ks": (1, 2, 3)},
)
def _run_rec_onek_decom(bounds, env, ck):
    for k in bounds["ks"]:
        for n in range(1, bounds["max_n"] + 1):
            ctx = Context()
            a, b = one_over_k_decomposition(ctx, n, k)
            full = one_over_k_eulerian(ctx, n, k)
            ck.eq(f"k={k} n={n} reassembly", a + ctx.var("x") * b, full)
            seq = CoeffSeq.from_poly(full, "x", m=max(n - 1, 0))
            da, db = decompose(seq)
            ck.eq(f"k={k} n={n} a-part", a, da.to_poly(ctx))
            ck.eq(f"k={k} n={n} b-part", b, db.to_poly(ctx))


@_identity(
    "rec-alpha-decom",
    "the colored plus/minus system assembles the symmetric decomposition of A_{n,r}(x)",
    2,
    {"max_n": 8, "rs": (1, 2, 3, 4)},
    {"max_n": 6, "rs": (2, 3)},
)
def _run_rec_alpha_decom(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            a, b = colored_decomposition(ctx, n, r)
            full = colored_eulerian(ctx, n, r)
            ck.eq(f"r={r} n={n} reassembly", a + ctx.var("x") * b, full)
            seq = CoeffSeq.from_poly(full, "x", m=n)
            da, db = decompose(seq)
            ck.eq(f"r={r} n={n} a-part", a, da.to_poly(ctx))
            ck.eq(f"r={r} n={n} b-part", b, db.to_poly(ctx))
            if r >= 2 and n >= 1:
                plus, minus = alpha_tables(ctx, n, r)
                ck.ok(
                    f"r={r} n={n} nonnegative",
                    all(c.constant_term() >= 0 for c in plus.values())
                    and all(c.constant_term() >= 0 for c in minus.values()),
                )


# ---------------------------------------------------------------------------
# criterion 3: the substitution theorems
# ---------------------------------------------------------------------------


@_identity(
    "thm9-signed-transform",
    "the six-variable signed Eulerian polynomial is a substituted plain Eulerian polynomial",
    3,
    {"max_n": 5},
    {"max_n": 4},
)
def _run_thm9(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        lhs = _signed_gen(
            ctx, n,
            {"exc": "x", "aexc": "y", "single": "s", "fix": "t", "neg": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        rhs = substituted_eulerian(
            ctx, n,
            ctx.poly("(1+p)*x"), ctx.poly("(1+p)*y"), ctx.poly("t+s*p"), "q",
            max_class=env.max_class,
        )
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "thm12-signed-typeA",
    "the natural-order signed statistics arise from the substitution x -> x+py",
    3,
    {"max_n": 5},
    {"max_n": 4},
)
def _run_thm12(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        lhs = _signed_gen(
            ctx, n,
            {"exc_A": "x", "aexc_A": "y", "single": "s", "fix": "t",
             "neg": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        rhs = substituted_eulerian(
            ctx, n,
            ctx.poly("x+p*y"), ctx.poly("(1+p)*y"), ctx.poly("t+s*p"), "q",
            max_class=env.max_class,
        )
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "thm22-colored-transform",
    "first multivariate colored Eulerian polynomial as a substituted plain one",
    3,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_thm22(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            lhs = _colored_gen(
                ctx, n, r,
                {"exc_f": "x", "aexc_f": "y", "fix": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            rhs = substituted_eulerian(
                ctx, n,
                ctx.const(r) * ctx.var("x"),
                ctx.const(r) * ctx.var("y"),
                ctx.const(r - 1) * ctx.var("x") + ctx.var("p"),
                "q",
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


@_identity(
    "thm24-colored-transform",
    "second colored transform: color sums enter through p-brackets",
    3,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_thm24(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            br = q_bracket(ctx, r, "p")
            br1 = q_bracket(ctx, r - 1, "p")
            lhs = _colored_gen(
                ctx, n, r,
                {"exc_B": "x", "aexc_f": "y", "single": "s", "fix": "t",
                 "csum": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            rhs = substituted_eulerian(
                ctx, n,
                br * ctx.var("x"), br * ctx.var("y"),
                ctx.var("t") + ctx.var("s") * ctx.var("p") * br1, "q",
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


@_identity(
    "thm26-colored-transform",
    "third colored transform: natural-order statistics via x -> x + p[r-1]_p y",
    3,
    {"max_n": 4, "rs": (1, 2, 3)},
    {"max_n": 3, "rs": (1, 2)},
)
def _run_thm26(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            br = q_bracket(ctx, r, "p")
            br1 = q_bracket(ctx, r - 1, "p")
            lhs = _colored_gen(
                ctx, n, r,
                {"exc_A": "x", "aexc_A": "y", "single": "s", "fix": "t",
                 "csum": "p", "cyc": "q"},
                max_class=env.max_class,
            )
            rhs = substituted_eulerian(
                ctx, n,
                ctx.var("x") + ctx.var("p") * br1 * ctx.var("y"),
                br * ctx.var("y"),
                ctx.var("t") + ctx.var("s") * ctx.var("p") * br1, "q",
                max_class=env.max_class,
            )
            ck.eq(f"r={r} n={n}", lhs, rhs)


# ---------------------------------------------------------------------------
# criterion 4: closed-form sign evaluations
# ---------------------------------------------------------------------------


@_identity(
    "sign-anx11",
    "A_n(x,1,-1) collapses to -(x-1)^(n-1)",
    4,
    {"max_n": 7},
    {"max_n": 6},
)
def _run_sign_anx11(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        lhs = fix_cyc_eulerian(ctx, n).substitute({"p": 1, "q": -1})
        rhs = -((ctx.var("x") - 1) ** (n - 1))
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "sign-anx12",
    "A_n(x,0,-1) collapses to -x [n-1]_x",
    4,
    {"max_n": 7},
    {"max_n": 6},
)
def _run_sign_anx12(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        lhs = fix_cyc_eulerian(ctx, n).substitute({"p": 0, "q": -1})
        rhs = -(ctx.var("x") * q_bracket(ctx, n - 1, "x"))
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "sign-gamma-binomials",
    "the three binomial evaluations of gamma_n(x, ., -1)",
    4,
    {"max_n": 7},
    {"max_n": 6},
)
def _run_sign_gamma(bounds, env, ck):
    for n in range(2, bounds["max_n"] + 1):
        ctx = Context()
        g = gamma_poly(ctx, n)
        x = ctx.var("x")
        rhs1 = ctx.zero()
        for ell in range(n + 1):
            rhs1 = rhs1 + (-1) ** (n - ell) * binomial(n - ell, ell) * x**ell
        ck.eq(f"n={n} p=1", g.substitute({"p": 1, "q": -1}), rhs1)
        rhs2 = ctx.zero()
        for ell in range(n + 1):
            rhs2 = rhs2 + (-1) ** (ell + 1) * binomial(n - 2 - ell, ell) * x ** (ell + 1)
        ck.eq(f"n={n} p=0", g.substitute({"p": 0, "q": -1}), rhs2)
        rhs3 = ctx.zero()
        for ell in range(2 * n + 1):
            rhs3 = rhs3 + (-1) ** (ell + 1) * binomial(2 * n - 2 - ell, ell) * x ** (ell + 1)
        ck.eq(f"n={n} p=x", g.substitute({"p": x, "q": -1}), rhs3)


@_identity(
    "sign-dnb-fexc",
    "signed derangements: the flag-excedance alternating-cycle sum telescopes",
    4,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_sign_dnb(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        lhs = _signed_gen(
            ctx, n, {"fexc": "x", "neg": "p", "cyc": "q"},
            where=lambda s: s["fix"] == 0,
            max_class=env.max_class,
        ).substitute({"q": -1})
        x, p = ctx.var("x"), ctx.var("p")
        rhs = ctx.zero()
        for i in range(1, n):
            rhs = rhs - x ** (2 * i)
        for i in range(1, n + 1):
            rhs = rhs - p * x ** (2 * i - 1)
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "sign-bagno-garber",
    "colored flag excedances with alternating cycle signs collapse to -(x^r-1)^n/(x-1)",
    4,
    {"max_n": 7, "rs": (1, 2, 3), "direct_max_n": 4},
    {"max_n": 5, "rs": (1, 2), "direct_max_n": 3},
)
def _run_bagno_garber(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(1, bounds["max_n"] + 1):
            ctx = Context()
            lhs = _colored_fexc_from_plain(ctx, n, r, max_class=env.max_class)
            if n <= bounds["direct_max_n"]:
                direct = _colored_gen(
                    ctx, n, r, {"fexc_r": "x", "cyc": "q"}, max_class=env.max_class
                )
                ck.eq(f"r={r} n={n} factorised vs direct", lhs, direct)
            signed = lhs.substitute({"q": -1})
            x = ctx.var("x")
            ck.eq(
                f"r={r} n={n}",
                (x - 1) * signed,
                -((x**r - 1) ** n),
            )


@_identity(
    "sign-anr-typeA",
    "flag excedances of colored derangements without singletons, at cycle sign -1",
    4,
    {"max_n": 7, "rs": (1, 2, 3), "direct_max_n": 4},
    {"max_n": 5, "rs": (1, 2), "direct_max_n": 3},
)
def _run_sign_anr(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(1, bounds["max_n"] + 1):
            ctx = Context()
            lhs = _colored_fexc_from_plain(
                ctx, n, r, derangements_only=True, max_class=env.max_class
            )
            if n <= bounds["direct_max_n"]:
                direct = _colored_gen(
                    ctx, n, r, {"fexc_r": "x", "cyc": "q"},
                    where=lambda s: s["fix"] == 0 and s["single"] == 0,
                    max_class=env.max_class,
                )
                ck.eq(f"r={r} n={n} factorised vs direct", lhs, direct)
            x = ctx.var("x")
            rhs = -(x * q_bracket(ctx, n - 1, "x") * q_bracket(ctx, r, "x") ** n)
            ck.eq(f"r={r} n={n}", lhs.substitute({"q": -1}), rhs)


# ---------------------------------------------------------------------------
# criterion 5: gamma-coefficient interpretations
# ---------------------------------------------------------------------------


@_identity(
    "cor-foata-gamma",
    "Eulerian gamma coefficients count no-double-descent permutations by descents",
    5,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_foata(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        an = gen_poly(ctx, "plain", n, {"des": "x"}, max_class=env.max_class)
        table: dict[int, int] = {}
        for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
            des, dd = tup[4], tup[5]
            if dd == 0:
                table[des] = table.get(des, 0) + cnt
        ck.eq(f"n={n} basis sum", an, _gamma_basis_sum(ctx, table, n - 1))
        gammas = gamma_expand(CoeffSeq.from_poly(an, "x", m=n - 1))
        ck.eq(
            f"n={n} gamma vector",
            [int(g) for g in gammas],
            [table.get(i, 0) for i in range(len(gammas))],
        )


@_identity(
    "cor-zeng-dnxq",
    "derangement q-polynomials expand over no-double-ascent derangements",
    5,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_zeng(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        lhs = gen_poly(
            ctx, "plain", n, {"exc": "x", "cyc": "q"},
            where=lambda s: s["fix"] == 0, max_class=env.max_class,
        )
        x = ctx.var("x")
        onepx = ctx.const(1) + x
        rhs = ctx.zero()
        for k in range(1, n // 2 + 1):
            qsum = gen_poly(
                ctx, "plain", n, {"cyc": "q"},
                where=lambda s, k=k: s["fix"] == 0 and s["cda"] == 0 and s["exc"] == k,
                max_class=env.max_class,
            )
            rhs = rhs + qsum * x**k * onepx ** (n - 2 * k)
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "cor-petersen-lpk",
    "type-B Eulerian polynomials expand over left-peak counts with weight 4^i",
    5,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_petersen(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        bn = _signed_gen(ctx, n, {"wexc": "x"}, max_class=env.max_class)
        table: dict[int, int] = {}
        for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
            lpk = tup[6]
            table[lpk] = table.get(lpk, 0) + cnt
        weighted = {i: 4**i * c for i, c in table.items()}
        ck.eq(f"n={n}", bn, _gamma_basis_sum(ctx, weighted, n))


@_identity(
    "cor-springer",
    "no-double-ascent permutations weighted 2^(n-exc) sum to binomial Springer sums",
    5,
    {"max_n": 7},
    {"max_n": 6},
)
def _run_springer(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        lhs = 0
        for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
            exc, cda = tup[0], tup[7]
            if cda == 0:
                lhs += cnt * 2 ** (n - exc)
        rhs = sum(binomial(n, i) * springer(i) for i in range(n + 1))
        ck.eq(f"n={n}", lhs, rhs)


@_identity(
    "cor-lpk-nocda",
    "left peaks are equidistributed with a 2-power weighting of no-double-ascent classes",
    5,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_lpk_nocda(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        lhs = gen_poly(ctx, "plain", n, {"lpk": "x"}, max_class=env.max_class)
        x = ctx.var("x")
        rhs = ctx.zero()
        for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
            exc, fix, cda = tup[0], tup[2], tup[7]
            if cda == 0:
                rhs = rhs + cnt * 2 ** (n - fix - 2 * exc) * x**exc
        ck.eq(f"n={n}", lhs, rhs)


# ---------------------------------------------------------------------------
# criterion 6: shape verdicts on exact coefficient sequences
# ---------------------------------------------------------------------------

GRID_POINTS = tuple(Fraction(i, 4) for i in range(5))


@_identity(
    "shape-anpq-grid",
    "A_n(x,p,q) is alternatingly increasing on the rational unit grid",
    6,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_shape_grid(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        fam = fix_cyc_eulerian(ctx, n)
        for pv in GRID_POINTS:
            for qv in GRID_POINTS:
                inst = fam.eval_rational({"p": pv, "q": qv})
                seq = CoeffSeq.from_poly(inst, "x", m=max(n - 1, 0))
                report = shape_report(seq)
                ck.ok(
                    f"n={n} p={pv} q={qv} alternatingly increasing",
                    report.verdicts["alternatingly_increasing"],
                    str(seq.coeffs),
                )
                nonneg = all(c >= 0 for c in seq.coeffs)
                ck.ok(
                    f"n={n} p={pv} q={qv} implication chain",
                    shape.implications_hold(report.verdicts, nonneg),
                    str(report.verdicts),
                )


@_identity(
    "shape-onek-bigamma",
    "A_n(x, 1/k) and A_n^{(k)}(x) are bi-gamma-positive",
    6,
    {"max_n": 8, "ks": (1, 2, 3, 4)},
    {"max_n": 6, "ks": (1, 2, 3)},
)
def _run_shape_onek(bounds, env, ck):
    for k in bounds["ks"]:
        for n in range(1, bounds["max_n"] + 1):
            ctx = Context()
            rational = q_eulerian(ctx, n).eval_rational({"q": Fraction(1, k)})
            seq_q = CoeffSeq.from_poly(rational, "x", m=max(n - 1, 0))
            ck.ok(
                f"k={k} n={n} A_n(x,1/k) bi-gamma",
                shape_check(seq_q, "bi_gamma_positive"),
                str(seq_q.coeffs),
            )
            onek = one_over_k_eulerian(ctx, n, k)
            seq_i = CoeffSeq.from_poly(onek, "x", m=max(n - 1, 0))
            ck.ok(
                f"k={k} n={n} A_n^(k) bi-gamma",
                shape_check(seq_i, "bi_gamma_positive"),
                str(seq_i.coeffs),
            )
            ck.eq(
                f"k={k} n={n} scaling",
                onek,
                k**n * rational,
            )


@_identity(
    "shape-dnb-altinc",
    "type-B derangement polynomials are alternatingly increasing",
    6,
    {"max_n": 6},
    {"max_n": 5},
)
def _run_shape_dnb(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        dnb = _signed_gen(
            ctx, n, {"exc": "x"}, where=lambda s: s["fix"] == 0,
            max_class=env.max_class,
        )
        ck.eq(
            f"n={n} equals 2^n A_n(x,1/2,1)",
            dnb,
            (2**n * fix_cyc_eulerian(ctx, n)).eval_rational({"p": Fraction(1, 2)})
            .substitute({"q": 1}),
        )
        seq = CoeffSeq.from_poly(dnb, "x", m=max(n - 1, 0))
        ck.ok(
            f"n={n} alternatingly increasing",
            shape_check(seq, "alternatingly_increasing"),
            str(seq.coeffs),
        )


@_identity(
    "shape-bnq-spiral",
    "B_n(x,q) is spiral for q <= 1 and alternatingly increasing for q >= 1",
    6,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_shape_bnq(bounds, env, ck):
    spiral_points = (Fraction(0), Fraction(1, 2), Fraction(1))
    alt_points = (Fraction(1), Fraction(2), Fraction(3))
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        fam = type_b_q_eulerian(ctx, n)
        for qv in spiral_points:
            seq = CoeffSeq.from_poly(fam.eval_rational({"q": qv}), "x", m=n)
            ck.ok(f"n={n} q={qv} spiral", shape_check(seq, "spiral"), str(seq.coeffs))
        for qv in alt_points:
            seq = CoeffSeq.from_poly(fam.eval_rational({"q": qv}), "x", m=n)
            ck.ok(
                f"n={n} q={qv} alternatingly increasing",
                shape_check(seq, "alternatingly_increasing"),
                str(seq.coeffs),
            )


@_identity(
    "shape-dfexc-gamma",
    "flag-excedance derangement polynomials are gamma-positive; the full-group version is bi-gamma",
    6,
    {"max_n": 6},
    {"max_n": 5},
)
def _run_shape_dfexc(bounds, env, ck):
    gamma_points = (Fraction(1, 2), Fraction(1), Fraction(2))
    bigamma_points = (Fraction(1), Fraction(2))
    for n in range(1, bounds["max_n"] + 1):
        ctx = Context()
        dn = _signed_gen(
            ctx, n, {"fexc": "x", "cyc": "q"},
            where=lambda s: s["fix"] == 0, max_class=env.max_class,
        )
        for qv in gamma_points:
            seq = CoeffSeq.from_poly(dn.eval_rational({"q": qv}), "x", m=2 * n)
            ck.ok(
                f"n={n} q={qv} gamma-positive",
                shape_check(seq, "gamma_positive"),
                str(seq.coeffs),
            )
        fn = _signed_gen(ctx, n, {"fexc": "x", "neg": "p"}, max_class=env.max_class)
        for pv in bigamma_points:
            seq = CoeffSeq.from_poly(fn.eval_rational({"p": pv}), "x", m=2 * n - 1)
            ck.ok(
                f"n={n} p={pv} bi-gamma-positive",
                shape_check(seq, "bi_gamma_positive"),
                str(seq.coeffs),
            )


# ---------------------------------------------------------------------------
# criterion 7: the convolution recurrence and its specialisations
# ---------------------------------------------------------------------------


@_identity(
    "thm11-phi-recurrence",
    "the six-variable signed polynomial satisfies the binomial convolution with Phi",
    7,
    {"max_n": 6},
    {"max_n": 4},
)
def _run_thm11(bounds, env, ck):
    ctx = Context()
    weights = {"exc": "x", "aexc": "y", "single": "s", "fix": "t", "neg": "p"}
    bs = [
        _signed_gen(ctx, m, weights, max_class=env.max_class)
        for m in range(bounds["max_n"] + 1)
    ]
    tsp = ctx.poly("t + s*p")
    onep = ctx.poly("1 + p")
    for n in range(2, bounds["max_n"] + 1):
        rhs = tsp**n
        for k in range(n - 1):
            rhs = rhs + binomial(n, k) * bs[k] * phi_kernel(ctx, n - k) * onep ** (n - k)
        ck.eq(f"n={n}", bs[n], rhs)


@_identity(
    "cor-four-specializations",
    "the four univariate convolution recurrences (classical, derangement, type B, type-B derangement)",
    7,
    {"max_n": 7},
    {"max_n": 5},
)
def _run_four_spec(bounds, env, ck):
    ctx = Context()
    x = ctx.var("x")
    top = bounds["max_n"]
    a = [gen_poly(ctx, "plain", m, {"exc": "x"}, max_class=env.max_class) for m in range(top + 1)]
    d = [
        gen_poly(ctx, "plain", m, {"exc": "x"}, where=lambda s: s["fix"] == 0,
                 max_class=env.max_class)
        for m in range(top + 1)
    ]
    b = [_signed_gen(ctx, m, {"wexc": "x"}, max_class=env.max_class) for m in range(top + 1)]
    db = [
        _signed_gen(ctx, m, {"exc": "x"}, where=lambda s: s["fix"] == 0,
                    max_class=env.max_class)
        for m in range(top + 1)
    ]

    def geom(m):
        return x * q_bracket(ctx, m, "x")

    for n in range(2, top + 1):
        rhs_a = ctx.const(1)
        rhs_d = ctx.zero()
        rhs_b = (ctx.const(1) + x) ** n
        rhs_db = ctx.const(1)
        for k in range(n - 1):
            block = binomial(n, k) * geom(n - 1 - k)
            rhs_a = rhs_a + block * a[k]
            rhs_d = rhs_d + block * d[k]
            rhs_b = rhs_b + block * b[k] * 2 ** (n - k)
            rhs_db = rhs_db + block * db[k] * 2 ** (n - k)
        ck.eq(f"n={n} classical", a[n], rhs_a)
        ck.eq(f"n={n} derangement", d[n], rhs_d)
        ck.eq(f"n={n} type B", b[n], rhs_b)
        ck.eq(f"n={n} type-B derangement", db[n], rhs_db)


# ---------------------------------------------------------------------------
# criterion 8: k-Stirling permutations
# ---------------------------------------------------------------------------


@_identity(
    "stirling-ap-onek",
    "ascent plateaux of k-Stirling permutations generate A_n^{(k)} and its decomposition",
    8,
    {"max_n": 5, "ks": (1, 2, 3)},
    {"max_n": 4, "ks": (1, 2)},
)
def _run_stirling(bounds, env, ck):
    for k in bounds["ks"]:
        for n in range(1, bounds["max_n"] + 1):
            ctx = Context()
            ap_poly, lap_poly = permstats.stirling_identities(
                ctx, n, k, max_class=env.max_class
            )
            onek = one_over_k_eulerian(ctx, n, k)
            ck.eq(f"k={k} n={n} ascent plateaux", ap_poly, onek)
            ck.eq(
                f"k={k} n={n} left plateaux are the reversal",
                lap_poly,
                ap_poly.reverse_in("x", n),
            )
            a_enum = gen_poly(
                ctx, "stirling", n, {"ap": "x"}, k=k,
                where=lambda s: s["first_block_constant"] == 1,
                max_class=env.max_class,
            )
            xb_enum = gen_poly(
                ctx, "stirling", n, {"ap": "x"}, k=k,
                where=lambda s: s["first_block_constant"] == 0,
                max_class=env.max_class,
            )
            a_rec, b_rec = one_over_k_decomposition(ctx, n, k)
            ck.eq(f"k={k} n={n} constant-first-block slice", a_enum, a_rec)
            ck.eq(f"k={k} n={n} complement slice", xb_enum, ctx.var("x") * b_rec)
            da, db = decompose(CoeffSeq.from_poly(ap_poly, "x", m=max(n - 1, 0)))
            ck.eq(f"k={k} n={n} a vs decompose", a_enum, da.to_poly(ctx))
            ck.eq(f"k={k} n={n} b vs decompose", xb_enum, ctx.var("x") * db.to_poly(ctx))


# ---------------------------------------------------------------------------
# criterion 9: the cycle action
# ---------------------------------------------------------------------------


@_identity(
    "fs-bijection",
    "the modified cycle action is a (n-i-2j)-to-one-cell bijection on every class",
    9,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_fs(bounds, env, ck):
    for n in range(1, bounds["max_n"] + 1):
        ck.ok(f"n={n} all cells", fsaction.verify_bijection_all(n, max_class=env.max_class))
    perm = fsaction.parse_cycles("(1,10,6,5,7,3,2,8)(4,9)")
    ck.eq("worked example CDD", fsaction.cdd_values(perm), [3, 6])
    img3 = fsaction.act(perm, 3)
    img6 = fsaction.act(perm, 6)
    ck.eq("worked example phi'_3", img3.cycle_string(), "(1,3,10,6,5,7,2,8)(4,9)")
    ck.eq("worked example phi'_6", img6.cycle_string(), "(1,6,10,5,7,3,2,8)(4,9)")
    base = permstats.plain_base_stats(perm.word)
    ck.eq("example class", (base[2], base[7], base[0], base[3]), (0, 0, 4, 2))
    for img in (img3, img6):
        stats = permstats.plain_base_stats(img.word)
        ck.eq(
            "image class",
            (stats[2], stats[7], stats[0], stats[3]),
            (0, 1, 5, 2),
        )


# ---------------------------------------------------------------------------
# criterion 10: seeded property tests
# ---------------------------------------------------------------------------


def _random_poly(ctx, rng, nvars=3, max_terms=4, max_exp=3, big=False):
    vars_ = ("x", "y", "z")[:nvars]
    total = ctx.zero()
    for _ in range(rng.randint(1, max_terms)):
        coeff = rng.randint(-8, 8)
        if big and rng.random() < 0.3:
            coeff = rng.choice([-1, 1]) * (2**64 + rng.randint(0, 2**20))
        exps = {v: rng.randint(0, max_exp) for v in vars_}
        total = total + ctx.monomial({v: e for v, e in exps.items() if e}, coeff)
    return total


@_identity(
    "prop-ring-axioms",
    "ring axioms on random sparse polynomials with past-64-bit coefficients",
    10,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_ring(bounds, env, ck):
    rng = env.rng("prop-ring-axioms")
    ctx = Context()
    failures = 0
    for case in range(bounds["instances"]):
        f = _random_poly(ctx, rng, big=True)
        g = _random_poly(ctx, rng, big=True)
        h = _random_poly(ctx, rng)
        if (f + g) * h != f * h + g * h:
            failures += 1
        if f * g != g * f:
            failures += 1
        if (f * g) * h != f * (g * h):
            failures += 1
        if f + (-f) != ctx.zero():
            failures += 1
    ck.eq("failures", failures, 0)
    ck.note("instances", bounds["instances"])


@_identity(
    "prop-leibniz",
    "formal derivatives and grammar derivatives satisfy linearity and the product rule",
    10,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_leibniz(bounds, env, ck):
    rng = env.rng("prop-leibniz")
    ctx = Context()
    failures = 0
    for case in range(bounds["instances"]):
        f = _random_poly(ctx, rng)
        g = _random_poly(ctx, rng)
        var = rng.choice(("x", "y", "z"))
        if (f * g).differentiate(var) != f.differentiate(var) * g + f * g.differentiate(var):
            failures += 1
        rules = {}
        for v in ("x", "y", "z"):
            if rng.random() < 0.7:
                rules[v] = _random_poly(ctx, rng, max_terms=2, max_exp=2)
        gram = Grammar(ctx, rules)
        if gram.derive(f * g) != gram.derive(f) * g + f * gram.derive(g):
            failures += 1
        c1, c2 = rng.randint(-5, 5), rng.randint(-5, 5)
        if gram.derive(c1 * f + c2 * g) != c1 * gram.derive(f) + c2 * gram.derive(g):
            failures += 1
    ck.eq("failures", failures, 0)


@_identity(
    "prop-substitution",
    "substitution composes and full rational evaluation matches Horner evaluation",
    10,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_subst(bounds, env, ck):
    rng = env.rng("prop-substitution")
    ctx = Context()
    failures = 0
    for case in range(bounds["instances"]):
        f = _random_poly(ctx, rng)
        g = _random_poly(ctx, rng, nvars=2, max_terms=2, max_exp=2)
        h = _random_poly(ctx, rng, nvars=1, max_terms=2, max_exp=2)
        step = f.substitute({"z": g}).substitute({"x": h})
        composed = f.substitute({"z": g.substitute({"x": h}), "x": h})
        if step != composed:
            failures += 1
        point = {
            v: Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            for v in ("x", "y", "z")
        }
        direct = f.eval_rational(point)
        coeffs = f.coeffs_in("x")
        rest = {"y": point["y"], "z": point["z"]}
        from .multipoly import horner_eval

        horner = horner_eval(
            [c.eval_rational(rest) for c in coeffs], point["x"]
        )
        if horner is None:
            horner = ctx.zero()
        if direct != horner:
            failures += 1
    ck.eq("failures", failures, 0)


def _random_gamma_positive(ctx, rng, m, zero_at_origin=False):
    table = {}
    for i in range(m // 2 + 1):
        if zero_at_origin and i == 0:
            continue
        if rng.random() < 0.8:
            table[i] = rng.randint(0, 6)
    if not table:
        table[1 if zero_at_origin and m >= 2 else 0] = rng.randint(1, 6)
    return _gamma_basis_sum(ctx, table, m), table


@_identity(
    "prop-gamma-closure",
    "products of gamma-positive with (bi-)gamma-positive polynomials keep the property",
    10,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_gamma_closure(bounds, env, ck):
    rng = env.rng("prop-gamma-closure")
    ctx = Context()
    failures = 0
    for case in range(bounds["instances"]):
        mf = rng.randint(0, 5)
        mg = rng.randint(0, 5)
        f, _ = _random_gamma_positive(ctx, rng, mf)
        g, _ = _random_gamma_positive(ctx, rng, mg)
        prod = f * g
        seq = CoeffSeq.from_poly(prod, "x", m=mf + mg)
        if not shape_check(seq, "gamma_positive"):
            failures += 1
        ga, _ = _random_gamma_positive(ctx, rng, mg)
        gb = _random_gamma_positive(ctx, rng, mg - 1)[0] if mg >= 1 else ctx.zero()
        bi = ga + ctx.var("x") * gb
        seq_bi = CoeffSeq.from_poly(f * bi, "x", m=mf + mg)
        if not shape_check(seq_bi, "bi_gamma_positive"):
            failures += 1
    ck.eq("failures", failures, 0)


@_identity(
    "prop-gamma-derivative",
    "derivatives of gamma-positive polynomials vanishing at zero are bi-gamma-positive",
    10,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_gamma_derivative(bounds, env, ck):
    rng = env.rng("prop-gamma-derivative")
    ctx = Context()
    failures = 0
    for case in range(bounds["instances"]):
        m = rng.randint(2, 8)
        f, _ = _random_gamma_positive(ctx, rng, m, zero_at_origin=True)
        if f.constant_term() != 0:
            failures += 1
            continue
        # gamma_0 = 0 forces f_0 = f_m = 0, so f' has declared length m - 2
        deriv = f.differentiate("x")
        seq = CoeffSeq.from_poly(deriv, "x", m=m - 2)
        if not shape_check(seq, "bi_gamma_positive"):
            failures += 1
    ck.eq("failures", failures, 0)


# ---------------------------------------------------------------------------
# module invariants beyond the numbered criteria
# ---------------------------------------------------------------------------


@_identity(
    "prop-decompose-unique",
    "symmetric decomposition is the unique symmetric pair reassembling random sequences",
    None,
    {"instances": 1000},
    {"instances": 200},
)
def _run_prop_decompose(bounds, env, ck):
    rng = env.rng("prop-decompose-unique")
    failures = 0
    for case in range(bounds["instances"]):
        m = rng.randint(0, 8)
        f = CoeffSeq.make(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(m + 1)], m
        )
        a, b = decompose(f)
        sym_a = all(a[i] == a[a.m - i] for i in range(a.m + 1))
        sym_b = all(b[i] == b[b.m - i] for i in range(b.m + 1))
        back = all(
            a[i] + (b[i - 1] if 0 <= i - 1 <= b.m else 0) == f[i]
            for i in range(m + 1)
        )
        if not (sym_a and sym_b and back):
            failures += 1
        # uniqueness: a symmetric perturbation that still reassembles must be zero
        if m >= 1:
            delta = [Fraction(0)] * (m + 1)
            j = rng.randint(0, m)
            delta[j] += 1
            delta[m - j] += 1 if j != m - j else 0
            perturbed = CoeffSeq.make(
                [f[i] + delta[i] for i in range(m + 1)], m
            )
            a2, b2 = decompose(perturbed)
            if a2 == a and b2 == b:
                failures += 1
    ck.eq("failures", failures, 0)


@_identity(
    "equidist-des-exc-drop",
    "descents, excedances and drops are equidistributed",
    None,
    {"max_n": 8},
    {"max_n": 6},
)
def _run_equidist(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        des = gen_poly(ctx, "plain", n, {"des": "x"}, max_class=env.max_class)
        exc = gen_poly(ctx, "plain", n, {"exc": "x"}, max_class=env.max_class)
        drop = gen_poly(ctx, "plain", n, {"drop": "x"}, max_class=env.max_class)
        ck.eq(f"n={n} des vs exc", des, exc)
        ck.eq(f"n={n} exc vs drop", exc, drop)


@_identity(
    "equidist-desb-wexc",
    "type-B descents and weak excedances are equidistributed",
    None,
    {"max_n": 6},
    {"max_n": 5},
)
def _run_equidist_b(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        ck.eq(
            f"n={n}",
            _signed_gen(ctx, n, {"des_B": "x"}, max_class=env.max_class),
            _signed_gen(ctx, n, {"wexc": "x"}, max_class=env.max_class),
        )


@_identity(
    "stat-identities",
    "per-object statistic identities: cycle runs, flag excedances, order-based excedances",
    None,
    {"plain_max_n": 7, "signed_max_n": 4, "colored_max_n": 4, "rs": (1, 2, 3)},
    {"plain_max_n": 6, "signed_max_n": 3, "colored_max_n": 3, "rs": (1, 2)},
)
def _run_stat_identities(bounds, env, ck):
    bad = 0
    for n in range(1, bounds["plain_max_n"] + 1):
        for obj, stats in permstats.enumerate_class("plain", n, max_class=env.max_class):
            runs = 0
            for cyc in obj.cycles():
                word = list(cyc) + [float("inf")]
                segment = 0
                direction = 0
                for i in range(len(word) - 1):
                    d = 1 if word[i + 1] > word[i] else -1
                    if d != direction:
                        segment += 1
                        direction = d
                runs += segment
            if stats["crun"] != runs or stats["crun"] != 2 * stats["cpk_inf"] + stats["cyc"]:
                bad += 1
            if not 1 <= stats["crun"] <= n:
                bad += 1
            if stats["exc"] + stats["drop"] + stats["fix"] != n:
                bad += 1
    for n in range(bounds["signed_max_n"] + 1):
        for obj, stats in permstats.enumerate_class("signed", n, max_class=env.max_class):
            word = obj.word
            exc_a = sum(1 for i, v in enumerate(word, 1) if v > i)
            neg = sum(1 for v in word if v < 0)
            if stats["fexc"] != 2 * exc_a + neg:
                bad += 1
            if stats["exc"] + stats["aexc"] + stats["fix"] + stats["single"] != n:
                bad += 1
    for r in bounds["rs"]:
        for n in range(bounds["colored_max_n"] + 1):
            for obj, stats in permstats.enumerate_class(
                "colored", n, r=r, max_class=env.max_class
            ):
                word = obj.word
                exc_f = sum(
                    1 for i, (v, c) in enumerate(word, 1)
                    if v > i or (v == i and c > 0)
                )
                if stats["exc_f"] != exc_f or stats["exc_f"] != stats["exc_B"] + stats["single"]:
                    bad += 1
                if stats["fexc_r"] != r * stats["exc_A"] + stats["csum"]:
                    bad += 1
    ck.eq("violations", bad, 0)


@_identity(
    "dnr-wexc-formula",
    "colored derangement q-polynomials equal the weak-excedance formula over S_n",
    None,
    {"max_n": 6, "rs": (1, 2, 3), "rev_max_n": 7},
    {"max_n": 4, "rs": (1, 2), "rev_max_n": 6},
)
def _run_dnr(bounds, env, ck):
    for r in bounds["rs"]:
        for n in range(bounds["max_n"] + 1):
            ctx = Context()
            lhs = _colored_gen(
                ctx, n, r, {"exc_f": "x", "cyc": "q"},
                where=lambda s: s["fix"] == 0, max_class=env.max_class,
            )
            x, q = ctx.var("x"), ctx.var("q")
            rhs = ctx.zero()
            for tup, cnt in permstats._distribution_cached("plain", n, 1, 1).items():
                exc, fix, cyc = tup[0], tup[2], tup[3]
                term = (
                    cnt * (r - 1) ** fix * r ** (n - fix)
                    * x ** (exc + fix) * q**cyc
                )
                rhs = rhs + term
            ck.eq(f"r={r} n={n}", lhs, rhs)
    for n in range(bounds["rev_max_n"] + 1):
        ctx = Context()
        wexc_poly = gen_poly(
            ctx, "plain", n, {"wexc": "x", "fix": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        exc_poly = gen_poly(
            ctx, "plain", n, {"exc": "x", "fix": "p", "cyc": "q"},
            max_class=env.max_class,
        )
        ck.eq(f"n={n} reversal", wexc_poly, exc_poly.reverse_in("x", n))


@_identity(
    "mongelli-signed",
    "the two doubled-excedance formulas for signed permutations and their derangements",
    None,
    {"max_n": 6},
    {"max_n": 4},
)
def _run_mongelli(bounds, env, ck):
    for n in range(bounds["max_n"] + 1):
        ctx = Context()
        lhs_full = _signed_gen(
            ctx, n, {"exc_A": "u", "neg": "p"}, max_class=env.max_class
        ).substitute({"u": ctx.poly("x^2")})
        an = classical_eulerian(ctx, n)
        arg = ctx.poly("x^2 + p")
        onep = ctx.poly("1 + p")
        rhs_full = ctx.zero()
        for j, c in enumerate(an.coeffs_in("x")):
            rhs_full = rhs_full + c * arg**j * onep ** (n - j)
        ck.eq(f"n={n} full group", lhs_full, rhs_full)
        lhs_der = _signed_gen(
            ctx, n, {"exc_A": "u", "neg": "p"},
            where=lambda s: s["fix"] == 0, max_class=env.max_class,
        ).substitute({"u": ctx.poly("x^2")})
        rhs_der = ctx.zero()
        p = ctx.var("p")
        for k in range(n + 1):
            dk = derangement_poly(ctx, k)
            hom = ctx.zero()
            for j, c in enumerate(dk.coeffs_in("x")):
                hom = hom + c * arg**j * onep ** (k - j)
            rhs_der = rhs_der + binomial(n, k) * p ** (n - k) * hom
        ck.eq(f"n={n} derangements", lhs_der, rhs_der)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def identity_ids() -> list[str]:
    return list(REGISTRY)


def criterion_map() -> dict[int, list[str]]:
    out: dict[int, list[str]] = {}
    for ident in REGISTRY.values():
        if ident.criterion is not None:
            out.setdefault(ident.criterion, []).append(ident.id)
    return out


def run_verify(
    ident: str,
    *,
    profile: str = "full",
    overrides: Optional[dict] = None,
    seed: int = DEFAULT_SEED,
    max_class: Optional[int] = None,
) -> IdentityResult:
    record = REGISTRY.get(ident)
    if record is None:
        raise UnknownIdentity(ident)
    env = Env(seed=seed, max_class=max_class)
    bounds = record.effective_bounds(profile, overrides)
    ck = Checker()
    start = time.monotonic()
    try:
        record.run(bounds, env, ck)
    except SizeExceeded as exc:
        return IdentityResult(
            ident, "skipped", time.monotonic() - start,
            f"size guard: {exc}", ck.details, [],
        )
    elapsed = time.monotonic() - start
    if ck.mismatches:
        return IdentityResult(
            ident, "fail", elapsed,
            f"{len(ck.mismatches)} mismatch(es)", ck.details, ck.mismatches,
        )
    return IdentityResult(ident, "pass", elapsed, "", ck.details, [])


def _run_one(args):
    ident, profile, overrides, seed, max_class = args
    result = run_verify(
        ident, profile=profile, overrides=overrides, seed=seed, max_class=max_class
    )
    return result.to_json_obj()


def run_suite(
    *,
    profile: str = "full",
    ids: Optional[list[str]] = None,
    seed: int = DEFAULT_SEED,
    max_class: Optional[int] = None,
    jobs: int = 1,
    overrides: Optional[dict] = None,
) -> list[IdentityResult]:
    """Run a deterministic-ordered batch of identities, optionally in parallel."""
    selected = ids if ids is not None else identity_ids()
    for ident in selected:
        if ident not in REGISTRY:
            raise UnknownIdentity(ident)
    if jobs > 1 and len(selected) > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs) as pool:
            raw = pool.map(
                _run_one,
                [(ident, profile, overrides, seed, max_class) for ident in selected],
            )
        results = [
            IdentityResult(
                obj["id"], obj["status"], obj["elapsed"], obj["detail"],
                obj["details"], obj["mismatches"],
            )
            for obj in raw
        ]
    else:
        results = [
            run_verify(
                ident, profile=profile, overrides=overrides,
                seed=seed, max_class=max_class,
            )
            for ident in selected
        ]
    return results
