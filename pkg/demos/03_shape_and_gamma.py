"""Symmetric decompositions, gamma vectors and unimodality-type verdicts.

Run:  python demos/03_shape_and_gamma.py
"""

from fractions import Fraction

from excedance_lab import CoeffSeq, Context, decompose, gamma_expand, shape_report
from excedance_lab.families import (
    family,
    fix_cyc_eulerian,
    one_over_k_eulerian,
    type_b_q_eulerian,
)
from excedance_lab.shape import partial_gamma_expand

ctx = Context()

print("== symmetric decomposition f = a + x b ==")
f = one_over_k_eulerian(ctx, 3, 2)
print(f"A_3 with doubling weight: {f}")
seq = CoeffSeq.from_poly(f, "x", m=2)
a, b = decompose(seq)
print(f"a = {list(a.coeffs)}   (symmetric about 1)")
print(f"b = {list(b.coeffs)}   (symmetric about 1/2)")
print()

print("== gamma vectors of symmetric polynomials ==")
for coeffs in ([1, 6, 1], [1, 11, 11, 1]):
    print(f"{coeffs} -> gamma = {gamma_expand(CoeffSeq.make(coeffs))}")
print()

print("== a full shape report at a rational point ==")
inst = fix_cyc_eulerian(ctx, 6).eval_rational({"p": Fraction(1, 2), "q": Fraction(1, 3)})
report = shape_report(CoeffSeq.from_poly(inst, "x", m=5))
print("coefficients:", [str(c) for c in report.seq.coeffs])
for prop, verdict in report.verdicts.items():
    print(f"  {prop:26s} {verdict}")
print()

print("== spiral versus alternatingly increasing for the type-B q-family ==")
fam = type_b_q_eulerian(ctx, 4)
for qv in (Fraction(1, 2), Fraction(2)):
    seq = CoeffSeq.from_poly(fam.eval_rational({"q": qv}), "x", m=4)
    rep = shape_report(seq)
    print(
        f"q={qv}: coeffs={[str(c) for c in seq.coeffs]}  "
        f"spiral={rep.verdicts['spiral']}  "
        f"alternatingly_increasing={rep.verdicts['alternatingly_increasing']}"
    )
print()

print("== partial gamma expansion of a bivariate polynomial ==")
p = fix_cyc_eulerian(ctx, 4).substitute({"q": 1})
pg = partial_gamma_expand(p, "x", "p", 4)
print(f"p(x,y) = {p}")
for (i, j), mu in sorted(pg.mu.items()):
    print(f"  mu[{i},{j}] = {mu}")
print("reassembles:", pg.assemble(ctx, "x", "p") == p)
print()

print("== the colored family and its decomposition vectors ==")
print("A_{2,r}(x)   =", family(ctx, "A_r", 2))
print("alpha_plus   =", family(ctx, "alpha_plus", 2))
print("alpha_minus  =", family(ctx, "alpha_minus", 2))
