"""Exact polynomials and grammar derivatives, step by step.

Run:  python demos/01_polynomials_and_grammars.py
"""

from fractions import Fraction

from excedance_lab import Context, Grammar

ctx = Context()
x, y, q = ctx.var("x"), ctx.var("y"), ctx.var("q")

print("== exact sparse arithmetic ==")
f = (1 + x) ** 3 + 8 * x * (1 + x)
print(f"(1+x)^3 + 8x(1+x)    = {f}")
print(f"coefficients in x     = {[str(c) for c in f.coeffs_in('x')]}")
print(f"d/dx                  = {f.differentiate('x')}")
print(f"at x = 1/2            = {f.eval_rational({'x': Fraction(1, 2)})}")
print()

print("== the derivative recurrence for the cycle q-Eulerian polynomials ==")
# A_{n+1}(x,q) = (n x + q) A_n(x,q) + x(1-x) dA_n/dx
a = ctx.const(1)
for n in range(5):
    print(f"A_{n}(x,q) = {a}")
    a = (n * x + q) * a + x * (1 - x) * a.differentiate("x")
print()

print("== grammar formal derivatives ==")
g = Grammar(ctx, {"x": "x*y", "y": "x*y"})
print(f"G = {g}")
for n in range(4):
    print(f"D_G^{n}(x) = {g.iterate(x, n)}")
print()

print("== a grammar whose iterates encode excedance/drop/fixed-point/cycle counts ==")
g_stats = Grammar(ctx, {"I": "I*p*q", "p": "x*y", "x": "x*y", "y": "x*y"})
for n in range(5):
    print(f"D^{n}(I) = {g_stats.iterate(ctx.var('I'), n)}")
print()

print("== change of grammar: substituting the bindings recovers the original ==")
g0 = Grammar(ctx, {"I": "I*y", "x": "k*x*y", "y": "k*x*y"})
g1 = Grammar(ctx, {"I": "J", "J": "J*u + (k-1)*I*v", "u": "2*k*v", "v": "k*u*v"})
n = 4
lhs = g1.iterate(ctx.var("I"), n).substitute(
    {"J": ctx.poly("I*y"), "u": ctx.poly("x+y"), "v": ctx.poly("x*y")}
)
rhs = g0.iterate(ctx.var("I"), n)
print(f"transformed iterate, re-substituted (n={n}): {lhs}")
print(f"original iterate:                           {rhs}")
print(f"equal: {lhs == rhs}")
