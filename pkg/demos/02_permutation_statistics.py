"""Enumerating permutation classes and building generating polynomials.

Run:  python demos/02_permutation_statistics.py
"""

from excedance_lab import Context, enumerate_class, gen_poly, stirling_identities

ctx = Context()

print("== plain permutations of order 3, all statistics ==")
for obj, stats in enumerate_class("plain", 3):
    shown = {k: stats[k] for k in ("exc", "drop", "fix", "cyc", "des", "lpk", "crun")}
    print(f"{obj.word_string():8s} {obj.cycle_string():12s} {shown}")
print()

print("== generating polynomials ==")
print("fix/cycle Eulerian, n=3:",
      gen_poly(ctx, "plain", 3, {"exc": "x", "fix": "p", "cyc": "q"}))
print("derangements only, n=4:",
      gen_poly(ctx, "plain", 4, {"exc": "x"}, where=lambda s: s["fix"] == 0))
print()

print("== signed permutations (hyperoctahedral group), order 2 ==")
for obj, stats in enumerate_class("signed", 2):
    shown = {k: stats[k] for k in ("exc", "aexc", "fix", "single", "neg", "fexc")}
    print(f"{obj.word_string():8s} {obj.cycle_string():12s} {shown}")
six = gen_poly(
    ctx, "signed", 2,
    {"exc": "x", "aexc": "y", "single": "s", "fix": "t", "neg": "p", "cyc": "q"},
)
print("six-variable distribution:", six)
print()

print("== colored permutations, r = 3, order 1 ==")
for obj, stats in enumerate_class("colored", 1, r=3):
    print(f"{obj.word_string():6s} exc_f={stats['exc_f']} csum={stats['csum']}")
print("flag-order excedance polynomial, n=2 r=3:",
      gen_poly(ctx, "colored", 2, {"exc_f": "x"}, r=3))
print()

print("== 2-Stirling permutations of order 3: ascent plateaux ==")
for obj, stats in enumerate_class("stirling", 3, k=2):
    print(f"{''.join(map(str, obj.word))}  ap={stats['ap']} lap={stats['lap']}")
ap, lap = stirling_identities(ctx, 3, 2)
print("sum x^ap  =", ap)
print("sum x^lap =", lap, "(the coefficient reversal of the first)")
