"""The modified cycle action, and running the identity registry.

Run:  python demos/04_cycle_action_and_verification.py
"""

from excedance_lab import act, classify, parse_cycles, run_suite, run_verify
from excedance_lab.fsaction import cdd_values, verify_bijection

print("== role classification inside cycles ==")
pi = parse_cycles("(1,10,6,5,7,3,2,8)(4,9)")
for cc in classify(pi):
    print("(" + " ".join(f"{v}:{r}" for v, r in zip(cc.cycle, cc.roles)) + ")")
print("cycle double descents:", cdd_values(pi))
print()

print("== acting at a double descent moves it to a double ascent ==")
for x in cdd_values(pi):
    image = act(pi, x)
    print(f"act at {x}: {image.cycle_string()}  (acting again returns the original: "
          f"{act(image, x) == pi})")
print()

print("== counting consequence on one class ==")
count1, count2, ok = verify_bijection(5, 1, 1, 2)
print(f"n=5, one fixed point, one excedance, two cycles: "
      f"{count1} sources, {count2} images, ratio check: {ok}")
print()

print("== running registered identities ==")
for ident in ("lemma7-grammar-exc", "thm9-signed-transform", "shape-bnq-spiral"):
    res = run_verify(ident, profile="quick")
    print(f"{ident}: {res.status} in {res.elapsed:.2f}s")
print()

print("== the quick suite ==")
results = run_suite(profile="quick")
worst = max(results, key=lambda r: r.elapsed)
print(f"{len(results)} identities, all "
      f"{'pass' if all(r.status == 'pass' for r in results) else 'NOT pass'}; "
      f"slowest: {worst.id} at {worst.elapsed:.2f}s")
