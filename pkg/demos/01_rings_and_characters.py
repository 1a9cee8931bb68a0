"""Finite chain rings, their generating characters and exact cyclotomic sums.

Every ring here is local with maximal ideal generated by pi.  A generating
character is a map R -> roots of unity whose kernel holds no nonzero ideal;
summing it over an ideal gives |ideal| or 0, and CycInt keeps that exact.
"""

from rankdual import CycInt, parse_ring

for name in ["Z4", "Z8", "F4", "F2u2", "Z9"]:
    ring = parse_ring(name)
    print(f"{ring.name}: |R| = {ring.size}, q = {ring.q}, s = {ring.s}, pi = {ring.format(ring.pi())}")
    print("  valuations:", [ring.valuation(a) for a in ring.enumerate()])
    # the character summed over pi^e R is |pi^e R| only for the zero ideal
    for e in range(ring.s + 1):
        ideal = sorted({ring.times_pi_power(a, e) for a in ring.enumerate()})
        total = sum((ring.chi(a) for a in ideal), CycInt.from_int(ring.char_order, 0))
        print(f"  sum of chi over pi^{e}R (size {len(ideal)}): {total.as_integer()}")

z4 = parse_ring("Z4")
print("\nchi on Z4, primary and alternate:")
for a in z4.enumerate():
    print(f"  chi({a}) = {z4.chi(a)}   alt: {z4.chi(a, alt=True)}")
