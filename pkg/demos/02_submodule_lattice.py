"""The lattice of submodules of R^2 and its Moebius function.

Z4 and F2[u]/(u^2) have the same size and the same lattice shape: 15
submodules in 6 isomorphism types.  Over a field the Moebius values follow
(-1)^k q^(k choose 2).
"""

from collections import Counter

from rankdual import lattice, moebius_table, parse_ring

for name in ["Z4", "F2u2", "F2", "F3"]:
    ring = parse_ring(name)
    lat = lattice(ring, 2)
    types = Counter(A.iso_profile for A in lat)
    print(f"{ring.name}: {len(lat)} submodules of R^2, {len(types)} isomorphism types")
    for profile, count in sorted(types.items()):
        print(f"  profile {profile}: {count}")

    mob = moebius_table(lat)
    top = max(lat, key=lambda A: A.size)
    values = Counter(mob(B, top) for B in mob.below(top))
    print(f"  mu(B, R^2) over all B: {dict(sorted(values.items()))}")
