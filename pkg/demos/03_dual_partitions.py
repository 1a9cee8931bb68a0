"""Dual partitions of Mat_{2,2}(Z4) under the trace pairing.

Grouping matrices by the submodule their columns span is self-dual: the
left dual of the right-hand support partition gives it back.  Grouping by
rank alone is not, because its dual is the strictly finer isomorphism
partition.
"""

from rankdual import (Pairing, TupleSpace, is_reflexive, left_dual_partition, parse_ring,
                      partition_by_iso, partition_by_rank, partition_by_support)
from rankdual.duality import rank_test_keys, rank_test_scan

space = TupleSpace(parse_ring("Z4"), 2, 2)
f = Pairing(space)

for label, make in [("support", partition_by_support), ("isomorphism", partition_by_iso),
                    ("rank", partition_by_rank)]:
    lam, psi = make(space), make(space, "right")
    dual = left_dual_partition(f, psi)
    verdict = is_reflexive(f, psi)
    print(f"{label:12s} |Lambda| = {len(lam):2d}  |l(Psi)| = {len(dual):2d}  "
          f"l(Psi) == Lambda: {dual == lam}  reflexive: {verdict.reflexive}")

print("\nthe rank-1 character sums already decide isomorphism of supports:")
scan = rank_test_scan(f, rank_test_keys(f))
print(f"  {scan['pairs']} pairs compared, {scan['mismatch_1_3']} disagreements")
