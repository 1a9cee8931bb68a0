"""MacWilliams identities for a submodule code in Mat_{2,2}(Z4).

The distribution of a code over one partition determines the distribution
of its dual over the dual partition, through the Krawtchouk matrix.
"""

from importlib import resources

from rankdual import (Pairing, krawtchouk, macwilliams_verify, partition_by_iso,
                      partition_by_support)
from rankdual.macwilliams import dual_code, load_code

path = resources.files("rankdual") / "data" / "example_code_z4.json"
C = load_code(str(path))
D = dual_code(C)
space = C.space
print(f"code of size {len(C)} in {space}, dual of size {len(D)}")
for g in C.generators:
    print("  generator", space.matrix(g))

f = Pairing(space)
for label, make in [("support", partition_by_support), ("isomorphism", partition_by_iso)]:
    lam, psi = make(space), make(space, "right")
    rep = macwilliams_verify(C, krawtchouk(f, lam, psi, "left"))
    print(f"\n{label} partition")
    print("  distribution of C:      ", rep["distribution"])
    print("  predicted for the dual: ", rep["predicted"])
    print("  actual for the dual:    ", rep["actual"])
    print("  identity holds:", rep["verdict"])
