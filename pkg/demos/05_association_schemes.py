"""When does grouping matrices by rank give an association scheme?

Over a field it does.  Over a chain ring that is not a field the number of ways to
write a rank-1 matrix as a sum of two rank-1 matrices depends on more than
the rank, and the checker returns an explicit pair of witnesses.
"""

from rankdual import parse_ring
from rankdual.schemes import theorem_5_2_suite

rings = [parse_ring(n) for n in ["F2", "F3", "F4", "Z4", "F2u2", "Z8"]]
for row in theorem_5_2_suite(rings):
    print(f"{row['ring']:5s} scheme: {row['is_scheme']}  agrees with reflexivity: "
          f"{row['reflexivity_crosscheck']}")
    w = row["witness"]
    if w:
        print(f"      w = {w['w_matrix']} and z = {w['z_matrix']} share rank {w['W_label']},")
        print(f"      but {w['count_w']} vs {w['count_z']} ways as a sum of ranks "
              f"{w['U_label']} + {w['V_label']}")
