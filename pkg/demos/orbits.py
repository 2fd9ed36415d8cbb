"""
Jordan types of Richardson orbits
=================================

For a classical parabolic, the Richardson orbit is read off the flag type:
transpose the block sizes, then collapse to a valid B, C or D partition.
Its dimension equals twice the number of nilradical roots.
"""

from paratwist import build_root_system
from paratwist.orbits import codim2_neighbors, flag_type_of, orbit_dimension, richardson_jordan_type
from paratwist.parabolics import parabolic_for_diagram

for family, rank, marked in [("B", 4, {4}), ("B", 4, {2}), ("C", 4, {1}), ("C", 3, {3}), ("D", 4, {3, 4}), ("A", 5, {2, 4})]:
    p = parabolic_for_diagram(build_root_system(family, rank), marked)
    flag = flag_type_of(p)
    lam = richardson_jordan_type(family, flag)
    print(f"{family}{rank} {sorted(marked)}: flag {flag.composition}, orbit [{lam}], "
          f"dim {orbit_dimension(family, lam)} = 2 x {len(p.nilradical)}")

# the codimension-2 orbit below a B7 Richardson orbit at k = 6
lam = (3, 3, 3, 3, 3, 1, 1)
print(lam, "->", codim2_neighbors("B", lam))
