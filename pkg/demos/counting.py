"""
Counting resolutions through the normalizer
===========================================

|S| factors as (number of conjugacy classes) x (order of the normalizer
quotient). The table below covers every marking of rank at most three.
"""

from paratwist import build_root_system
from paratwist.normalizer import verify_count
from paratwist.verify import instances

print(f"{'type':6} {'marked':10} {'|S|':>5} {'N':>3} {'q':>4}")
for family, rank, marked in instances(3):
    levi = set(range(1, rank + 1)) - set(marked)
    size, n, q, ok = verify_count(build_root_system(family, rank), levi)
    assert ok
    print(f"{family}{rank:<5} {str(sorted(marked)):10} {size:5} {n:3} {q:4}")

# for the Borel subalgebra every class is the same and q is the order of W
for family, rank in [("A", 3), ("B", 3), ("C", 3)]:
    print(family, rank, verify_count(build_root_system(family, rank), set()))
