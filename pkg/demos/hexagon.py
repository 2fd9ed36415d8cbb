"""
Six resolutions around a hexagon
================================

The parabolics of D4 with Levi roots on {1, 2} (marked vertices 3 and 4)
give six chambers in a two dimensional character space.
"""

from paratwist import build_root_system
from paratwist.cones import build_chamber_complex, embed
from paratwist.flopwalk import walk
from paratwist.normalizer import fundamental_domain_check, known_birational, quotient_reps
from paratwist.parabolics import conjugacy_classes, enumerate_S, marked_diagram_of, opposite, parabolic_for_diagram

rs = build_root_system("D", 4)
p0 = parabolic_for_diagram(rs, {3, 4})
S = enumerate_S(rs, p0.levi_I, p0)
cx = build_chamber_complex(S)

# each chamber is a simplicial cone; its rays are printed in (omega_3, omega_4) coordinates
for i, (p, cone) in enumerate(cx.chambers):
    diagram = marked_diagram_of(p)[0]
    print(f"{i}: {diagram}  rays {cone.rays}  opposite {cx.index[opposite(p)]}")

# the walls: every one is a twist of the first kind
for w in cx.undirected_walls():
    print(f"wall {w.source} -- {w.target} at vertex {w.vertex}: {w.kind.value} {w.flop}")

# three conjugacy classes, and a quotient of order two acting as -1
reps = quotient_reps(rs, p0.levi_I, S)
print("classes", len(conjugacy_classes(S)), "quotient order", len(reps))
print("nontrivial action", [[int(x) for x in row] for row in reps[1].action_on_M])

# walking to a character in the opposite chamber takes three steps
trace = walk(p0, embed([-2, -1], p0.marked, 4))
print("walk:", " -> ".join(str(cx.index[p]) for p in trace.chambers()))

# the Springer map here has degree two, and the first-kind chambers are
# not a fundamental domain: the -1 element maps them onto themselves
report = fundamental_domain_check(rs, p0.levi_I, p0, known_birational("D", 4, {3, 4}))
print("covers", report.covers, "disjoint", report.disjoint)
