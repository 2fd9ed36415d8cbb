"""
Small and divisorial walls in B4
================================

With a single marked vertex the character space is a line and there are
two chambers. Whether the wall between them is a flop depends on k.
"""

from paratwist import build_root_system
from paratwist.cones import build_chamber_complex, embed, movable_union
from paratwist.flopwalk import central_fiber_summary, walk
from paratwist.parabolics import enumerate_S, parabolic_for_diagram

rs = build_root_system("B", 4)

for k in range(1, 5):
    p0 = parabolic_for_diagram(rs, {k})
    cx = build_chamber_complex(enumerate_S(rs, p0.levi_I, p0))
    (wall,) = cx.undirected_walls()
    movable = movable_union(cx, "Sstar", p0).members
    print(f"B4 k={k}: {len(cx.chambers)} chambers, wall {wall.kind.value} {wall.flop}, movable chambers {movable}")

# crossing the k=4 wall is the small flop, also known under its D5 name
p0 = parabolic_for_diagram(rs, {4})
trace = walk(p0, embed([-1], p0.marked, 4))
print([str(s.flop) for s in trace.steps], central_fiber_summary(trace).all_flops)

# crossing the k=2 wall is divisorial, so it leaves the movable cone
p0 = parabolic_for_diagram(rs, {2})
trace = walk(p0, embed([-1], p0.marked, 4))
print([s.kind.value for s in trace.steps], central_fiber_summary(trace).all_flops)
