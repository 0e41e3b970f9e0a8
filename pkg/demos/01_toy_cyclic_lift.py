"""
Lifting the (3, 2, 2) code by cyclic shifts
===========================================

The base code stores a two-symbol file (x, y) on three nodes as
(x, y, x + y). Lifting it once gives a (4, 3, 3) code: four copies of the
base, each with one empty slot, stacked so that copy i leaves node i empty.
"""

from exactrepair import MdsMsrCode, cyclic_lift, repair, store, verify_all

base = MdsMsrCode(3, 2)
print(base.params)

# four base files (x_i, y_i), laid out as (x1, x2, x3, x4, y1, y2, y3, y4)
xs = [0x01, 0x02, 0x03, 0x04]
ys = [0x10, 0x20, 0x30, 0x40]
code = cyclic_lift(base)
inst = store(code, xs + ys)

for j in range(1, 5):
    print(f"w{j}:", [hex(v) for v in inst.node(j)])

# w1 holds x2, x3, x4: its slot in the first copy is empty
assert inst.node(1) == tuple(xs[1:])

# repair w1 from the other three nodes
trace = repair(inst, 1, [2, 3, 4])
print("sent per helper:", trace.sent, "total:", trace.total, "gamma:", code.params.gamma)

report = verify_all(inst)
print("all 4 reconstructions and 4 repairs pass:", report.all_pass)
