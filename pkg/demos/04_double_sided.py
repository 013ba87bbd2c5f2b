"""Build and verify a double-sided code end to end.

Run: python demos/04_double_sided.py [TEXT_A TEXT_B]
"""

import sys

from qrmirror import mirror, render, verify

msg_a, msg_b = (sys.argv[1:3] if len(sys.argv) >= 3 else ("HARRY", "BOVIK"))

grid, report = mirror.construct_double_sided(msg_a, msg_b)
print("construction report:", report.to_json())
print()
print(render.to_ascii(grid))

straight, mirrored = verify.verify_double_sided(grid, msg_a, msg_b)
for rep in (straight, mirrored):
    print(f"{rep.orientation:>10}: {rep.text!r:12} "
          f"corrected bytes {sorted(rep.corrected_bytes)}, "
          f"format distance {rep.format_distance}")

print()
print("mirrored view (what a scanner sees on the flipped print):")
print(render.to_ascii(grid.transposed()))
