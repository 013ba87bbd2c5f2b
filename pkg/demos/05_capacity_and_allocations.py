"""How far the analytic method stretches: allocations and message length.

Run: python demos/05_capacity_and_allocations.py
"""

from qrmirror import mirror

# The error allocation decides which codeword bytes each side's decoder
# will have to repair. The enumerator tries small allocations first.
print("pair            result   allocation                corrections")
cases = [
    ("12345", "67890"),        # numeric: mode indicator survives the mirror
    ("HELLO", "HELLO"),        # alphanumeric: 2-bit mode conflict
    ("HELLO", "WORLD"),
    ("ABCDEFGH", "IJKLMNOPQRS"),    # the 8+11 target
    ("ABCDEFGHI", "JKLMNOPQRSTU"),  # beyond it
    ("ABCDEFGHIJ", "KLMNOPQRSTUV"),  # too far: every allocation fails
]
for a, b in cases:
    label = f"{len(a)}+{len(b)} {a[:9]:>9}/{b[:12]:<12}"
    try:
        _, rep = mirror.construct_double_sided(a, b, method="analytic")
        alloc = rep.allocation
        print(f"{label} OK       A={alloc['side_a']!s:9} B={alloc['side_b']!s:9}"
              f"  {rep.side_a_corrections}+{rep.side_b_corrections}"
              f"  (free bits left: {rep.free_vars})")
    except mirror.ConstructionError as exc:
        print(f"{label} infeasible ({exc})")
