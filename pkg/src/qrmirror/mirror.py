"""Double-sided construction.

The physical values of the 208 data-region cells are the variables of a
GF(2) linear system. Each side contributes rows that pin its declared
payload bits and rows expressing its Reed-Solomon parity; a byte listed in
the error allocation contributes no rows for its side, and the damage this
leaves on the grid is later absorbed by the decoder's 3-byte correction
budget. Allocated data bytes get eight auxiliary variables holding the
intended (post-correction) byte so the parity rows can still refer to it.

A randomized fallback mirrors the construction the analytic method
replaces: randomize the free fill, compute the straight side's parity
honestly, and measure how many bytes the mirrored side would need
corrected.
"""

import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import codec, encoder, rscode
from .formatinfo import select_mirror_format
from .grid import (
    DATA_BITS,
    TOTAL_BITS,
    data_placement_order,
    overlap_partition,
    transpose_permutation,
)
from .masks import mask_bit, symmetric_masks
from .verify import decode_grid


class ConstructionError(RuntimeError):
    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class ErrorAllocation:
    """Bytes whose errors each side's decoder is expected to correct."""

    side_a_bytes: frozenset
    side_b_bytes: frozenset

    def __post_init__(self):
        for name, bytes_ in (("side_a", self.side_a_bytes), ("side_b", self.side_b_bytes)):
            if len(bytes_) > 3:
                raise ValueError(f"{name} allocation exceeds the 3-byte budget")
            if any(not 0 <= b < 26 for b in bytes_):
                raise ValueError(f"{name} allocation has byte indices outside 0..25")

    @property
    def total(self):
        return len(self.side_a_bytes) + len(self.side_b_bytes)


EMPTY_ALLOCATION = ErrorAllocation(frozenset(), frozenset())


@dataclass
class LinearSystem:
    """GF(2) rows over the shared cell variables (plus any auxiliaries)."""

    matrix: np.ndarray
    rhs: np.ndarray
    provenance: tuple
    var_names: tuple
    n_cell_vars: int = TOTAL_BITS

    def conflicting_pins(self):
        """Variables pinned to contradictory constants, with their rows.

        Returns {var index: sorted row indices} for every variable that two
        single-coefficient rows force to different values.
        """
        seen = {}
        conflicts = {}
        weights = self.matrix.sum(axis=1)
        for row in np.nonzero(weights == 1)[0]:
            var = int(np.nonzero(self.matrix[row])[0][0])
            value = int(self.rhs[row])
            prev = seen.setdefault(var, (value, row))
            if prev[0] != value:
                conflicts.setdefault(var, {int(prev[1])}).add(int(row))
        return {v: sorted(rows) for v, rows in conflicts.items()}


@dataclass(frozen=True)
class Solution:
    """One satisfying assignment plus a description of the solution space:
    every solution is the assignment with some subset of the free columns'
    basis directions XORed in."""

    assignment: np.ndarray
    free_columns: tuple
    rank: int

    @property
    def free_variable_count(self):
        return len(self.free_columns)

    def satisfies(self, system):
        lhs = (system.matrix.astype(np.int32) @ self.assignment.astype(np.int32)) % 2
        return bool(np.array_equal(lhs.astype(np.uint8), system.rhs))


def gf2_row_reduce(matrix, rhs):
    """In-place-style full RREF over GF(2); returns (A, b, pivot_cols)."""
    a = matrix.astype(np.uint8).copy()
    b = rhs.astype(np.uint8).copy()
    rows, cols = a.shape
    pivot_cols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
            b[[r, p]] = b[[p, r]]
        sel = a[:, c].astype(bool)
        sel[r] = False
        if sel.any():
            a[sel] ^= a[r]
            b[sel] ^= b[r]
        pivot_cols.append(c)
        r += 1
    return a, b, pivot_cols


def solve_gf2(system, free_values=None, rng=None):
    """Solve the system, or return None when a row reduces to 0 = 1.

    Free variables default to zero; free_values supplies preferred values
    (indexed like the system's variables) and rng randomizes them instead.
    """
    a, b, pivot_cols = gf2_row_reduce(system.matrix, system.rhs)
    r = len(pivot_cols)
    if b[r:].any():
        return None
    cols = a.shape[1]
    pivot_set = set(pivot_cols)
    free_cols = tuple(c for c in range(cols) if c not in pivot_set)
    x = np.zeros(cols, dtype=np.uint8)
    free_idx = np.array(free_cols, dtype=np.intp)
    if free_idx.size:
        if rng is not None:
            x[free_idx] = rng.integers(0, 2, free_idx.size, dtype=np.uint8)
        elif free_values is not None:
            x[free_idx] = np.asarray(free_values, dtype=np.uint8)[free_idx]
    if r:
        vals = (b[:r].astype(np.int32) + a[:r].astype(np.int32) @ x.astype(np.int32)) % 2
        x[np.array(pivot_cols, dtype=np.intp)] = vals.astype(np.uint8)
    return Solution(x, free_cols, r)


def _mask_offsets(mask_id):
    return np.array(
        [mask_bit(mask_id, cell) for cell in data_placement_order()], dtype=np.uint8
    )


def _payload_bits(payload):
    return np.frombuffer(payload.bits.encode(), dtype=np.uint8) - ord("0")


def build_constraint_system(payload_a, payload_b, fmt, alloc, mirrored_fmt=None):
    """Rows for both sides of the code under one error allocation.

    fmt is the straight side's format word; the mirrored side defaults to
    the same word (a flip-graph self-loop) but may differ as long as both
    masks are transposition-symmetric. Variables are physical cell values,
    so mask inversions land on the right-hand side.
    """
    mirrored_fmt = mirrored_fmt or fmt
    sym = symmetric_masks()
    for word in (fmt, mirrored_fmt):
        if word.mask_id not in sym:
            raise ValueError(f"mask {word.mask_id} is not symmetric under transposition")
    for payload in (payload_a, payload_b):
        if len(payload.bits) > DATA_BITS:
            raise ValueError("payload exceeds the 152-bit data capacity")

    sigma = np.array(transpose_permutation(), dtype=np.intp)
    straight = np.arange(TOTAL_BITS, dtype=np.intp)
    parity = rscode.parity_matrix()

    sides = (
        ("A", _payload_bits(payload_a), straight, _mask_offsets(fmt.mask_id),
         sorted(alloc.side_a_bytes)),
        ("B", _payload_bits(payload_b), sigma, _mask_offsets(mirrored_fmt.mask_id),
         sorted(alloc.side_b_bytes)),
    )

    # auxiliary variables: 8 per allocated data byte, holding the intended
    # codeword byte that the decoder will restore
    n_vars = TOTAL_BITS
    aux_base = {}
    for name, _, _, _, alloc_bytes in sides:
        for byte in alloc_bytes:
            if byte < rscode.DATA_BYTES:
                aux_base[(name, byte)] = n_vars
                n_vars += 8

    var_names = [f"cell{i}" for i in range(TOTAL_BITS)]
    for (name, byte), base in sorted(aux_base.items(), key=lambda kv: kv[1]):
        var_names.extend(f"{name}.byte{byte:02d}.bit{j}" for j in range(8))

    rows = []
    rhs = []
    provenance = []
    for name, declared, bitvar, mu, alloc_bytes in sides:
        allocated = set(alloc_bytes)
        # where each intended data bit lives: a grid cell or an aux bit
        data_var = bitvar[:DATA_BITS].copy()
        data_mu = mu[:DATA_BITS].copy()
        for byte in alloc_bytes:
            if byte < rscode.DATA_BYTES:
                base = aux_base[(name, byte)]
                data_var[byte * 8 : byte * 8 + 8] = np.arange(base, base + 8)
                data_mu[byte * 8 : byte * 8 + 8] = 0

        for i, bit in enumerate(declared):
            row = np.zeros(n_vars, dtype=np.uint8)
            row[data_var[i]] = 1
            rows.append(row)
            rhs.append(int(bit) ^ int(data_mu[i]))
            provenance.append((name, "message", i))

        for pbyte in range(rscode.PARITY_BYTES):
            if rscode.DATA_BYTES + pbyte in allocated:
                continue
            for j in range(8):
                r = pbyte * 8 + j
                row = np.zeros(n_vars, dtype=np.uint8)
                nz = np.nonzero(parity[r])[0]
                row[data_var[nz]] = 1
                pv = bitvar[DATA_BITS + r]
                row[pv] ^= 1
                rows.append(row)
                rhs.append(int(data_mu[nz].sum() + mu[DATA_BITS + r]) % 2)
                provenance.append((name, "parity", rscode.DATA_BYTES + pbyte))

    return LinearSystem(
        np.array(rows, dtype=np.uint8),
        np.array(rhs, dtype=np.uint8),
        tuple(provenance),
        tuple(var_names),
    )


def enumerate_error_allocations(partition, max_per_side=3):
    """Allocations over conflict-zone bytes, smallest total first.

    Only bytes whose cells sit in zones a, c, e or i can ever need
    sacrificing, so the stream is restricted to those, deduplicated and
    exhausted up to max_per_side bytes on each side.
    """
    cand_a = partition.conflict_bytes_a()
    cand_b = partition.conflict_bytes_b()
    subs_a = [list(itertools.combinations(cand_a, k))
              for k in range(min(max_per_side, len(cand_a)) + 1)]
    subs_b = [list(itertools.combinations(cand_b, k))
              for k in range(min(max_per_side, len(cand_b)) + 1)]
    for total in range(len(subs_a) + len(subs_b) - 1):
        for ka in range(min(total, len(subs_a) - 1) + 1):
            kb = total - ka
            if kb >= len(subs_b):
                continue
            for sa in subs_a[ka]:
                for sb in subs_b[kb]:
                    yield ErrorAllocation(frozenset(sa), frozenset(sb))


def _with_terminator(payload):
    """Extend the declared bits with the 0000 terminator (room permitting).

    Strict readers parse segment after segment, so the nibble right after
    the message must not look like another mode indicator; pinning the
    terminator keeps them from wandering into the free fill.
    """
    extra = "0" * min(4, DATA_BITS - len(payload.bits))
    return codec.Payload(payload.bits + extra, payload.declared_length, False)


def _pin_conflict_cells(payload_a, payload_b):
    """Cells both sides pin to different values: (cell index, a byte, b byte)."""
    sigma = transpose_permutation()
    a = payload_a.bits
    b = payload_b.bits
    out = []
    for j in range(len(b)):
        k = sigma[j]
        if k < len(a) and a[k] != b[j]:
            out.append((k, k // 8, j // 8))
    return out


def _allocation_resolves_pins(conflicts, alloc):
    return all(
        ba in alloc.side_a_bytes or bb in alloc.side_b_bytes
        for _, ba, bb in conflicts
    )


@dataclass(frozen=True)
class ConstructionReport:
    method: str
    format_witness: str
    mask_id: int
    allocation: dict
    free_vars: int
    side_a_corrections: int
    side_b_corrections: int
    trials: int

    def to_json(self):
        return json.dumps(
            {
                "method": self.method,
                "format_witness": self.format_witness,
                "mask_id": self.mask_id,
                "allocation": self.allocation,
                "free_vars": self.free_vars,
                "side_a_corrections": self.side_a_corrections,
                "side_b_corrections": self.side_b_corrections,
                "trials": self.trials,
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class BruteForceResult:
    grid: object
    trials_run: int
    found_at: int
    best_damage: tuple


def brute_force_search(payload_a, payload_b, fmt, trials, seed, batch=1024):
    """Randomized fallback: try free fills until the mirrored side's damage
    fits the correction budget.

    fmt is a MirrorFormat; its witness goes onto any found grid. Each trial
    pins both sides' declared bits (the straight side wins any contested
    cell), randomizes every remaining fill cell, computes the straight
    side's parity honestly, and counts the bytes in which the mirrored
    reading differs from the codeword it is supposed to correct to.
    Reproducible for a given seed and budget.
    """
    sigma = np.array(transpose_permutation(), dtype=np.intp)
    mu_a = _mask_offsets(fmt.straight.mask_id)
    mu_b = _mask_offsets(fmt.mirrored.mask_id)
    delta = mu_a[sigma] ^ mu_b
    a_bits = _payload_bits(payload_a)
    b_bits = _payload_bits(payload_b)
    la, lb = len(a_bits), len(b_bits)
    parity = rscode.parity_matrix().astype(np.int32)

    base = np.zeros(DATA_BITS, dtype=np.uint8)
    pinned = np.zeros(DATA_BITS, dtype=bool)
    base[:la] = a_bits
    pinned[:la] = True
    for j in range(lb):
        k = int(sigma[j])
        if k < DATA_BITS and not pinned[k]:
            base[k] = b_bits[j]
            pinned[k] = True
    free_idx = np.nonzero(~pinned)[0]

    rng = np.random.default_rng(seed)
    best = (TOTAL_BITS, TOTAL_BITS)
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        fills = rng.integers(0, 2, size=(n, free_idx.size), dtype=np.uint8)
        data = np.broadcast_to(base, (n, DATA_BITS)).copy()
        data[:, free_idx] = fills
        par = (data.astype(np.int32) @ parity.T % 2).astype(np.uint8)
        full = np.hstack([data, par])  # straight-side logical stream

        mirrored = full[:, sigma] ^ delta
        intended = mirrored[:, :DATA_BITS].copy()
        intended[:, :lb] = b_bits
        ipar = (intended.astype(np.int32) @ parity.T % 2).astype(np.uint8)
        diff = np.hstack([mirrored[:, :DATA_BITS] != intended,
                          mirrored[:, DATA_BITS:] != ipar])
        damage = diff.reshape(n, rscode.BLOCK_BYTES, 8).any(axis=2).sum(axis=1)

        hit = np.nonzero(damage <= 3)[0]
        if hit.size:
            i = int(hit[0])
            physical = full[i] ^ mu_a
            grid = encoder.materialize(physical, fmt.witness)
            return BruteForceResult(grid, done + i + 1, done + i + 1,
                                    (0, int(damage[i])))
        batch_best = int(damage.min())
        best = min(best, (0, batch_best))
        done += n
    return BruteForceResult(None, done, -1, best)


def _free_value_preference(msg_a, mode_a, msg_b, mode_b, straight_fmt, n_vars,
                           aux_layout):
    """Free cells default to the straight side's ordinary encoding; aux
    bytes default to their side's ordinary codeword."""
    prefs = np.zeros(n_vars, dtype=np.uint8)
    prefs[:TOTAL_BITS] = encoder.standard_physical_bits(msg_a, mode_a,
                                                        straight_fmt.mask_id)
    words = {}
    for (name, byte), basevar in aux_layout.items():
        if name not in words:
            msg, mode = (msg_a, mode_a) if name == "A" else (msg_b, mode_b)
            payload = codec.assemble_payload(codec.make_segment(msg, mode), pad=True)
            data = codec.bits_to_bytes(payload.bits)
            words[name] = data + rscode.rs_encode(data)
        value = words[name][byte]
        for j in range(8):
            prefs[basevar + j] = (value >> (7 - j)) & 1
    return prefs


def _aux_layout(system):
    layout = {}
    for idx in range(TOTAL_BITS, len(system.var_names), 8):
        name = system.var_names[idx]
        side, byte, _ = name.split(".")
        layout[(side, int(byte[4:]))] = idx
    return layout


def construct_double_sided(msg_a, msg_b, method="auto", mode_a="auto", mode_b="auto",
                           trials=200_000, seed=0, max_per_side=3):
    """Build a grid reading msg_a straight and msg_b mirrored.

    The analytic path walks error allocations in increasing size, building
    and solving the constraint system for each; the first solvable one is
    materialized and self-verified. method "auto" falls back to the
    randomized search when every allocation is infeasible.
    """
    if method not in ("auto", "analytic", "brute"):
        raise ValueError(f"unknown method {method!r}")
    payload_a = _with_terminator(
        codec.assemble_payload(codec.make_segment(msg_a, mode_a), pad=False)
    )
    payload_b = _with_terminator(
        codec.assemble_payload(codec.make_segment(msg_b, mode_b), pad=False)
    )
    fmt = select_mirror_format()
    straight, mirrored = fmt.straight, fmt.mirrored

    if method in ("auto", "analytic"):
        partition = overlap_partition(len(payload_a.bits), len(payload_b.bits))
        conflicts = _pin_conflict_cells(payload_a, payload_b)
        attempted = 0
        for alloc in enumerate_error_allocations(partition, max_per_side):
            if not _allocation_resolves_pins(conflicts, alloc):
                continue
            system = build_constraint_system(payload_a, payload_b, straight, alloc,
                                             mirrored_fmt=mirrored)
            attempted += 1
            prefs = _free_value_preference(msg_a, mode_a, msg_b, mode_b, straight,
                                           system.matrix.shape[1],
                                           _aux_layout(system))
            solution = solve_gf2(system, free_values=prefs)
            if solution is None:
                continue
            grid = encoder.materialize(solution.assignment[:TOTAL_BITS], fmt.witness)
            rep_a = decode_grid(grid, "straight")
            rep_b = decode_grid(grid, "transposed")
            if rep_a.text != msg_a or rep_b.text != msg_b:
                raise ConstructionError(
                    "decode mismatch",
                    f"solved grid reads {rep_a.text!r}/{rep_b.text!r}",
                )
            report = ConstructionReport(
                "analytic",
                fmt.witness_bits,
                straight.mask_id,
                {"side_a": sorted(alloc.side_a_bytes),
                 "side_b": sorted(alloc.side_b_bytes)},
                solution.free_variable_count,
                len(rep_a.corrected_bytes),
                len(rep_b.corrected_bytes),
                0,
            )
            return grid, report
        if method == "analytic":
            raise ConstructionError(
                "system infeasible",
                f"no solvable system among {attempted} viable allocations",
            )

    result = brute_force_search(payload_a, payload_b, fmt, trials, seed)
    if result.grid is None:
        raise ConstructionError(
            "RS budget",
            f"brute force exhausted {result.trials_run} trials; best damage "
            f"{result.best_damage[0]}+{result.best_damage[1]} bytes",
        )
    rep_a = decode_grid(result.grid, "straight")
    rep_b = decode_grid(result.grid, "transposed")
    if rep_a.text != msg_a or rep_b.text != msg_b:
        raise ConstructionError(
            "decode mismatch",
            f"brute-force grid reads {rep_a.text!r}/{rep_b.text!r}",
        )
    damaged_a = sorted(rep_a.corrected_bytes)
    damaged_b = sorted(rep_b.corrected_bytes)
    report = ConstructionReport(
        "brute",
        fmt.witness_bits,
        straight.mask_id,
        {"side_a": damaged_a, "side_b": damaged_b},
        0,
        len(damaged_a),
        len(damaged_b),
        result.found_at,
    )
    return result.grid, report
