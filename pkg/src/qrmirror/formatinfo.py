"""Format information: BCH(15,5) codewords, the on-grid XOR pattern, and
the flip graph used to pick a control code readable from both sides.

Words are 15-bit integers, bit 14 most significant. The five information
bits are two error-correction level bits followed by three mask bits; the
published XOR pattern 101010000010010 is applied before a word goes on the
grid, so the flip graph exists in two flavours: over raw codewords and over
their on-grid forms. Real readers see the on-grid form, which is the one
the mirror construction trusts.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .masks import symmetric_masks

GENERATOR = 0b10100110111  # x^10 + x^8 + x^5 + x^4 + x^2 + x + 1
FORMAT_XOR = 0b101010000010010

EC_BITS = {"L": 0b01, "M": 0b00, "Q": 0b11, "H": 0b10}
EC_NAME = {v: k for k, v in EC_BITS.items()}

MIDDLE_BIT = 1 << 7


class FormatSelectionError(RuntimeError):
    pass


def bch_encode(info):
    """15-bit systematic codeword for 5 information bits."""
    if not 0 <= info < 32:
        raise ValueError(f"info value {info} outside 0..31")
    rem = info << 10
    for i in range(4, -1, -1):
        if rem & (1 << (i + 10)):
            rem ^= GENERATOR << i
    return (info << 10) | rem


@lru_cache(maxsize=1)
def codewords():
    return tuple(bch_encode(i) for i in range(32))


def bch_decode(word):
    """Nearest codeword within Hamming distance 3, as (info, distance).

    Returns None when every codeword is further away; unique because the
    code's minimum distance is 7.
    """
    if not 0 <= word < 1 << 15:
        raise ValueError(f"word {word} is not a 15-bit value")
    for info, cw in enumerate(codewords()):
        d = (cw ^ word).bit_count()
        if d <= 3:
            return info, d
    return None


def apply_format_mask(word):
    """XOR with the fixed on-grid pattern (an involution)."""
    return word ^ FORMAT_XOR


def reverse_word(word):
    """The 15 bits in reversed order, as read after transposition."""
    out = 0
    for _ in range(15):
        out = (out << 1) | (word & 1)
        word >>= 1
    return out


def word_bits(word):
    return format(word, "015b")


@dataclass(frozen=True)
class FormatWord:
    """One of the 32 valid control codes."""

    ec_level: str
    mask_id: int

    @classmethod
    def from_info(cls, info):
        return cls(EC_NAME[info >> 3], info & 7)

    @property
    def info(self):
        return (EC_BITS[self.ec_level] << 3) | self.mask_id

    @property
    def word(self):
        return bch_encode(self.info)

    @property
    def bch_parity(self):
        return self.word & 0x3FF

    @property
    def on_grid(self):
        return apply_format_mask(self.word)


@dataclass(frozen=True)
class FlipEdge:
    witness: int
    distance_straight: int
    distance_mirrored: int


@dataclass(frozen=True)
class FlipGraph:
    """Graph over the 32 format codes: an edge (A, B) means some 15-bit
    string decodes as A straight and as B after bit reversal, each within
    the 3-bit correction budget. Edges keep their best witness."""

    domain: str
    nodes: tuple
    edges: dict
    candidate_shell_size: int
    candidate_unique_size: int

    def neighbors(self, info):
        return sorted(b for (a, b) in self.edges if a == info)


def _domain_word(info, domain):
    word = bch_encode(info)
    return apply_format_mask(word) if domain == "grid" else word


@lru_cache(maxsize=4)
def _radius3_ball_index(domain):
    """string -> (info, distance) over all strings within 3 of any code.

    Well defined because radius-3 balls around codewords are disjoint.
    """
    flips = [0]
    for w in range(1, 4):
        for positions in itertools.combinations(range(15), w):
            e = 0
            for p in positions:
                e |= 1 << p
            flips.append(e)
    index = {}
    for info in range(32):
        base = _domain_word(info, domain)
        for e in flips:
            index[base ^ e] = (info, e.bit_count())
    return index


def build_flip_graph(domain="grid"):
    """Enumerate radius-3 balls around all 32 codes and connect the codes
    whose balls meet under bit reversal."""
    if domain not in ("grid", "raw"):
        raise ValueError(f"unknown domain {domain!r}")
    index = _radius3_ball_index(domain)
    edges = {}
    for witness, (a, da) in index.items():
        hit = index.get(reverse_word(witness))
        if hit is None:
            continue
        b, db = hit
        candidate = FlipEdge(witness, da, db)
        best = edges.get((a, b))
        if best is None or (candidate.distance_straight + candidate.distance_mirrored,
                            candidate.witness) < (best.distance_straight + best.distance_mirrored,
                                                  best.witness):
            edges[(a, b)] = candidate
    shell = 32 * 455  # the C(15,3) shell around every code, 14560 strings
    unique = sum(1 for _, d in index.values() if d == 3)
    return FlipGraph(domain, tuple(range(32)), edges, shell, unique)


@dataclass(frozen=True)
class MirrorFormat:
    """A witness string plus both of its decodes."""

    witness: int
    domain: str
    straight: FormatWord
    mirrored: FormatWord
    distance_straight: int
    distance_mirrored: int

    @property
    def witness_bits(self):
        return word_bits(self.witness)


@lru_cache(maxsize=4)
def select_mirror_format(domain="grid", ec_level="L"):
    """Best witness readable from both sides of the code.

    Both the straight and the reversed reading must decode (within 3 bits)
    to the requested level with a transposition-symmetric mask, and the
    middle bit must be dark so the dark-module collision costs nothing.
    Ties prefer smaller combined distance, then self-loops, then the lower
    mask id.
    """
    index = _radius3_ball_index(domain)
    sym = symmetric_masks()
    want_ec = EC_BITS[ec_level]
    best = None
    best_key = None
    for witness, (a, da) in index.items():
        if not witness & MIDDLE_BIT:
            continue
        hit = index.get(reverse_word(witness))
        if hit is None:
            continue
        b, db = hit
        if (a >> 3) != want_ec or (b >> 3) != want_ec:
            continue
        if (a & 7) not in sym or (b & 7) not in sym:
            continue
        key = (da + db, 0 if a == b else 1, a & 7, witness)
        if best_key is None or key < best_key:
            best_key = key
            best = MirrorFormat(
                witness,
                domain,
                FormatWord.from_info(a),
                FormatWord.from_info(b),
                da,
                db,
            )
    if best is None:
        raise FormatSelectionError(
            f"no {ec_level}-level symmetric-mask witness in domain {domain!r}"
        )
    return best


def flip_graph_dot(graph):
    """DOT rendering: nodes carry 5-bit info labels, edges their witness."""
    lines = [f'graph flip_{graph.domain} {{']
    for info in graph.nodes:
        lines.append(f'  n{info} [label="{info:05b}"];')
    for (a, b), edge in sorted(graph.edges.items()):
        if a > b:
            continue  # the (b, a) twin carries the reversed witness
        lines.append(
            f'  n{a} -- n{b} [label="{word_bits(edge.witness)}'
            f' ({edge.distance_straight}+{edge.distance_mirrored})"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
