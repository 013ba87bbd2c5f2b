"""Bitstream assembly and parsing."""

import random

import pytest

from qrmirror import codec

HELLO_BITS = "0010" + "000000101" + "01100001011" + "01111000110" + "011000"


def test_hello_exact_bits():
    seg = codec.Segment("alphanumeric", "HELLO")
    assert codec.encode_segment(seg) == HELLO_BITS
    assert len(HELLO_BITS) == 41


def test_empty_alphanumeric_segment():
    assert codec.encode_segment(codec.Segment("alphanumeric", "")) == "0010" + "0" * 9


def test_ab_pair_value():
    # A=10, B=11 in the 45-character table
    assert codec.ALPHANUMERIC.index("A") * 45 + codec.ALPHANUMERIC.index("B") == 461
    bits = codec.encode_segment(codec.Segment("alphanumeric", "AB"))
    assert bits[13:] == format(461, "011b")


def test_alphanumeric_length_formula():
    for n in range(0, 20):
        text = "ABCDEFGHIJKLMNOPQRST"[:n]
        bits = codec.encode_segment(codec.Segment("alphanumeric", text))
        assert len(bits) == 4 + 9 + 11 * (n // 2) + 6 * (n % 2)


def test_alphanumeric_rejects_lowercase():
    with pytest.raises(codec.CodecError):
        codec.encode_segment(codec.Segment("alphanumeric", "hello"))


def test_numeric_segment():
    bits = codec.encode_segment(codec.Segment("numeric", "12345"))
    assert bits == "0001" + format(5, "010b") + format(123, "010b") + format(45, "07b")


def test_byte_segment():
    bits = codec.encode_segment(codec.Segment("byte", "Hi!"))
    assert bits == "0100" + format(3, "08b") + "010010000110100100100001"


def test_pick_mode():
    assert codec.pick_mode("1234") == "numeric"
    assert codec.pick_mode("HELLO") == "alphanumeric"
    assert codec.pick_mode("Hello") == "byte"
    assert codec.pick_mode("") == "alphanumeric"


def test_padded_payload_is_152_bits_with_fill_pattern():
    payload = codec.assemble_payload(codec.make_segment("HELLO"), pad=True)
    assert payload.padded
    assert len(payload.bits) == 152
    # terminator, zero fill to the byte edge, then alternating pad bytes
    tail = payload.bits[48:]
    expected = (codec.PAD_BYTES[0] + codec.PAD_BYTES[1]) * 7
    assert tail == expected[: len(tail)]


def test_padded_empty_payload():
    payload = codec.assemble_payload(codec.make_segment(""), pad=True)
    assert len(payload.bits) == 152
    assert payload.bits[:13] == "0010" + "0" * 9
    assert payload.bits[13:17] == "0000"  # terminator
    assert payload.bits[17:24] == "0" * 7  # fill to the byte boundary


def test_unpadded_payload_is_raw_bits():
    payload = codec.assemble_payload(codec.make_segment("HELLO"), pad=False)
    assert payload.bits == HELLO_BITS
    assert not payload.padded
    assert payload.declared_length == 5


def test_assemble_rejects_overflow():
    with pytest.raises(codec.CodecError):
        codec.assemble_payload(codec.Segment("byte", "x" * 20), pad=True)


def test_parse_ignores_trailing_bits():
    parsed = codec.parse_payload(HELLO_BITS + "10110100101011")
    assert parsed.text == "HELLO"
    assert parsed.mode == "alphanumeric"
    assert parsed.declared_length == 5


def test_parse_empty_message():
    parsed = codec.parse_payload("0010" + "0" * 9 + "111")
    assert parsed.text == ""


def test_parse_rejects_eci():
    with pytest.raises(codec.CodecError):
        codec.parse_payload("0111" + "0" * 20)


def test_parse_rejects_truncated_data():
    with pytest.raises(codec.CodecError):
        codec.parse_payload("0010" + format(10, "09b") + "0" * 11)


def test_parse_terminator_only():
    parsed = codec.parse_payload("0000" + "0" * 20)
    assert parsed.text == ""
    assert parsed.mode == "terminator"


def test_round_trip_alphanumeric_up_to_18():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randrange(0, 19)
        text = "".join(rng.choice(codec.ALPHANUMERIC) for _ in range(n))
        payload = codec.assemble_payload(codec.make_segment(text, "alphanumeric"))
        assert codec.parse_payload(payload.bits).text == text


def test_round_trip_byte_up_to_17():
    rng = random.Random(14)
    for _ in range(40):
        n = rng.randrange(0, 18)
        text = "".join(chr(rng.randrange(32, 256)) for _ in range(n))
        payload = codec.assemble_payload(codec.make_segment(text, "byte"))
        assert codec.parse_payload(payload.bits).text == text


def test_round_trip_numeric():
    rng = random.Random(15)
    for _ in range(40):
        n = rng.randrange(0, 42)
        text = "".join(rng.choice("0123456789") for _ in range(n))
        payload = codec.assemble_payload(codec.make_segment(text, "numeric"))
        assert codec.parse_payload(payload.bits).text == text


def test_bits_bytes_helpers():
    assert codec.bits_to_bytes("1110110000010001") == bytes([0xEC, 0x11])
    assert codec.bytes_to_bits(bytes([0xEC, 0x11])) == "1110110000010001"
    with pytest.raises(codec.CodecError):
        codec.bits_to_bytes("101")
