import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from p3p import wire
from p3p.errors import ParseError, RangeError
from p3p.wire import MsgType, WireMessage

from conftest import KEY15

PK15 = KEY15.public


def test_pass1_golden_vector():
    frame = wire.encode_msg(wire.pass_message(MsgType.PASS1, 83))
    assert frame == bytes.fromhex("5033505001010000000153")
    decoded = wire.decode_msg(frame, PK15)
    assert decoded.msg_type is MsgType.PASS1
    assert decoded.value == 83


def test_key_announce_golden_vector():
    frame = wire.encode_msg(wire.key_announce(15, 16))
    assert frame == bytes.fromhex("5033505001000000000a000000010f0000000110")
    assert wire.parse_key_announce(wire.decode_msg(frame)) == (15, 16)


def test_zero_payload_is_canonical_empty():
    frame = wire.encode_msg(wire.pass_message(MsgType.PASS3, 0))
    assert frame == bytes.fromhex("50335050010300000000")
    assert wire.decode_msg(frame, PK15).value == 0


def test_error_frame_roundtrip():
    msg = wire.error_message("it broke")
    decoded = wire.decode_msg(wire.encode_msg(msg))
    assert decoded.msg_type is MsgType.ERROR
    assert decoded.error_text == "it broke"


def test_error_frame_tolerates_bad_utf8():
    decoded = wire.decode_msg(wire.encode_msg(WireMessage(MsgType.ERROR, b"\xff\xfe")))
    assert decoded.error_text  # replaced, never raises


@given(
    msg_type=st.sampled_from([MsgType.PASS1, MsgType.PASS2, MsgType.PASS3]),
    value=st.integers(min_value=0, max_value=1 << 256),
)
def test_pass_roundtrip(msg_type, value):
    msg = wire.pass_message(msg_type, value)
    decoded = wire.decode_msg(wire.encode_msg(msg))
    assert decoded == msg
    assert decoded.value == value


@given(n=st.integers(min_value=2, max_value=1 << 128), g=st.integers(min_value=0, max_value=1 << 128))
def test_key_announce_roundtrip(n, g):
    decoded = wire.decode_msg(wire.encode_msg(wire.key_announce(n, g)))
    assert wire.parse_key_announce(decoded) == (n, g)


def test_short_frame_rejected():
    with pytest.raises(ParseError):
        wire.decode_msg(b"P3PP")


def test_bad_magic_rejected():
    frame = bytearray(wire.encode_msg(wire.pass_message(MsgType.PASS1, 83)))
    frame[0] = 0x51
    with pytest.raises(ParseError) as excinfo:
        wire.decode_msg(bytes(frame))
    assert excinfo.value.offset == 0


def test_unknown_version_rejected():
    frame = bytearray(wire.encode_msg(wire.pass_message(MsgType.PASS1, 83)))
    frame[4] = 2
    with pytest.raises(ParseError) as excinfo:
        wire.decode_msg(bytes(frame))
    assert excinfo.value.offset == 4


def test_unknown_type_rejected():
    frame = bytearray(wire.encode_msg(wire.pass_message(MsgType.PASS1, 83)))
    frame[5] = 9
    with pytest.raises(ParseError) as excinfo:
        wire.decode_msg(bytes(frame))
    assert excinfo.value.offset == 5


def test_length_mismatch_rejected():
    frame = wire.encode_msg(wire.pass_message(MsgType.PASS1, 83))
    with pytest.raises(ParseError):
        wire.decode_msg(frame + b"\x00")
    with pytest.raises(ParseError):
        wire.decode_msg(frame[:-1])


def test_oversized_declared_length_rejected():
    header = wire.MAGIC + bytes((1, 1)) + (wire.MAX_PAYLOAD + 1).to_bytes(4, "big")
    with pytest.raises(ParseError, match="cap"):
        wire.decode_msg(header)


def test_non_canonical_integer_rejected():
    frame = wire.MAGIC + bytes((1, 1)) + (2).to_bytes(4, "big") + b"\x00\x53"
    with pytest.raises(ParseError, match="non-canonical"):
        wire.decode_msg(frame)


def test_payload_bounds_checked_against_key():
    for msg_type in (MsgType.PASS1, MsgType.PASS2):
        ok = wire.encode_msg(wire.pass_message(msg_type, 224))
        assert wire.decode_msg(ok, PK15).value == 224
        too_big = wire.encode_msg(wire.pass_message(msg_type, 225))
        with pytest.raises(RangeError):
            wire.decode_msg(too_big, PK15)
    assert wire.decode_msg(
        wire.encode_msg(wire.pass_message(MsgType.PASS3, 14)), PK15
    ).value == 14
    with pytest.raises(RangeError):
        wire.decode_msg(wire.encode_msg(wire.pass_message(MsgType.PASS3, 15)), PK15)


def test_bounds_not_checked_without_key():
    frame = wire.encode_msg(wire.pass_message(MsgType.PASS1, 10**9))
    assert wire.decode_msg(frame).value == 10**9


def test_pass_message_type_guard():
    with pytest.raises(ValueError):
        wire.pass_message(MsgType.KEY_ANNOUNCE, 5)


def random_frame(rng):
    """Mix of garbage, plausible headers, bit-flipped frames, and valid ones."""
    kind = rng.randrange(4)
    if kind == 0:
        return bytes(rng.randrange(256) for _ in range(rng.randrange(0, 48)))
    if kind == 1:
        return (
            wire.MAGIC
            + bytes((rng.randrange(4), rng.randrange(8)))
            + rng.randrange(1 << 16).to_bytes(4, "big")
            + bytes(rng.randrange(256) for _ in range(rng.randrange(0, 64)))
        )
    if kind == 2:
        frame = bytearray(
            wire.encode_msg(
                wire.pass_message(
                    MsgType(rng.randrange(1, 4)), rng.randrange(1, 1 << 64)
                )
            )
        )
        frame[rng.randrange(len(frame))] ^= 1 << rng.randrange(8)
        return bytes(frame)
    # structurally valid, value small enough for any key's bounds
    return wire.encode_msg(
        wire.pass_message(MsgType(rng.randrange(1, 4)), rng.randrange(1, 15))
    )


def test_fuzzed_frames_never_crash():
    rng = random.Random(0xF00D)
    decoded = failed = 0
    for _ in range(2000):
        data = random_frame(rng)
        try:
            wire.decode_msg(data, PK15)
            decoded += 1
        except (ParseError, RangeError):
            failed += 1
    assert decoded + failed == 2000
    assert decoded > 0 and failed > 0
