import base64
import random

import pytest

from p3p import keyfile, paillier
from p3p.encoding import encode_uint
from p3p.errors import ParseError
from p3p.signature import BlindingSecret, Signature

from conftest import KEY15

PK15 = KEY15.public


def test_public_key_roundtrip_bit_exact():
    data = keyfile.serialize_key(PK15)
    parsed = keyfile.parse_key(data)
    assert parsed == PK15
    assert keyfile.serialize_key(parsed) == data


def test_private_key_roundtrip_bit_exact():
    data = keyfile.serialize_key(KEY15)
    parsed = keyfile.parse_key(data)
    assert parsed == KEY15
    assert keyfile.serialize_key(parsed) == data


def test_realistic_key_roundtrip():
    sk = paillier.keygen(128, rng=random.Random(61))
    assert keyfile.parse_key(keyfile.serialize_key(sk)) == sk
    assert keyfile.parse_key(keyfile.serialize_key(sk.public)) == sk.public


def test_headers_are_distinct():
    assert keyfile.serialize_key(PK15).startswith(b"paillier-public-v1\n")
    assert keyfile.serialize_key(KEY15).startswith(b"paillier-private-v1\n")


def test_unknown_header_rejected():
    data = keyfile.serialize_key(PK15).replace(b"-v1", b"-v2")
    with pytest.raises(ParseError, match="unknown header"):
        keyfile.parse_key(data)


def test_garbage_inputs_rejected():
    for bad in (b"", b"\xff\xfe", b"hello world\n", b"paillier-public-v1\n!!!\n"):
        with pytest.raises(ParseError):
            keyfile.parse_key(bad)


def test_truncated_body_rejected_with_offset():
    body = encode_uint(15) + encode_uint(16)
    data = b"paillier-public-v1\n" + base64.b64encode(body[:-1]) + b"\n"
    with pytest.raises(ParseError) as excinfo:
        keyfile.parse_key(data)
    assert excinfo.value.offset is not None


def test_non_canonical_integer_rejected():
    # inject a leading zero byte into the modulus field
    body = b"\x00\x00\x00\x02\x00\x0f" + encode_uint(16)
    data = b"paillier-public-v1\n" + base64.b64encode(body) + b"\n"
    with pytest.raises(ParseError, match="non-canonical"):
        keyfile.parse_key(data)


def test_trailing_bytes_rejected():
    body = encode_uint(15) + encode_uint(16) + b"\x99"
    data = b"paillier-public-v1\n" + base64.b64encode(body) + b"\n"
    with pytest.raises(ParseError, match="trailing"):
        keyfile.parse_key(data)


def _private_body(n, g, p, q, lam, mu):
    body = b"".join(encode_uint(v) for v in (n, g, p, q, lam, mu))
    return b"paillier-private-v1\n" + base64.b64encode(body) + b"\n"


def test_private_key_revalidated_on_parse():
    good = _private_body(15, 16, 3, 5, 4, 4)
    parsed = keyfile.parse_key(good)
    assert parsed == KEY15

    with pytest.raises(ParseError, match="mu"):
        keyfile.parse_key(_private_body(15, 16, 3, 5, 4, 5))
    with pytest.raises(ParseError, match="lambda"):
        keyfile.parse_key(_private_body(15, 16, 3, 5, 8, 4))
    with pytest.raises(ParseError, match="p\\*q"):
        keyfile.parse_key(_private_body(21, 16, 3, 5, 4, 4))


def test_signature_envelope_roundtrip():
    sig = Signature(s1=7, s2=2)
    data = keyfile.serialize_signature(sig)
    assert keyfile.parse_signature(data) == sig
    with pytest.raises(ParseError):
        keyfile.parse_signature(keyfile.serialize_key(PK15))


def test_blinding_secret_envelope_roundtrip():
    secret = BlindingSecret(x=2, x_inv=8)
    data = keyfile.serialize_blinding_secret(secret)
    parsed = keyfile.parse_blinding_secret(data, 15)
    assert parsed == secret


def test_blinding_secret_checked_against_modulus():
    data = keyfile.serialize_blinding_secret(BlindingSecret(x=5, x_inv=0))
    with pytest.raises(ParseError, match="unit"):
        keyfile.parse_blinding_secret(data, 15)
