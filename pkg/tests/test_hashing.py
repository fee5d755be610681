import os

import pytest

from oracles import sha1_reference
from zkec.curve import INFINITY, PAPER_B163
from zkec.hashing import challenge_from_points, sha1, transcript_bytes
from zkec.scalar import sc_from_digest

VECTORS = [
    (b"", "da39a3ee5e6b4b0d3255bfef95601890afd80709"),
    (b"abc", "a9993e364706816aba3e25717850c26c9cd0d89d"),
    (b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
     "84983e441c3bd26ebaae4aa1f95129e5e54670f1"),
    (b"a" * 1_000_000, "34aa973cd4c4daa4f61eeb2bdbad27316534016f"),
]


@pytest.mark.parametrize("message, digest", VECTORS, ids=["empty", "abc", "448-bit", "million-a"])
def test_reference_vectors(message, digest):
    assert sha1(message).hex() == digest


@pytest.mark.parametrize("message, digest", VECTORS[:3], ids=["empty", "abc", "448-bit"])
def test_oracle_agrees_with_vectors(message, digest):
    assert sha1_reference(message).hex() == digest


def test_matches_oracle_on_random_lengths():
    for n in (1, 55, 56, 63, 64, 65, 119, 250, 1000):
        data = os.urandom(n)
        assert sha1(data) == sha1_reference(data)


def test_benchmark_sized_input():
    assert len(sha1(bytes(250))) == 20


def test_challenge_of_infinity():
    expected = sc_from_digest(sha1_reference(bytes(42)))
    assert challenge_from_points([INFINITY]) == expected


def test_challenge_is_order_sensitive(curve, rng):
    P = curve.mul(rng.randrange(1, curve.n), curve.G)
    Q = curve.mul(rng.randrange(1, curve.n), curve.G)
    assert challenge_from_points([P, Q]) == challenge_from_points([P, Q])
    assert challenge_from_points([P, Q]) != challenge_from_points([Q, P])


def test_transcript_is_plain_concatenation(curve):
    G = curve.G
    data = transcript_bytes([G, INFINITY, G])
    assert data == curve.encode_point(G) + bytes(42) + curve.encode_point(G)


def test_hash_is_injectable(curve):
    fixed = lambda data: bytes(19) + b"\x05"
    assert challenge_from_points([curve.G], hash_fn=fixed) == 5


def test_empty_point_list():
    with pytest.raises(ValueError):
        challenge_from_points([])
