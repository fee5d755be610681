import random
import socket

import pytest
from hypothesis import given, strategies as st

from zkec.curve import INFINITY, Point
from zkec.errors import DecodeError, ParameterError, TransportError
from zkec.scalar import ORDER
from zkec.wire import (MAX_FRAME, ChannelConfig, ChannelLink, CoinMsg, FinalMsg, Frame,
                       LossyChannel, PointMsg, QuadScalarMsg, ScalarMsg, SignatureMsg, SocketLink,
                       TwoPointMsg, airtime, decode, dump_records, encode, encoded_size, fragment,
                       load_records, reassemble)

scalars = st.integers(min_value=0, max_value=ORDER - 1)


@pytest.fixture(scope="module")
def points():
    from zkec.curve import PAPER_B163 as c
    rng = random.Random(99)
    return [INFINITY, c.G] + [c.mul(rng.randrange(1, c.n), c.G) for _ in range(6)]


def sample_messages(points):
    P, Q, R = points[1], points[2], points[3]
    return [
        PointMsg(P), ScalarMsg(7), CoinMsg(1), FinalMsg(True), TwoPointMsg(P, Q),
        SignatureMsg(ORDER - 1, P, Q, R), QuadScalarMsg(1, 2, 3, 4),
    ]


def test_table_sizes(points):
    sizes = [len(encode(m)) for m in sample_messages(points)]
    assert sizes == [43, 22, 2, 1, 85, 149, 85]
    for m in sample_messages(points):
        assert encoded_size(type(m)) == len(encode(m))


def test_final_byte_values():
    assert encode(FinalMsg(True)) == b"\x01"
    assert encode(FinalMsg(False)) == b"\x00"
    assert decode(b"\x01") == FinalMsg(True)


def test_point_layout(points):
    G = points[1]
    data = encode(PointMsg(G))
    assert data[0] == 0x10
    assert data[1:22].hex() == "02fe13c0537bbc11acaa07d793de4e6d5e5c94eee8"


def test_signature_layout(points):
    data = encode(SignatureMsg(5, points[1], points[2], points[3]))
    assert data[0] == 0x50
    assert data[1] == 0x20
    assert int.from_bytes(data[2:23], "big") == 5


def test_round_trip_all_types(points):
    for m in sample_messages(points):
        assert decode(encode(m)) == m


@given(st.data())
def test_round_trip_randomized(points, data):
    pick = st.sampled_from(points)
    msgs = [
        PointMsg(data.draw(pick)),
        ScalarMsg(data.draw(scalars)),
        CoinMsg(data.draw(st.integers(0, 1))),
        FinalMsg(data.draw(st.booleans())),
        TwoPointMsg(data.draw(pick), data.draw(pick)),
        SignatureMsg(data.draw(scalars), data.draw(pick), data.draw(pick), data.draw(pick)),
        QuadScalarMsg(*(data.draw(scalars) for _ in range(4))),
    ]
    for m in msgs:
        raw = encode(m)
        assert decode(raw) == m
        assert all(len(f.to_bytes()) <= MAX_FRAME for f in fragment(raw))


def test_infinity_flags(points):
    data = encode(TwoPointMsg(points[1], INFINITY))
    assert data[0] == 0x42
    assert data[43:] == bytes(42)
    assert decode(data).second.is_infinity


def test_decode_errors(points):
    G = points[1]
    good = encode(PointMsg(G))
    cases = [
        b"",
        b"\x02",                       # verdict byte out of range
        b"\x70" + bytes(42),           # unknown type
        good[:-1],                     # short
        b"\x11" + good[1:],            # infinity flag with a real point
        b"\x10" + bytes(42),           # zero body without the flag
        b"\x12" + good[1:],            # flag for a second point that does not exist
        good[:-1] + bytes([good[-1] ^ 1]),  # off the curve
        b"\x30\x02",                   # coin not a bit
        b"\x20" + ORDER.to_bytes(21, "big"),  # unreduced scalar
    ]
    for raw in cases:
        with pytest.raises(DecodeError):
            decode(raw)
    sig = bytearray(encode(SignatureMsg(1, G, G, G)))
    sig[1] = 0x21
    with pytest.raises(DecodeError):
        decode(bytes(sig))


def test_fragment_counts():
    assert len(fragment(bytes(149))) == 2
    assert len(fragment(bytes(85))) == 1
    assert len(fragment(bytes(126))) == 1
    assert len(fragment(bytes(127))) == 2
    with pytest.raises(ParameterError):
        fragment(bytes(4 * 126 + 1))


@given(st.binary(max_size=300), st.randoms(use_true_random=False), st.integers(0, 15))
def test_fragment_round_trip_any_order(payload, shuffle_rng, msg_id):
    frames = fragment(payload, msg_id)
    wire = [f.to_bytes() for f in frames]
    assert all(len(w) <= MAX_FRAME for w in wire)
    shuffle_rng.shuffle(wire)
    assert reassemble(Frame.from_bytes(w) for w in wire) == payload


def test_missing_fragment():
    frames = fragment(bytes(range(200)))
    with pytest.raises(TransportError):
        reassemble(frames[:1])
    with pytest.raises(TransportError):
        reassemble([])


def test_frame_header_and_checksum():
    f = Frame(5, 1, 2, b"\xaa\x55")
    raw = f.to_bytes()
    assert raw[0] == (5 << 4) | (1 << 2) | 1
    assert raw[1] == raw[0] ^ 0xAA ^ 0x55
    assert Frame.from_bytes(raw) == f
    corrupt = bytearray(raw)
    corrupt[2] ^= 0x10
    with pytest.raises(DecodeError):
        Frame.from_bytes(bytes(corrupt))
    with pytest.raises(DecodeError):
        Frame.from_bytes(bytes(MAX_FRAME + 1))


def test_airtime():
    assert airtime(85) == pytest.approx(2.72e-3)
    assert airtime(149) == pytest.approx(4.768e-3)
    assert airtime(0) == 0
    with pytest.raises(ParameterError):
        airtime(10, 0)


def test_channel_config_validation():
    with pytest.raises(ParameterError):
        ChannelConfig(loss_probability=1.5)
    with pytest.raises(ParameterError):
        ChannelConfig(data_rate_bps=0)


def test_lossless_channel():
    ch = LossyChannel(ChannelConfig(seed=1))
    for i in range(50):
        ch.send(Frame(i % 16, 0, 1, bytes([i])))
    assert ch.stats.frames_delivered == ch.stats.frames_sent == 50
    assert ch.stats.retransmissions == 0
    assert [ch.recv().payload for _ in range(50)] == [bytes([i]) for i in range(50)]


def test_retransmissions_follow_geometric_expectation():
    ch = LossyChannel(ChannelConfig(loss_probability=0.3, seed=7, max_retries=10))
    for _ in range(1000):
        ch.send(Frame(0, 0, 1, b"x"))
    assert ch.stats.frames_delivered == 1000
    expected = 1000 * 0.3 / 0.7
    assert abs(ch.stats.retransmissions - expected) <= 0.2 * expected


def test_total_loss_gives_up():
    ch = LossyChannel(ChannelConfig(loss_probability=1.0, seed=1, max_retries=4))
    with pytest.raises(TransportError):
        ch.send(Frame(0, 0, 1, b"x"))
    assert ch.stats.attempts == 5


def test_channel_is_deterministic_under_seed():
    def run():
        ch = LossyChannel(ChannelConfig(loss_probability=0.5, seed=42))
        for _ in range(100):
            ch.send(Frame(0, 0, 1, b"x"))
        return ch.stats
    assert run() == run()


def test_recv_on_empty_channel():
    with pytest.raises(TransportError):
        LossyChannel().recv()


def test_channel_link_carries_signature(points):
    link = ChannelLink(LossyChannel(ChannelConfig(loss_probability=0.2, seed=3)))
    msg = SignatureMsg(9, points[1], points[2], points[3])
    sent = link.send(msg)
    got, raw = link.recv()
    assert got == msg and raw == sent
    assert link.frames_per_message == [2]


def test_socket_link(points):
    a, b = socket.socketpair()
    with a, b:
        left, right = SocketLink(a), SocketLink(b)
        for m in sample_messages(points):
            left.send(m)
            assert right.recv()[0] == m


def test_socket_link_peer_closed():
    a, b = socket.socketpair()
    a.close()
    with b, pytest.raises(TransportError):
        SocketLink(b).recv()


def test_transcript_records(points):
    records = [(0, PointMsg(points[1])), (1, ScalarMsg(3)), (0, ScalarMsg(4)), (1, FinalMsg(True))]
    data = dump_records(records)
    assert data[:3] == b"\x00\x00\x2b"
    assert load_records(data) == records
    with pytest.raises(DecodeError):
        load_records(data[:-1])
    with pytest.raises(DecodeError):
        load_records(b"\x02\x00\x01\x01")
