"""Wire format, 802.15.4-sized framing and a simulated lossy radio link.

Message layout (paper-b163 sizes)::

    PointMsg       0x1f  x||y                       43 B
    ScalarMsg      0x20  s                          22 B
    CoinMsg        0x30  bit                         2 B
    FinalMsg       0x00 | 0x01                       1 B
    TwoPointMsg    0x4f  P1 || P2                   85 B
    SignatureMsg   0x5f  [0x20 s] || xP || rP || rG  149 B
    QuadScalarMsg  0x60  d || e || s || t           85 B

The high nibble of the tag is the message type.  For point-carrying
messages the low nibble flags which points are at infinity (bit i for the
i-th point); their 42-byte bodies are then zero.  All integers are
big-endian.  A FinalMsg is a bare verdict byte with no tag.  The signature
carries s as a complete scalar record (its own 0x20 tag plus 21 bytes),
which is what brings it to 149 bytes.

Frames are ``[id:4|index:2|total-1:2] [xor checksum] payload``, at most
128 bytes, so a message spans at most four frames.
"""

from __future__ import annotations

import random
import socket
import struct
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .curve import PAPER_B163, Curve, Point
from .errors import DecodeError, ParameterError, TransportError, ValidationError
from .scalar import sc_from_bytes, sc_to_bytes

MAX_FRAME = 128
HEADER_LEN = 2
MAX_PAYLOAD = MAX_FRAME - HEADER_LEN
MAX_FRAGMENTS = 4
DEFAULT_DATA_RATE = 250_000


@dataclass(frozen=True)
class PointMsg:
    point: Point


@dataclass(frozen=True)
class ScalarMsg:
    value: int


@dataclass(frozen=True)
class CoinMsg:
    bit: int


@dataclass(frozen=True)
class FinalMsg:
    accept: bool


@dataclass(frozen=True)
class TwoPointMsg:
    first: Point
    second: Point


@dataclass(frozen=True)
class SignatureMsg:
    s: int
    xP: Point
    rP: Point
    rG: Point


@dataclass(frozen=True)
class QuadScalarMsg:
    d: int
    e: int
    s: int
    t: int


Message = Union[PointMsg, ScalarMsg, CoinMsg, FinalMsg, TwoPointMsg, SignatureMsg, QuadScalarMsg]

# type -> (tag, number of points, number of scalars); points precede scalars
# except in SignatureMsg, which leads with s
_LAYOUT = {
    PointMsg: (0x10, 1, 0),
    ScalarMsg: (0x20, 0, 1),
    CoinMsg: (0x30, 0, 0),
    TwoPointMsg: (0x40, 2, 0),
    SignatureMsg: (0x50, 3, 1),
    QuadScalarMsg: (0x60, 0, 4),
}
_BY_TAG = {tag >> 4: cls for cls, (tag, _, _) in _LAYOUT.items()}


def encoded_size(cls: type, curve: Curve = PAPER_B163) -> int:
    if cls is FinalMsg:
        return 1
    if cls is CoinMsg:
        return 2
    _, npoints, nscalars = _LAYOUT[cls]
    size = 1 + npoints * curve.point_len + nscalars * curve.scalar_len
    return size + 1 if cls is SignatureMsg else size


def _points(msg) -> tuple[Point, ...]:
    if isinstance(msg, PointMsg):
        return (msg.point,)
    if isinstance(msg, TwoPointMsg):
        return (msg.first, msg.second)
    if isinstance(msg, SignatureMsg):
        return (msg.xP, msg.rP, msg.rG)
    return ()


def encode(msg: Message, curve: Curve = PAPER_B163) -> bytes:
    if isinstance(msg, FinalMsg):
        return b"\x01" if msg.accept else b"\x00"
    if isinstance(msg, CoinMsg):
        if msg.bit not in (0, 1):
            raise ParameterError("coin must be 0 or 1")
        return bytes((0x30, msg.bit))
    tag = _LAYOUT[type(msg)][0]
    points = _points(msg)
    for i, P in enumerate(points):
        if P.is_infinity:
            tag |= 1 << i
    out = bytearray([tag])
    n = curve.n
    if isinstance(msg, ScalarMsg):
        out += sc_to_bytes(msg.value, n)
    elif isinstance(msg, QuadScalarMsg):
        for v in (msg.d, msg.e, msg.s, msg.t):
            out += sc_to_bytes(v, n)
    elif isinstance(msg, SignatureMsg):
        out += bytes((_LAYOUT[ScalarMsg][0],)) + sc_to_bytes(msg.s, n)
    for P in points:
        out += curve.encode_point(P)
    return bytes(out)


def decode(data: bytes, curve: Curve = PAPER_B163) -> Message:
    if not data:
        raise DecodeError("empty message")
    if len(data) == 1:
        if data[0] > 1:
            raise DecodeError(f"final verdict byte must be 0 or 1, got {data[0]:#04x}")
        return FinalMsg(bool(data[0]))
    tag = data[0]
    cls = _BY_TAG.get(tag >> 4)
    if cls is None:
        raise DecodeError(f"unknown message tag {tag:#04x}")
    size = encoded_size(cls, curve)
    if len(data) != size:
        raise DecodeError(f"{cls.__name__} must be {size} bytes, got {len(data)}")
    flags = tag & 0x0F
    npoints = _LAYOUT[cls][1]
    if flags >> npoints:
        raise DecodeError(f"reserved tag bits set in {tag:#04x}")
    if cls is CoinMsg:
        if data[1] > 1:
            raise DecodeError("coin byte must be 0 or 1")
        return CoinMsg(data[1])

    slen, plen = curve.scalar_len, curve.point_len
    pos = 1

    def scalar():
        nonlocal pos
        v = sc_from_bytes(data[pos:pos + slen], curve.n)
        pos += slen
        return v

    def point(i):
        nonlocal pos
        chunk = data[pos:pos + plen]
        pos += plen
        inf_flag = bool(flags >> i & 1)
        if inf_flag != (not any(chunk)):
            raise DecodeError("infinity flag disagrees with point body")
        try:
            return curve.decode_point(chunk)
        except ValidationError as exc:
            raise DecodeError(str(exc)) from exc

    if cls is ScalarMsg:
        return ScalarMsg(scalar())
    if cls is QuadScalarMsg:
        return QuadScalarMsg(scalar(), scalar(), scalar(), scalar())
    if cls is SignatureMsg:
        if data[1] != _LAYOUT[ScalarMsg][0]:
            raise DecodeError("signature scalar record has the wrong tag")
        pos = 2
        s = scalar()
        return SignatureMsg(s, point(0), point(1), point(2))
    if cls is TwoPointMsg:
        return TwoPointMsg(point(0), point(1))
    return PointMsg(point(0))


# -- framing ---------------------------------------------------------------


def _checksum(data: bytes) -> int:
    c = 0
    for b in data:
        c ^= b
    return c


@dataclass(frozen=True)
class Frame:
    msg_id: int
    index: int
    total: int
    payload: bytes

    def __post_init__(self):
        if not 0 <= self.msg_id < 16:
            raise ParameterError("message id must fit in 4 bits")
        if not 1 <= self.total <= MAX_FRAGMENTS or not 0 <= self.index < self.total:
            raise ParameterError("bad fragment index/total")
        if len(self.payload) > MAX_PAYLOAD:
            raise ParameterError(f"frame payload over {MAX_PAYLOAD} bytes")

    def to_bytes(self) -> bytes:
        head = (self.msg_id << 4) | (self.index << 2) | (self.total - 1)
        body = bytes((head,)) + self.payload
        return bytes((head, _checksum(body))) + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> Frame:
        if not HEADER_LEN <= len(data) <= MAX_FRAME:
            raise DecodeError(f"frame length {len(data)} outside [{HEADER_LEN}, {MAX_FRAME}]")
        head, check, payload = data[0], data[1], bytes(data[2:])
        if _checksum(bytes((head,)) + payload) != check:
            raise DecodeError("frame checksum mismatch")
        total = (head & 0x3) + 1
        index = (head >> 2) & 0x3
        if index >= total:
            raise DecodeError("fragment index beyond total")
        return cls(head >> 4, index, total, payload)


def fragment(data: bytes, msg_id: int = 0) -> list[Frame]:
    chunks = [data[i:i + MAX_PAYLOAD] for i in range(0, len(data), MAX_PAYLOAD)] or [b""]
    if len(chunks) > MAX_FRAGMENTS:
        raise ParameterError(f"{len(data)} bytes need more than {MAX_FRAGMENTS} frames")
    return [Frame(msg_id, i, len(chunks), c) for i, c in enumerate(chunks)]


def reassemble(frames: Iterable[Frame]) -> bytes:
    """Join the fragments of one message, in any order, duplicates allowed."""
    frames = list(frames)
    if not frames:
        raise TransportError("reassembly timed out: no fragments")
    msg_id, total = frames[0].msg_id, frames[0].total
    parts: dict[int, bytes] = {}
    for f in frames:
        if f.msg_id != msg_id or f.total != total:
            raise DecodeError("fragments from different messages")
        if parts.setdefault(f.index, f.payload) != f.payload:
            raise DecodeError(f"conflicting copies of fragment {f.index}")
    missing = set(range(total)) - set(parts)
    if missing:
        raise TransportError(f"reassembly timed out: missing fragments {sorted(missing)}")
    return b"".join(parts[i] for i in range(total))


def airtime(nbytes: int, data_rate: float = DEFAULT_DATA_RATE) -> float:
    """Seconds to clock ``nbytes`` through a radio at ``data_rate`` bit/s."""
    if data_rate <= 0:
        raise ParameterError("data rate must be positive")
    return 8 * nbytes / data_rate


# -- simulated channel ----------------------------------------------------


@dataclass(frozen=True)
class ChannelConfig:
    loss_probability: float = 0.0
    seed: int | None = None
    max_retries: int = 10
    ack_timeout: int = 1  # ticks charged per lost attempt
    data_rate_bps: float = DEFAULT_DATA_RATE

    def __post_init__(self):
        if not 0.0 <= self.loss_probability <= 1.0:
            raise ParameterError("loss probability must be in [0, 1]")
        if self.data_rate_bps <= 0:
            raise ParameterError("data rate must be positive")
        if self.max_retries < 0:
            raise ParameterError("max_retries must be >= 0")


@dataclass
class ChannelStats:
    frames_sent: int = 0
    frames_delivered: int = 0
    attempts: int = 0
    retransmissions: int = 0
    bytes_attempted: int = 0
    ticks: int = 0
    airtime: float = 0.0


class LossyChannel:
    """Stop-and-wait ARQ over a link that drops each data frame independently.

    ``send`` retries until the frame gets through (the ACK path is taken as
    reliable) or ``max_retries`` retransmissions have failed.  Delivered
    frames queue up for ``recv`` in order.  With a fixed seed the loss
    pattern is fully reproducible.
    """

    def __init__(self, config: ChannelConfig = ChannelConfig()):
        self.config = config
        self.stats = ChannelStats()
        self._rng = random.Random(config.seed)
        self._queue: deque[bytes] = deque()

    def send(self, frame: Frame) -> None:
        raw = frame.to_bytes()
        cfg = self.config
        self.stats.frames_sent += 1
        for attempt in range(cfg.max_retries + 1):
            if attempt:
                self.stats.retransmissions += 1
            self.stats.attempts += 1
            self.stats.bytes_attempted += len(raw)
            self.stats.airtime += airtime(len(raw), cfg.data_rate_bps)
            if self._rng.random() >= cfg.loss_probability:
                self._queue.append(raw)
                self.stats.frames_delivered += 1
                return
            self.stats.ticks += cfg.ack_timeout
        raise TransportError(f"frame dropped {cfg.max_retries + 1} times, giving up")

    def recv(self) -> Frame:
        if not self._queue:
            raise TransportError("receive on an empty channel")
        return Frame.from_bytes(self._queue.popleft())

    @property
    def pending(self) -> int:
        return len(self._queue)


class ChannelLink:
    """Message-level link over a :class:`LossyChannel` (both ends in-process)."""

    def __init__(self, channel: LossyChannel | None = None, curve: Curve = PAPER_B163):
        self.channel = channel if channel is not None else LossyChannel()
        self.curve = curve
        self._next_id = 0
        self.frames_per_message: list[int] = []

    def send(self, msg: Message) -> bytes:
        data = encode(msg, self.curve)
        frames = fragment(data, self._next_id)
        self._next_id = (self._next_id + 1) % 16
        for f in frames:
            self.channel.send(f)
        self.frames_per_message.append(len(frames))
        return data

    def recv(self) -> tuple[Message, bytes]:
        first = self.channel.recv()
        frames = [first]
        for _ in range(first.total - 1):
            frames.append(self.channel.recv())
        data = reassemble(frames)
        return decode(data, self.curve), data


class SocketLink:
    """Same frames over a stream socket, each prefixed by its length byte."""

    def __init__(self, sock: socket.socket, curve: Curve = PAPER_B163):
        self.sock = sock
        self.curve = curve
        self._next_id = 0

    def _read_exact(self, n: int) -> bytes:
        buf = b""
        while len(buf) < n:
            chunk = self.sock.recv(n - len(buf))
            if not chunk:
                raise TransportError("peer closed the connection")
            buf += chunk
        return buf

    def send(self, msg: Message) -> bytes:
        data = encode(msg, self.curve)
        for f in fragment(data, self._next_id):
            raw = f.to_bytes()
            self.sock.sendall(bytes((len(raw),)) + raw)
        self._next_id = (self._next_id + 1) % 16
        return data

    def recv(self) -> tuple[Message, bytes]:
        frames = []
        while True:
            n = self._read_exact(1)[0]
            f = Frame.from_bytes(self._read_exact(n))
            frames.append(f)
            if len(frames) == f.total:
                break
        data = reassemble(frames)
        return decode(data, self.curve), data


# -- transcript files -----------------------------------------------------

_RECORD = struct.Struct(">BH")


def dump_records(records: Iterable[tuple[int, Message]], curve: Curve = PAPER_B163) -> bytes:
    """``[direction:1][length:2][message]`` per record; direction 0 = prover sent."""
    out = bytearray()
    for direction, msg in records:
        data = encode(msg, curve)
        out += _RECORD.pack(int(direction), len(data)) + data
    return bytes(out)


def load_records(data: bytes, curve: Curve = PAPER_B163) -> list[tuple[int, Message]]:
    records = []
    pos = 0
    while pos < len(data):
        if pos + _RECORD.size > len(data):
            raise DecodeError("truncated transcript record header")
        direction, length = _RECORD.unpack_from(data, pos)
        pos += _RECORD.size
        if direction > 1:
            raise DecodeError(f"bad direction byte {direction}")
        body = data[pos:pos + length]
        if len(body) != length:
            raise DecodeError("truncated transcript record")
        pos += length
        records.append((direction, decode(body, curve)))
    return records
