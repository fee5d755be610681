"""Drive a prover and verifier to a verdict over a message link."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..costmodel import CostLedger
from ..curve import PAPER_B163, Curve
from ..errors import DecodeError, ParameterError, ProtocolOrderError, SessionFailure, TransportError
from ..scalar import sc_random
from ..wire import (ChannelConfig, ChannelLink, ChannelStats, CoinMsg, LossyChannel, ScalarMsg,
                    dump_records, load_records)
from .base import (DLEqStatement, DLStatement, Direction, Party, Reason, SignatureStatement,
                   SingleBitStatement, Verdict, Witness)
from .coinflip import DEFAULT_ROUNDS, CoinflipProver, CoinflipVerifier
from .dleq import DLEqNIProver, DLEqNIVerifier, DLEqProver, DLEqVerifier
from .schnorr import SchnorrProver, SchnorrVerifier, SignatureProver, SignatureVerifier
from .singlebit import SingleBitProver, SingleBitVerifier


@dataclass(frozen=True)
class ProtocolInfo:
    name: str
    statement_type: type
    prover: type
    verifier: type
    # challenge modes the verifier accepts; empty for non-interactive ones
    challenge_modes: tuple[str, ...]


PROTOCOLS = {
    p.name: p
    for p in (
        ProtocolInfo("coinflip", DLStatement, CoinflipProver, CoinflipVerifier, ("random", "script")),
        ProtocolInfo("schnorr", DLStatement, SchnorrProver, SchnorrVerifier, ("random", "hash", "script")),
        ProtocolInfo("schnorr-ni", SignatureStatement, SignatureProver, SignatureVerifier, ()),
        ProtocolInfo("dleq", DLEqStatement, DLEqProver, DLEqVerifier, ("random", "hash", "script")),
        ProtocolInfo("dleq-ni", DLEqStatement, DLEqNIProver, DLEqNIVerifier, ()),
        ProtocolInfo("singlebit", SingleBitStatement, SingleBitProver, SingleBitVerifier,
                     ("random", "hash", "script")),
    )
}


def protocol_info(name: str) -> ProtocolInfo:
    try:
        return PROTOCOLS[name]
    except KeyError:
        raise ParameterError(f"unknown protocol {name!r}; known: {sorted(PROTOCOLS)}") from None


@dataclass(frozen=True)
class SessionConfig:
    rounds: int = DEFAULT_ROUNDS  # coin-flip only
    challenge_mode: str = "random"
    channel: ChannelConfig = ChannelConfig()


@dataclass
class Transcript:
    protocol: str
    records: list = field(default_factory=list)  # (Direction, message)
    verdict: Verdict = Verdict.PENDING
    reason: Reason = Reason.OK
    prover_ledger: CostLedger = field(default_factory=CostLedger)
    verifier_ledger: CostLedger = field(default_factory=CostLedger)
    channel: Optional[ChannelStats] = None
    frames: list = field(default_factory=list)  # frames per message, in send order

    def messages(self, direction: Direction) -> list:
        return [m for d, m in self.records if d == direction]

    @property
    def ledger(self) -> CostLedger:
        return self.prover_ledger + self.verifier_ledger

    def to_bytes(self, curve: Curve = PAPER_B163) -> bytes:
        return dump_records(self.records, curve)


def make_prover(protocol: str, statement, witness: Witness, rng=None,
                config: SessionConfig = SessionConfig(), nonces=None) -> Party:
    info = protocol_info(protocol)
    if protocol == "coinflip":
        return CoinflipProver(statement, witness, config.rounds, rng, nonces)
    return info.prover(statement, witness, rng, nonces)


def make_verifier(protocol: str, statement, rng=None, config: SessionConfig = SessionConfig(),
                  script=None) -> Party:
    info = protocol_info(protocol)
    if not info.challenge_modes:
        return info.verifier(statement, rng)
    mode = config.challenge_mode
    if mode not in info.challenge_modes:
        raise ParameterError(f"{protocol} does not support challenge mode {mode!r}")
    if protocol == "coinflip":
        return CoinflipVerifier(statement, config.rounds, rng, mode, script)
    return info.verifier(statement, rng, mode, script)


def split_rng(rng):
    """Independent prover and verifier generators derived from one seed."""
    if rng is None:
        return None, None
    return random.Random(rng.getrandbits(64)), random.Random(rng.getrandbits(64))


def run_session(protocol: str, statement, witness: Optional[Witness] = None, transport=None,
                rng=None, config: SessionConfig = SessionConfig(),
                prover: Optional[Party] = None, verifier: Optional[Party] = None) -> Transcript:
    """Run one session in-process and return its transcript.

    ``transport`` is any object with ``send(msg) -> bytes`` and
    ``recv() -> (msg, bytes)`` that delivers in order; by default a
    :class:`ChannelLink` over a :class:`LossyChannel` built from
    ``config.channel``.  Pass ``prover`` to substitute e.g. a cheating one.
    Raises :class:`SessionFailure` if the transport gives up.
    """
    info = protocol_info(protocol)
    if not isinstance(statement, info.statement_type):
        raise ParameterError(f"{protocol} needs a {info.statement_type.__name__}")
    prover_rng, verifier_rng = split_rng(rng)
    if prover is None:
        if witness is None:
            raise ParameterError("need a witness or a prover")
        prover = make_prover(protocol, statement, witness, prover_rng, config)
    if verifier is None:
        verifier = make_verifier(protocol, statement, verifier_rng, config)
    if transport is None:
        transport = ChannelLink(LossyChannel(config.channel), statement.curve)

    transcript = Transcript(protocol, prover_ledger=prover.ledger, verifier_ledger=verifier.ledger)
    transcript.channel = getattr(getattr(transport, "channel", None), "stats", None)
    parties = {Direction.PROVER: prover, Direction.VERIFIER: verifier}
    pending = deque((Direction.PROVER, m) for m in prover.start())
    pending.extend((Direction.VERIFIER, m) for m in verifier.start())
    try:
        while pending:
            direction, msg = pending.popleft()
            sender = parties[direction]
            receiver = parties[Direction(1 - direction)]
            data = transport.send(msg)
            sender.ledger.sent(len(data))
            got, raw = transport.recv()
            receiver.ledger.received(len(raw))
            transcript.records.append((direction, got))
            pending.extend((receiver.role, m) for m in receiver.receive(got))
    except TransportError as exc:
        transcript.verdict = Verdict.PENDING
        raise SessionFailure(f"{protocol} session aborted: {exc}", transcript) from exc
    finally:
        transcript.frames = list(getattr(transport, "frames_per_message", []))
    transcript.verdict, transcript.reason = verifier.verdict, verifier.reason
    return transcript


def run_party(party: Party, link) -> list:
    """Run one side of a session over a link whose peer is remote.

    Returns the (direction, message) records seen from this side.
    """
    records = []
    out = party.start()
    while True:
        for msg in out:
            data = link.send(msg)
            party.ledger.sent(len(data))
            records.append((party.role, msg))
        if party.done:
            return records
        msg, raw = link.recv()
        party.ledger.received(len(raw))
        records.append((Direction(1 - party.role), msg))
        out = party.receive(msg)


def replay_transcript(protocol: str, statement, records, rounds: Optional[int] = None):
    """Re-run a fresh verifier against recorded prover messages.

    Challenges (or coins) are taken from the record.  Returns
    ``(verdict, reason)``; if the replayed verifier would have sent anything
    other than what was recorded, the verdict is a reject with
    ``TRANSCRIPT_MISMATCH``.
    """
    info = protocol_info(protocol)
    sent_by_verifier = [m for d, m in records if d == Direction.VERIFIER]
    if info.challenge_modes:
        if protocol == "coinflip":
            script = [m.bit for m in sent_by_verifier if isinstance(m, CoinMsg)]
            rounds = rounds or max(len(script), 1)
        else:
            script = [m.value for m in sent_by_verifier if isinstance(m, ScalarMsg)]
        config = SessionConfig(rounds=rounds or DEFAULT_ROUNDS, challenge_mode="script")
        verifier = make_verifier(protocol, statement, config=config, script=script)
    else:
        verifier = info.verifier(statement)

    replayed = list(verifier.start())
    try:
        for direction, msg in records:
            if direction == Direction.PROVER:
                replayed.extend(verifier.receive(msg))
    except ProtocolOrderError:
        return Verdict.REJECT, Reason.TRANSCRIPT_MISMATCH
    if not verifier.done or replayed != sent_by_verifier:
        return Verdict.REJECT, Reason.TRANSCRIPT_MISMATCH
    return verifier.verdict, verifier.reason


# -- instances and statement files -----------------------------------------


def make_instance(protocol: str, rng=None, curve: Curve = PAPER_B163):
    """A random true statement for ``protocol`` together with its witness."""
    info = protocol_info(protocol)
    rng = rng if rng is not None else random.SystemRandom()
    G, n = curve.G, curve.n
    x = sc_random(rng, n)
    B = curve.mul(x, G)
    if info.statement_type is DLStatement:
        return DLStatement(B, curve), Witness(x)
    if info.statement_type is SignatureStatement:
        return SignatureStatement(B, curve.mul(sc_random(rng, n), G), curve), Witness(x)
    H = curve.mul(sc_random(rng, n), G)
    if info.statement_type is DLEqStatement:
        return DLEqStatement(H, B, curve.mul(x, H), curve), Witness(x)
    h = 1 if rng.getrandbits(1) else -1
    signed_H = H if h == 1 else curve.neg(H)
    return SingleBitStatement(H, curve.add(B, signed_H), curve), Witness(x, h)


_STATEMENT_FIELDS = {
    DLStatement: ("B",),
    SignatureStatement: ("B", "P"),
    DLEqStatement: ("H", "B", "C"),
    SingleBitStatement: ("H", "B"),
}


def statement_to_text(statement) -> str:
    curve = statement.curve
    lines = [f"curve = {curve.name}"]
    for name in _STATEMENT_FIELDS[type(statement)]:
        lines.append(f"{name} = {curve.encode_point(getattr(statement, name)).hex()}")
    return "\n".join(lines) + "\n"


def statement_from_text(protocol: str, text: str, curve: Curve = PAPER_B163):
    info = protocol_info(protocol)
    values = {}
    for line in text.splitlines():
        key, sep, value = line.partition("=")
        if sep:
            values[key.strip()] = value.strip()
    if values.get("curve", curve.name) != curve.name:
        raise ParameterError(f"statement is for curve {values['curve']!r}, not {curve.name!r}")
    points = {}
    for name in _STATEMENT_FIELDS[info.statement_type]:
        if name not in values:
            raise DecodeError(f"statement file has no {name}")
        try:
            raw = bytes.fromhex(values[name])
        except ValueError:
            raise DecodeError(f"{name} is not hex") from None
        points[name] = curve.decode_point(raw)
    return info.statement_type(curve=curve, **points)


def load_transcript(data: bytes, curve: Curve = PAPER_B163) -> list:
    return [(Direction(d), m) for d, m in load_records(data, curve)]
