"""Shared machinery for prover/verifier state machines.

Each party is a small object that consumes one inbound message at a time
through :meth:`Party.receive` and returns the messages it wants sent.
Calls that arrive in the wrong state raise :class:`ProtocolOrderError`;
once a verdict is reached the party refuses further input.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from ..costmodel import CostLedger
from ..curve import PAPER_B163, Curve, Point
from ..errors import InvalidWitnessError, ParameterError, ProtocolOrderError, ValidationError
from ..hashing import HashFn, challenge_from_points, sha1
from ..scalar import sc_random
from ..wire import FinalMsg

CHALLENGE_MODES = ("random", "hash", "script")


class Verdict(enum.Enum):
    PENDING = "pending"
    ACCEPT = "accept"
    REJECT = "reject"


class Reason(enum.Enum):
    """Which check decided a verdict; never goes on the wire."""

    OK = "ok"
    HEADS_CHECK = "r*G != A"
    TAILS_CHECK = "m*G != A + B"
    RESPONSE_CHECK = "m*G - c*B != A"
    SIGNATURE_G_CHECK = "s*G != rG + c*B"
    SIGNATURE_P_CHECK = "s*P != rP + c*xP"
    DLEQ_G_CHECK = "m*G != K + c*B"
    DLEQ_H_CHECK = "m*H != L + c*C"
    CHALLENGE_SPLIT = "d + e != c"
    FIRST_BRANCH = "s*G != A + d*(B+H)"
    SECOND_BRANCH = "t*G != C + e*(B-H)"
    INVALID_POINT = "point not on curve"
    PEER_REJECTED = "verifier sent reject"
    TRANSCRIPT_MISMATCH = "recorded verifier messages differ from replay"


class Direction(enum.IntEnum):
    PROVER = 0  # sent by the prover
    VERIFIER = 1


# -- statements ------------------------------------------------------------


def _check_points(curve: Curve, **points: Point) -> None:
    for name, P in points.items():
        if not isinstance(P, Point) or not curve.contains(P):
            raise ValidationError(f"{name} is not a point on {curve.name}")


@dataclass(frozen=True)
class DLStatement:
    """Knowledge of x with B = x*G."""

    B: Point
    curve: Curve = PAPER_B163

    def validate(self) -> None:
        _check_points(self.curve, B=self.B)


@dataclass(frozen=True)
class SignatureStatement:
    """DL statement bound to a message point P."""

    B: Point
    P: Point
    curve: Curve = PAPER_B163

    def validate(self) -> None:
        _check_points(self.curve, B=self.B, P=self.P)
        if self.P.is_infinity:
            raise ValidationError("message point must not be the point at infinity")


@dataclass(frozen=True)
class DLEqStatement:
    """The same x with B = x*G and C = x*H."""

    H: Point
    B: Point
    C: Point
    curve: Curve = PAPER_B163

    def validate(self) -> None:
        _check_points(self.curve, H=self.H, B=self.B, C=self.C)
        if self.H.is_infinity:
            raise ValidationError("H must not be the point at infinity")


@dataclass(frozen=True)
class SingleBitStatement:
    """B = x*G + h*H for some x and a sign h in {+1, -1}."""

    H: Point
    B: Point
    curve: Curve = PAPER_B163

    def validate(self) -> None:
        _check_points(self.curve, H=self.H, B=self.B)
        if self.H.is_infinity:
            raise ValidationError("H must not be the point at infinity")


@dataclass(frozen=True)
class Witness:
    x: int
    h: int = 1  # sign bit, single-bit proofs only

    def __post_init__(self):
        if self.h not in (1, -1):
            raise ParameterError("sign must be +1 or -1")


# -- counted operations ----------------------------------------------------


class Ops:
    """Curve and scalar arithmetic that tallies into a :class:`CostLedger`.

    ``nonces`` lets tests pin the random scalars a party draws; once it
    runs dry, draws fall back to ``rng``.
    """

    def __init__(self, curve: Curve, ledger: CostLedger, rng=None,
                 nonces: Optional[Iterable[int]] = None, hash_fn: HashFn = sha1):
        self.curve = curve
        self.ledger = ledger
        self.rng = rng if rng is not None else random.SystemRandom()
        self._nonces: Iterator[int] = iter(nonces or ())
        self.hash_fn = hash_fn

    def random_scalar(self) -> int:
        self.ledger.count("keygen")
        for k in self._nonces:
            return k % self.curve.n
        return sc_random(self.rng, self.curve.n)

    def coin(self) -> int:
        return self.rng.getrandbits(1)

    def mul(self, k: int, P: Point) -> Point:
        self.ledger.count("point_mul")
        return self.curve.mul(k, P)

    def add(self, P: Point, Q: Point) -> Point:
        self.ledger.count("point_add")
        return self.curve.add(P, Q)

    def sub(self, P: Point, Q: Point) -> Point:
        self.ledger.count("point_add")
        return self.curve.sub(P, Q)

    def sc_add(self, a: int, b: int) -> int:
        self.ledger.count("scalar_add")
        return (a + b) % self.curve.n

    def sc_sub(self, a: int, b: int) -> int:
        self.ledger.count("scalar_add")
        return (a - b) % self.curve.n

    def sc_mul(self, a: int, b: int) -> int:
        self.ledger.count("scalar_mul")
        return a * b % self.curve.n

    def challenge(self, points: Sequence[Point]) -> int:
        self.ledger.count("hash")
        return challenge_from_points(points, self.curve, self.hash_fn)


# -- parties ---------------------------------------------------------------


class Party:
    role: Direction

    def __init__(self, statement, rng=None, nonces=None, hash_fn: HashFn = sha1):
        statement.validate()
        self.statement = statement
        self.curve: Curve = statement.curve
        self.ledger = CostLedger()
        self.ops = Ops(self.curve, self.ledger, rng, nonces, hash_fn)
        self.verdict = Verdict.PENDING
        self.reason = Reason.OK
        self._started = False
        self._expect: Optional[tuple[type, Callable]] = None

    @property
    def done(self) -> bool:
        return self.verdict is not Verdict.PENDING

    def start(self) -> list:
        """Messages this party sends before hearing anything."""
        if self._started:
            raise ProtocolOrderError(f"{type(self).__name__} already started")
        self._started = True
        return self._start()

    def _start(self) -> list:
        return []

    def receive(self, msg) -> list:
        if self.done:
            raise ProtocolOrderError(f"{type(self).__name__} has already finished")
        if not self._started:
            raise ProtocolOrderError(f"{type(self).__name__} has not been started")
        if self._expect is None or not isinstance(msg, self._expect[0]):
            wanted = self._expect[0].__name__ if self._expect else "nothing"
            raise ProtocolOrderError(f"expected {wanted}, got {type(msg).__name__}")
        handler = self._expect[1]
        self._expect = None
        return handler(msg)

    def _wait(self, msg_type: type, handler: Callable) -> None:
        self._expect = (msg_type, handler)

    def _require(self, cond: bool, what: str) -> None:
        if not cond:
            raise ProtocolOrderError(f"{type(self).__name__}: {what}")


class Prover(Party):
    role = Direction.PROVER

    def _check_witness(self, ok: bool) -> None:
        if not ok:
            raise InvalidWitnessError("witness does not satisfy the statement")

    def _on_final(self, msg: FinalMsg) -> list:
        self._settle(msg.accept)
        return []

    def _settle(self, accepted: bool) -> None:
        self.verdict = Verdict.ACCEPT if accepted else Verdict.REJECT
        self.reason = Reason.OK if accepted else Reason.PEER_REJECTED


class Verifier(Party):
    role = Direction.VERIFIER

    def __init__(self, statement, rng=None, challenge_mode: str = "random",
                 script: Optional[Iterable[int]] = None, hash_fn: HashFn = sha1):
        super().__init__(statement, rng, hash_fn=hash_fn)
        if challenge_mode not in CHALLENGE_MODES:
            raise ParameterError(f"challenge mode must be one of {CHALLENGE_MODES}")
        if challenge_mode == "script" and script is None:
            raise ParameterError("script mode needs a challenge script")
        self.challenge_mode = challenge_mode
        self._script = iter(script or ())

    def receive(self, msg) -> list:
        # messages straight off the codec are validated already; this
        # catches off-curve points handed in directly
        try:
            return super().receive(msg)
        except ValidationError:
            return self._finish(False, Reason.INVALID_POINT)

    def _scripted(self) -> int:
        try:
            return next(self._script)
        except StopIteration:
            raise ProtocolOrderError("challenge script exhausted") from None

    def _draw_challenge(self, hash_points: Sequence[Point]) -> int:
        if self.challenge_mode == "hash":
            return self.ops.challenge(hash_points)
        if self.challenge_mode == "script":
            return self._scripted() % self.curve.n
        return self.ops.random_scalar()

    def _finish(self, ok: bool, reason: Reason) -> list:
        self.verdict = Verdict.ACCEPT if ok else Verdict.REJECT
        self.reason = Reason.OK if ok else reason
        return [FinalMsg(ok)]
