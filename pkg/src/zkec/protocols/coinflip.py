"""Multi-round proof of a discrete log where each round hinges on a coin toss.

Per round: prover commits A = r*G; the verifier tosses a coin; on heads the
prover opens r, on tails it sends m = x + r.  A prover without x can be
ready for one face only, so k rounds leave it a 2^-k chance.  The verifier
sends a verdict byte after every round.
"""

from __future__ import annotations

from ..wire import CoinMsg, FinalMsg, PointMsg, ScalarMsg
from .base import DLStatement, Prover, Reason, Verifier, Witness

HEADS = 0
TAILS = 1
DEFAULT_ROUNDS = 100


class CoinflipProver(Prover):
    def __init__(self, statement: DLStatement, witness: Witness, rounds: int = DEFAULT_ROUNDS,
                 rng=None, nonces=None, check_witness: bool = True):
        super().__init__(statement, rng, nonces)
        if rounds < 1:
            raise ValueError("need at least one round")
        if check_witness:
            self._check_witness(self.curve.mul(witness.x, self.curve.G) == statement.B)
        self.witness = witness
        self.rounds = rounds
        self.round = 0
        self._r = None

    def _start(self):
        return [self.commit()]

    def commit(self) -> PointMsg:
        self._require(self._r is None and not self.done, "commitment already outstanding")
        self._r = self.ops.random_scalar()
        self._wait(CoinMsg, self.respond)
        return PointMsg(self.ops.mul(self._r, self.curve.G))

    def respond(self, coin: CoinMsg) -> list:
        self._require(self._r is not None, "no outstanding commitment")
        r, self._r = self._r, None
        value = r if coin.bit == HEADS else self.ops.sc_add(self.witness.x, r)
        self._wait(FinalMsg, self._on_round_end)
        return [ScalarMsg(value)]

    def _on_round_end(self, msg: FinalMsg) -> list:
        if not msg.accept:
            self._settle(False)
            return []
        self.round += 1
        if self.round == self.rounds:
            self._settle(True)
            return []
        return [self.commit()]


class CheatingCoinflipProver(CoinflipProver):
    """Knows no witness; bets on tails every round.

    It picks m, announces A = m*G - B and answers m whatever the coin says,
    which only satisfies the tails check.
    """

    def __init__(self, statement: DLStatement, rounds: int = DEFAULT_ROUNDS, rng=None):
        super().__init__(statement, Witness(0), rounds, rng, check_witness=False)
        self._m = None

    def commit(self) -> PointMsg:
        self._require(self._r is None and not self.done, "commitment already outstanding")
        self._m = self.ops.random_scalar()
        self._r = True  # marks the outstanding commitment
        self._wait(CoinMsg, self.respond)
        return PointMsg(self.ops.sub(self.ops.mul(self._m, self.curve.G), self.statement.B))

    def respond(self, coin: CoinMsg) -> list:
        self._require(self._r is not None, "no outstanding commitment")
        self._r = None
        self._wait(FinalMsg, self._on_round_end)
        return [ScalarMsg(self._m)]


class CoinflipVerifier(Verifier):
    """Challenge modes: ``random`` tosses coins, ``script`` replays given bits."""

    def __init__(self, statement: DLStatement, rounds: int = DEFAULT_ROUNDS, rng=None,
                 challenge_mode: str = "random", script=None):
        if challenge_mode == "hash":
            raise ValueError("the coin-flip verifier has no hash challenge")
        super().__init__(statement, rng, challenge_mode, script)
        if rounds < 1:
            raise ValueError("need at least one round")
        self.rounds = rounds
        self.round = 0
        self._A = None
        self._coin = None

    def _start(self):
        self._wait(PointMsg, self.flip)
        return []

    def flip(self, msg: PointMsg) -> list:
        self._require(self._coin is None, "coin already tossed")
        self._A = msg.point
        if self.challenge_mode == "script":
            self._coin = self._scripted() & 1
        else:
            self._coin = self.ops.coin()
        self._wait(ScalarMsg, self.check)
        return [CoinMsg(self._coin)]

    def check(self, msg: ScalarMsg) -> list:
        self._require(self._coin is not None, "no coin outstanding")
        ops, G = self.ops, self.curve.G
        lhs = ops.mul(msg.value, G)
        if self._coin == HEADS:
            ok, reason = lhs == self._A, Reason.HEADS_CHECK
        else:
            ok, reason = lhs == ops.add(self._A, self.statement.B), Reason.TAILS_CHECK
        self._A = self._coin = None
        if not ok:
            return self._finish(False, reason)
        self.round += 1
        if self.round == self.rounds:
            return self._finish(True, Reason.OK)
        self._wait(PointMsg, self.flip)
        return [FinalMsg(True)]
