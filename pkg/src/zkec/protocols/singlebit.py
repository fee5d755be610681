"""Proof that B = x*G + h*H with h = +1 or -1, hiding both x and h.

An OR-proof over the two candidate statements ``B - H = x*G`` and
``B + H = x*G``.  The prover simulates the branch that is false for its
sign and proves the true one, splitting the challenge as c = d + e.  For
h = -1 it swaps the commitments and the response pairs, so the verifier
always checks the first point against B+H and the second against B-H in
the order they were sent.
"""

from __future__ import annotations

from ..hashing import sha1
from ..wire import FinalMsg, QuadScalarMsg, ScalarMsg, TwoPointMsg
from .base import Prover, Reason, SingleBitStatement, Verifier, Witness


class SingleBitProver(Prover):
    def __init__(self, statement: SingleBitStatement, witness: Witness, rng=None, nonces=None,
                 check_witness: bool = True):
        super().__init__(statement, rng, nonces)
        if check_witness:
            curve = self.curve
            signed_H = statement.H if witness.h == 1 else curve.neg(statement.H)
            expected = curve.add(curve.mul(witness.x, curve.G), signed_H)
            self._check_witness(expected == statement.B)
        self.witness = witness
        self._secrets = None

    def _start(self):
        return [self.commit()]

    def commit(self) -> TwoPointMsg:
        self._require(self._secrets is None, "commitment already made")
        ops, G, st, h = self.ops, self.curve.G, self.statement, self.witness.h
        s, d, w = ops.random_scalar(), ops.random_scalar(), ops.random_scalar()
        # the branch this sign cannot prove gets simulated
        other = ops.add(st.B, st.H) if h == 1 else ops.sub(st.B, st.H)
        A = ops.sub(ops.mul(s, G), ops.mul(d, other))
        C = ops.mul(w, G)
        self._secrets = (s, d, w)
        self._wait(ScalarMsg, self.respond)
        return TwoPointMsg(A, C) if h == 1 else TwoPointMsg(C, A)

    def respond(self, challenge: ScalarMsg) -> list:
        self._require(self._secrets is not None, "no outstanding commitment")
        (s, d, w), self._secrets = self._secrets, None
        ops = self.ops
        e = ops.sc_sub(challenge.value, d)
        t = ops.sc_add(w, ops.sc_mul(self.witness.x, e))
        self._wait(FinalMsg, self._on_final)
        if self.witness.h == 1:
            return [QuadScalarMsg(d, e, s, t)]
        return [QuadScalarMsg(e, d, t, s)]


class SingleBitVerifier(Verifier):
    def __init__(self, statement: SingleBitStatement, rng=None, challenge_mode: str = "random",
                 script=None, hash_fn=sha1):
        super().__init__(statement, rng, challenge_mode, script, hash_fn)
        self._A = self._C = None
        self._c = None

    def _start(self):
        self._wait(TwoPointMsg, self.challenge)
        return []

    def challenge(self, msg: TwoPointMsg) -> list:
        self._require(self._A is None, "commitment already received")
        self._A, self._C = msg.first, msg.second
        st = self.statement
        self._c = self._draw_challenge([self.curve.G, st.H, st.B, self._A, self._C])
        self._wait(QuadScalarMsg, self.check)
        return [ScalarMsg(self._c)]

    def check(self, msg: QuadScalarMsg) -> list:
        self._require(self._A is not None, "no challenge outstanding")
        ops, G, st = self.ops, self.curve.G, self.statement
        split_ok = ops.sc_add(msg.e, msg.d) == self._c
        first_ok = ops.mul(msg.s, G) == ops.add(self._A, ops.mul(msg.d, ops.add(st.B, st.H)))
        second_ok = ops.mul(msg.t, G) == ops.add(self._C, ops.mul(msg.e, ops.sub(st.B, st.H)))
        if not split_ok:
            return self._finish(False, Reason.CHALLENGE_SPLIT)
        if not first_ok:
            return self._finish(False, Reason.FIRST_BRANCH)
        return self._finish(second_ok, Reason.SECOND_BRANCH)
