"""Proof that B = x*G and C = x*H share the same x.

Interactive: commitments K = r*G and L = r*H, challenge c, response
m = r + c*x, checks m*G == K + c*B and m*H == L + c*C.

Non-interactive: the prover sets c = H(B, G, C, H, K, L) itself and sends
(K, L) followed by m; the verifier recomputes c.  An interactive verifier
in ``hash`` mode uses the same derivation, so both forms agree on every
transcript.
"""

from __future__ import annotations

from ..hashing import sha1
from ..wire import FinalMsg, ScalarMsg, TwoPointMsg
from .base import DLEqStatement, Prover, Reason, Verifier, Witness


def _hash_points(statement: DLEqStatement, K, L):
    G = statement.curve.G
    return [statement.B, G, statement.C, statement.H, K, L]


class DLEqProver(Prover):
    def __init__(self, statement: DLEqStatement, witness: Witness, rng=None, nonces=None,
                 check_witness: bool = True, hash_fn=sha1):
        super().__init__(statement, rng, nonces, hash_fn)
        if check_witness:
            curve = self.curve
            self._check_witness(curve.mul(witness.x, curve.G) == statement.B
                                and curve.mul(witness.x, statement.H) == statement.C)
        self.witness = witness
        self._r = None

    def _start(self):
        return [self.commit()]

    def commit(self) -> TwoPointMsg:
        self._require(self._r is None, "commitment already made")
        self._r = self.ops.random_scalar()
        self._wait(ScalarMsg, self.respond)
        return TwoPointMsg(self.ops.mul(self._r, self.curve.G),
                           self.ops.mul(self._r, self.statement.H))

    def respond(self, challenge: ScalarMsg) -> list:
        self._require(self._r is not None, "no outstanding commitment")
        r, self._r = self._r, None
        m = self.ops.sc_add(r, self.ops.sc_mul(challenge.value, self.witness.x))
        self._wait(FinalMsg, self._on_final)
        return [ScalarMsg(m)]


class DLEqVerifier(Verifier):
    def __init__(self, statement: DLEqStatement, rng=None, challenge_mode: str = "random",
                 script=None, hash_fn=sha1):
        super().__init__(statement, rng, challenge_mode, script, hash_fn)
        self._K = self._L = None
        self._c = None

    def _start(self):
        self._wait(TwoPointMsg, self.challenge)
        return []

    def challenge(self, msg: TwoPointMsg) -> list:
        self._require(self._K is None, "commitment already received")
        self._K, self._L = msg.first, msg.second
        self._c = self._draw_challenge(_hash_points(self.statement, self._K, self._L))
        self._wait(ScalarMsg, self.check)
        return [ScalarMsg(self._c)]

    def check(self, msg: ScalarMsg) -> list:
        self._require(self._K is not None, "no challenge outstanding")
        return self._check(msg.value, self._c)

    def _check(self, m: int, c: int) -> list:
        ops, st = self.ops, self.statement
        g_ok = ops.mul(m, self.curve.G) == ops.add(self._K, ops.mul(c, st.B))
        h_ok = ops.mul(m, st.H) == ops.add(self._L, ops.mul(c, st.C))
        if not g_ok:
            return self._finish(False, Reason.DLEQ_G_CHECK)
        return self._finish(h_ok, Reason.DLEQ_H_CHECK)


class DLEqNIProver(DLEqProver):
    """Sends (K, L) and then m, with no challenge round trip."""

    def _start(self):
        ops = self.ops
        r = ops.random_scalar()
        K = ops.mul(r, self.curve.G)
        L = ops.mul(r, self.statement.H)
        c = ops.challenge(_hash_points(self.statement, K, L))
        m = ops.sc_add(r, ops.sc_mul(c, self.witness.x))
        self._wait(FinalMsg, self._on_final)
        return [TwoPointMsg(K, L), ScalarMsg(m)]


class DLEqNIVerifier(DLEqVerifier):
    def __init__(self, statement: DLEqStatement, rng=None, hash_fn=sha1):
        super().__init__(statement, rng, "hash", hash_fn=hash_fn)

    def _start(self):
        self._wait(TwoPointMsg, self._on_commitment)
        return []

    def _on_commitment(self, msg: TwoPointMsg) -> list:
        self._K, self._L = msg.first, msg.second
        self._wait(ScalarMsg, self.check)
        return []

    def check(self, msg: ScalarMsg) -> list:
        self._require(self._K is not None, "no commitment received")
        c = self.ops.challenge(_hash_points(self.statement, self._K, self._L))
        return self._check(msg.value, c)
