"""Schnorr identification and its Fiat-Shamir signature form.

Interactive: A = r*G, challenge c, response m = r + c*x, check
m*G - c*B == A.  In ``hash`` challenge mode the verifier derives
c = H(G, B, A) and derives it again when checking instead of keeping it.

Signature: one message s || x*P || r*P || r*G with c = H(x*P, r*P, r*G).
Note that it hands out x*P, so P must be a point whose discrete log
nobody knows; the format is kept as is for compatibility.
"""

from __future__ import annotations

from ..hashing import sha1
from ..scalar import sc_inv, sc_random
from ..wire import FinalMsg, PointMsg, ScalarMsg, SignatureMsg
from .base import DLStatement, Prover, Reason, SignatureStatement, Verdict, Verifier, Witness


class SchnorrProver(Prover):
    def __init__(self, statement: DLStatement, witness: Witness, rng=None, nonces=None,
                 check_witness: bool = True):
        super().__init__(statement, rng, nonces)
        if check_witness:
            self._check_witness(self.curve.mul(witness.x, self.curve.G) == statement.B)
        self.witness = witness
        self._r = None

    def _start(self):
        return [self.commit()]

    def commit(self) -> PointMsg:
        self._require(self._r is None, "commitment already made")
        self._r = self.ops.random_scalar()
        self._wait(ScalarMsg, self.respond)
        return PointMsg(self.ops.mul(self._r, self.curve.G))

    def respond(self, challenge: ScalarMsg) -> list:
        self._require(self._r is not None, "no outstanding commitment")
        r, self._r = self._r, None
        m = self.ops.sc_add(r, self.ops.sc_mul(challenge.value, self.witness.x))
        self._wait(FinalMsg, self._on_final)
        return [ScalarMsg(m)]


class SchnorrVerifier(Verifier):
    def __init__(self, statement: DLStatement, rng=None, challenge_mode: str = "random",
                 script=None, hash_fn=sha1):
        super().__init__(statement, rng, challenge_mode, script, hash_fn)
        self._A = None
        self._c = None

    def _start(self):
        self._wait(PointMsg, self.challenge)
        return []

    def _hash_input(self):
        return [self.curve.G, self.statement.B, self._A]

    def challenge(self, msg: PointMsg) -> list:
        self._require(self._A is None, "commitment already received")
        self._A = msg.point
        self._c = self._draw_challenge(self._hash_input())
        self._wait(ScalarMsg, self.check)
        return [ScalarMsg(self._c)]

    def check(self, msg: ScalarMsg) -> list:
        self._require(self._A is not None, "no challenge outstanding")
        c = self.ops.challenge(self._hash_input()) if self.challenge_mode == "hash" else self._c
        P = self.ops.sub(self.ops.mul(msg.value, self.curve.G), self.ops.mul(c, self.statement.B))
        return self._finish(P == self._A, Reason.RESPONSE_CHECK)


def extract_witness(c1: int, m1: int, c2: int, m2: int, n: int) -> int:
    """x from two accepting responses to distinct challenges on one commitment."""
    if (c1 - c2) % n == 0:
        raise ValueError("challenges must differ")
    return (m1 - m2) * sc_inv(c1 - c2, n) % n


def simulate_schnorr(statement: DLStatement, rng=None) -> tuple[PointMsg, ScalarMsg, ScalarMsg]:
    """Accepting (A, c, m) built without the witness: pick c, m, solve for A."""
    curve = statement.curve
    c = sc_random(rng, curve.n)
    m = sc_random(rng, curve.n)
    A = curve.sub(curve.mul(m, curve.G), curve.mul(c, statement.B))
    return PointMsg(A), ScalarMsg(c), ScalarMsg(m)


class SignatureProver(Prover):
    def __init__(self, statement: SignatureStatement, witness: Witness, rng=None, nonces=None,
                 check_witness: bool = True):
        super().__init__(statement, rng, nonces)
        if check_witness:
            self._check_witness(self.curve.mul(witness.x, self.curve.G) == statement.B)
        self.witness = witness

    def _start(self):
        sig = self.sign()
        self._wait(FinalMsg, self._on_final)
        return [sig]

    def sign(self) -> SignatureMsg:
        ops, G, P, x = self.ops, self.curve.G, self.statement.P, self.witness.x
        r = ops.random_scalar()
        rG = ops.mul(r, G)
        rP = ops.mul(r, P)
        xP = ops.mul(x, P)
        c = ops.challenge([xP, rP, rG])
        return SignatureMsg(ops.sc_add(r, ops.sc_mul(c, x)), xP, rP, rG)


class SignatureVerifier(Verifier):
    def _start(self):
        self._wait(SignatureMsg, self.check)
        return []

    def check(self, sig: SignatureMsg) -> list:
        ops, G = self.ops, self.curve.G
        B, P = self.statement.B, self.statement.P
        c = ops.challenge([sig.xP, sig.rP, sig.rG])
        # every product is computed so the cost does not depend on the outcome
        g_ok = ops.mul(sig.s, G) == ops.add(sig.rG, ops.mul(c, B))
        p_ok = ops.mul(sig.s, P) == ops.add(sig.rP, ops.mul(c, sig.xP))
        if not g_ok:
            return self._finish(False, Reason.SIGNATURE_G_CHECK)
        return self._finish(p_ok, Reason.SIGNATURE_P_CHECK)


def schnorr_sign(statement: SignatureStatement, witness: Witness, rng=None,
                 nonce=None) -> SignatureMsg:
    prover = SignatureProver(statement, witness, rng, None if nonce is None else [nonce])
    return prover.sign()


def schnorr_verify_signature(statement: SignatureStatement, sig: SignatureMsg) -> tuple[Verdict, Reason]:
    verifier = SignatureVerifier(statement)
    verifier.start()
    verifier.receive(sig)
    return verifier.verdict, verifier.reason
