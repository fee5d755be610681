"""Zero-knowledge proof protocols as prover/verifier state machines."""

from .base import (CHALLENGE_MODES, DLEqStatement, DLStatement, Direction, Ops, Party, Prover,
                   Reason, SignatureStatement, SingleBitStatement, Verdict, Verifier, Witness)
from .coinflip import (DEFAULT_ROUNDS, HEADS, TAILS, CheatingCoinflipProver, CoinflipProver,
                       CoinflipVerifier)
from .dleq import DLEqNIProver, DLEqNIVerifier, DLEqProver, DLEqVerifier
from .schnorr import (SchnorrProver, SchnorrVerifier, SignatureProver, SignatureVerifier,
                      extract_witness, schnorr_sign, schnorr_verify_signature, simulate_schnorr)
from .session import (PROTOCOLS, ProtocolInfo, SessionConfig, Transcript, load_transcript,
                      make_instance, make_prover, make_verifier, protocol_info, replay_transcript,
                      run_party, run_session, statement_from_text, statement_to_text)
from .singlebit import SingleBitProver, SingleBitVerifier

__all__ = [name for name in dir() if not name.startswith("_")]
