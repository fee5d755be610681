"""Zero-knowledge proofs of discrete-log knowledge on a binary elliptic curve.

Field and curve arithmetic, SHA-1 challenges, five prover/verifier
protocols, a compact wire format with a simulated lossy radio link, and an
energy model for constrained devices.
"""

from .curve import CURVES, INFINITY, PAPER_B163, TOY_B5, Curve, KeyPair, Point, get_curve
from .errors import (DecodeError, InvalidWitnessError, ParameterError, ProtocolOrderError,
                     SessionFailure, TransportError, ValidationError, ZkecError)

__version__ = "0.1.0"
