"""Exception hierarchy shared by every zkec module."""


class ZkecError(Exception):
    """Base class for all library errors."""


class ParameterError(ZkecError, ValueError):
    """Mismatched or out-of-range parameters (field, curve, profile)."""


class DecodeError(ZkecError, ValueError):
    """Bytes that do not parse as the expected encoding."""


class ValidationError(ZkecError, ValueError):
    """A point that does not lie on the curve it is used with."""


class InvalidWitnessError(ZkecError, ValueError):
    """Prover witness does not satisfy the public statement."""


class ProtocolOrderError(ZkecError, RuntimeError):
    """A protocol step was invoked out of sequence or after termination."""


class TransportError(ZkecError):
    """A frame could not be delivered within the retry budget."""


class SessionFailure(TransportError):
    """A protocol session aborted because its transport gave up.

    Distinct from a verifier rejection: no verdict was reached.
    """

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript
