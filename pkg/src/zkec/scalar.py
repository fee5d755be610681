"""Integers modulo the base-point order n.

Scalars are plain ints in ``[0, n)``.  Every function takes the modulus
explicitly (defaulting to the order of the paper-b163 base point) so toy
curves can reuse them.
"""

from __future__ import annotations

import secrets

from .errors import DecodeError, ParameterError

#: order of the base point G of the default curve
ORDER = 0x04000000000000000000020108A2E0CC0D99F8A5EF

DIGEST_SIZE = 20


def byte_len(n: int = ORDER) -> int:
    return (n.bit_length() + 7) // 8


def sc_add(a: int, b: int, n: int = ORDER) -> int:
    return (a + b) % n


def sc_sub(a: int, b: int, n: int = ORDER) -> int:
    return (a - b) % n


def sc_mul(a: int, b: int, n: int = ORDER) -> int:
    return (a * b) % n


def sc_inv(a: int, n: int = ORDER) -> int:
    if a % n == 0:
        raise ZeroDivisionError("zero scalar has no inverse")
    return pow(a, -1, n)


def sc_random(rng=None, n: int = ORDER) -> int:
    """Uniform scalar in [1, n-1] by rejection sampling.

    ``rng`` is anything with a ``getrandbits`` method (``random.Random``
    for reproducible runs); the default draws from the OS CSPRNG.
    """
    if rng is None:
        rng = secrets.SystemRandom()
    bits = n.bit_length()
    while True:
        k = rng.getrandbits(bits)
        if 0 < k < n:
            return k


def sc_from_digest(digest: bytes, n: int = ORDER) -> int:
    """Big-endian integer of a 20-byte digest, reduced mod n."""
    if len(digest) != DIGEST_SIZE:
        raise ParameterError(f"digest must be {DIGEST_SIZE} bytes, got {len(digest)}")
    return int.from_bytes(digest, "big") % n


def sc_to_bytes(a: int, n: int = ORDER) -> bytes:
    if not 0 <= a < n:
        raise ParameterError("scalar out of range")
    return a.to_bytes(byte_len(n), "big")


def sc_from_bytes(data: bytes, n: int = ORDER) -> int:
    size = byte_len(n)
    if len(data) != size:
        raise DecodeError(f"scalar needs {size} bytes, got {len(data)}")
    v = int.from_bytes(data, "big")
    if v >= n:
        raise DecodeError("scalar encoding is not reduced mod n")
    return v
