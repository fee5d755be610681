"""SHA-1 and the point-list challenge convention.

A challenge is ``SHA-1(enc(P1) || enc(P2) || ...) mod n`` where ``enc`` is
the raw 42-byte point encoding, no separators or length prefixes.  Both
sides of a non-interactive proof must agree on this byte-for-byte.
SHA-1 is broken for collision resistance; it is kept for fidelity with
the reference device implementation and can be swapped via ``hash_fn``.
"""

from __future__ import annotations

import hashlib
from typing import Callable, Sequence

from .curve import PAPER_B163, Curve, Point
from .scalar import sc_from_digest

HashFn = Callable[[bytes], bytes]


def sha1(message: bytes) -> bytes:
    return hashlib.sha1(message).digest()


def transcript_bytes(points: Sequence[Point], curve: Curve = PAPER_B163) -> bytes:
    return b"".join(curve.encode_point(P) for P in points)


def challenge_from_points(points: Sequence[Point], curve: Curve = PAPER_B163,
                          hash_fn: HashFn = sha1) -> int:
    if not points:
        raise ValueError("challenge needs at least one point")
    return sc_from_digest(hash_fn(transcript_bytes(points, curve)), curve.n)
