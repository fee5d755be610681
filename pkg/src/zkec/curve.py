"""Elliptic-curve group law over GF(2^m) in affine coordinates.

Curves have the form ``y^2 + xy = x^3 + a x^2 + b``.  Points carry raw
field ints; the curve object owns all arithmetic.  Scalar multiplication
is left-to-right double-and-add, except that multiples of the base point
go through a lazily built table of ``j * 256^i * G`` (the same sum, just
without the doublings).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .errors import DecodeError, ParameterError, ValidationError
from .gf2m import B163, FieldParams
from .scalar import ORDER, sc_random

_WINDOW = 8


@dataclass(frozen=True, slots=True)
class Point:
    x: Optional[int]
    y: Optional[int]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        if self.x is None:
            return "Point(O)"
        return f"Point({self.x:#x}, {self.y:#x})"


INFINITY = Point(None, None)


@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: Point


class Curve:
    """Curve parameters plus the group operations on them."""

    def __init__(self, name: str, field: FieldParams, a: int, b: int,
                 G: Point, n: int):
        self.name = name
        self.field = field
        self.a = a
        self.b = b
        self.G = G
        self.n = n
        if b == 0:
            raise ParameterError("b = 0 gives a singular curve")
        if a >> field.m or b >> field.m:
            raise ParameterError("curve coefficients are not reduced field elements")
        if G.is_infinity or not self.contains(G):
            raise ParameterError(f"{name}: base point is not on the curve")
        if not self._mul_plain(n, G).is_infinity:
            raise ParameterError(f"{name}: n * G is not the point at infinity")
        self._table = None

    def __repr__(self) -> str:
        return f"Curve({self.name!r}, m={self.field.m})"

    @property
    def coord_len(self) -> int:
        return self.field.byte_len

    @property
    def point_len(self) -> int:
        return 2 * self.field.byte_len

    @property
    def scalar_len(self) -> int:
        return (self.n.bit_length() + 7) // 8

    # -- membership ------------------------------------------------------

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        F = self.field
        x, y = P.x, P.y
        if x < 0 or y < 0 or x >> F.m or y >> F.m:
            return False
        x2 = F.sqr(x)
        lhs = F.sqr(y) ^ F.mul(x, y)
        rhs = F.mul(x2, x) ^ F.mul(self.a, x2) ^ self.b
        return lhs == rhs

    def require(self, *points: Point) -> None:
        for P in points:
            if not isinstance(P, Point) or not self.contains(P):
                raise ValidationError(f"{P!r} is not on {self.name}")

    # -- group law -------------------------------------------------------

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, P.x ^ P.y)

    def add(self, P: Point, Q: Point) -> Point:
        self.require(P, Q)
        return self._add(P, Q)

    def sub(self, P: Point, Q: Point) -> Point:
        self.require(P, Q)
        return self._add(P, self.neg(Q))

    def double(self, P: Point) -> Point:
        self.require(P)
        return self._double(P)

    def _double(self, P: Point) -> Point:
        if P.is_infinity or P.x == 0:
            # (0, y) is its own negative
            return INFINITY
        F = self.field
        x1, y1 = P.x, P.y
        lam = x1 ^ F.mul(y1, F.inv(x1))
        x3 = F.sqr(lam) ^ lam ^ self.a
        y3 = F.sqr(x1) ^ F.mul(lam ^ 1, x3)
        return Point(x3, y3)

    def _add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 == y2:
                return self._double(P)
            return INFINITY
        F = self.field
        dx = x1 ^ x2
        lam = F.mul(y1 ^ y2, F.inv(dx))
        x3 = F.sqr(lam) ^ lam ^ dx ^ self.a
        y3 = F.mul(lam, x1 ^ x3) ^ x3 ^ y1
        return Point(x3, y3)

    def mul(self, k: int, P: Point) -> Point:
        """k * P for any integer k."""
        self.require(P)
        if k < 0:
            k, P = -k, self.neg(P)
        if P == self.G:
            return self._mul_base(k % self.n)
        return self._mul_plain(k, P)

    def _mul_plain(self, k: int, P: Point) -> Point:
        R = INFINITY
        for bit in bin(k)[2:] if k else "":
            R = self._double(R)
            if bit == "1":
                R = self._add(R, P)
        return R

    def _mul_base(self, k: int) -> Point:
        if self._table is None:
            self._table = self._build_table()
        terms = []
        i = 0
        while k:
            j = k & 0xFF
            if j:
                terms.append(self._table[i][j])
            k >>= _WINDOW
            i += 1
        return self._sum(terms)

    def _sum(self, points: list) -> Point:
        """Sum affine points pairwise, one shared inversion per tree level."""
        F = self.field
        while len(points) > 1:
            pairs = [(points[i], points[i + 1]) for i in range(0, len(points) - 1, 2)]
            out = [points[-1]] if len(points) % 2 else []
            # Montgomery's trick: invert the product of all x-differences once
            easy = [P.x != Q.x and not P.is_infinity and not Q.is_infinity for P, Q in pairs]
            prefix = [1]
            for (P, Q), ok in zip(pairs, easy):
                prefix.append(F.mul(prefix[-1], P.x ^ Q.x) if ok else prefix[-1])
            inv = F.inv(prefix[-1])
            sums = [None] * len(pairs)
            for idx in range(len(pairs) - 1, -1, -1):
                P, Q = pairs[idx]
                if not easy[idx]:
                    sums[idx] = self._add(P, Q)
                    continue
                dx = P.x ^ Q.x
                inv_dx = F.mul(inv, prefix[idx])
                inv = F.mul(inv, dx)
                lam = F.mul(P.y ^ Q.y, inv_dx)
                x3 = F.sqr(lam) ^ lam ^ dx ^ self.a
                sums[idx] = Point(x3, F.mul(lam, P.x ^ x3) ^ x3 ^ P.y)
            points = sums + out
        return points[0] if points else INFINITY

    def _build_table(self):
        windows = -(-self.n.bit_length() // _WINDOW)
        table = []
        base = self.G
        for _ in range(windows):
            row = [INFINITY, base]
            for _ in range(2, 1 << _WINDOW):
                row.append(self._add(row[-1], base))
            table.append(row)
            base = self._add(row[-1], base)
        return table

    # -- keys and codec --------------------------------------------------

    def keygen(self, rng=None) -> KeyPair:
        sk = sc_random(rng, self.n)
        return KeyPair(sk, self.mul(sk, self.G))

    def encode_point(self, P: Point) -> bytes:
        """x || y big-endian; the point at infinity is all zero bytes.

        (0, 0) can never be on a curve with b != 0, so the zero string is
        unambiguous.
        """
        if P.is_infinity:
            return bytes(self.point_len)
        F = self.field
        return F.to_bytes(P.x) + F.to_bytes(P.y)

    def decode_point(self, data: bytes) -> Point:
        if len(data) != self.point_len:
            raise DecodeError(f"point needs {self.point_len} bytes, got {len(data)}")
        if not any(data):
            return INFINITY
        half = self.coord_len
        F = self.field
        P = Point(F.from_bytes(data[:half]), F.from_bytes(data[half:]))
        if not self.contains(P):
            raise ValidationError("decoded point is not on the curve")
        return P


PAPER_B163 = Curve(
    "paper-b163",
    B163,
    a=1,
    b=1,
    G=Point(0x2FE13C0537BBC11ACAA07D793DE4E6D5E5C94EEE8,
            0x289070FB05D38FF58321F2E800536D538CCDAA3D9),
    n=ORDER,
)

# Same equation over GF(2^5); 22 points, G generates the order-11 subgroup.
TOY_B5 = Curve(
    "toy-b5",
    FieldParams(5, {5, 2, 0}),
    a=1,
    b=1,
    G=Point(0b01000, 0b10111),
    n=11,
)

CURVES = {c.name: c for c in (PAPER_B163, TOY_B5)}

DEFAULT_CURVE_ENV = "ZKEC_CURVE"


def get_curve(name: Optional[str] = None) -> Curve:
    """Look up a registered curve; ``None`` honours ``$ZKEC_CURVE``."""
    if name is None:
        name = os.environ.get(DEFAULT_CURVE_ENV, PAPER_B163.name)
    try:
        return CURVES[name]
    except KeyError:
        raise ParameterError(f"unknown curve {name!r}; known: {sorted(CURVES)}") from None


def point_add(P: Point, Q: Point, curve: Curve = PAPER_B163) -> Point:
    return curve.add(P, Q)


def scalar_mul(k: int, P: Point, curve: Curve = PAPER_B163) -> Point:
    return curve.mul(k, P)


def keygen(rng=None, curve: Curve = PAPER_B163) -> KeyPair:
    return curve.keygen(rng)


def point_to_bytes(P: Point, curve: Curve = PAPER_B163) -> bytes:
    return curve.encode_point(P)


def point_from_bytes(data: bytes, curve: Curve = PAPER_B163) -> Point:
    return curve.decode_point(data)
