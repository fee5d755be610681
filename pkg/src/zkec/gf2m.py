"""Binary field arithmetic GF(2^m).

Elements are held as Python ints whose bit ``i`` is the coefficient of
``x^i``.  :class:`FieldParams` does the arithmetic on raw ints (the curve
code works at that level for speed); :class:`FieldElement` is a typed
wrapper for callers that want operator syntax and parameter checking.

None of this is constant time.  Timing depends on operand values, so the
code must not be used where side channels matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DecodeError, ParameterError


def _spread_byte(v: int) -> int:
    r = 0
    for i in range(8):
        if v >> i & 1:
            r |= 1 << (2 * i)
    return r


# squaring in characteristic 2 just interleaves zero bits
_SQUARE_TABLE = tuple(_spread_byte(v) for v in range(256))

# Carry-less products via one integer multiply: give every bit its own byte,
# multiply, keep the low bit of each byte.  A column sums at most 255 ones
# when the shorter operand has < 256 bits, so nothing carries between bytes.
_BIT_TO_BYTE = bytes.maketrans(b"01", b"\x00\x01")
_LOW_BIT = bytes(b"01"[v & 1] for v in range(256))


def _spread_bits(a: int) -> int:
    return int.from_bytes(format(a, "b").encode().translate(_BIT_TO_BYTE), "big")


def clmul(a: int, b: int) -> int:
    """Product of two GF(2)[x] polynomials packed as ints."""
    if min(a.bit_length(), b.bit_length()) > 255:
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        return r
    p = _spread_bits(a) * _spread_bits(b)
    return int(p.to_bytes((p.bit_length() + 7) // 8 or 1, "big").translate(_LOW_BIT), 2)


@dataclass(frozen=True)
class FieldParams:
    """GF(2^m) defined by the reduction polynomial with the given exponents.

    >>> F = FieldParams(3, {3, 1, 0})
    >>> F.mul(0b010, 0b100)  # x * x^2 = x + 1
    3
    """

    m: int
    exponents: frozenset[int]
    poly: int = field(init=False, repr=False, compare=False)
    mask: int = field(init=False, repr=False, compare=False)
    byte_len: int = field(init=False, repr=False, compare=False)
    _taps: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, m: int, exponents: Iterable[int]):
        exps = frozenset(int(e) for e in exponents)
        if m < 2:
            raise ParameterError(f"field degree must be >= 2, got {m}")
        if not exps or max(exps) != m or min(exps) < 0:
            raise ParameterError(f"reduction polynomial must have degree exactly {m}")
        if 0 not in exps:
            raise ParameterError("reduction polynomial needs a nonzero constant term")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "poly", sum(1 << e for e in exps))
        object.__setattr__(self, "mask", (1 << m) - 1)
        object.__setattr__(self, "byte_len", (m + 7) // 8)
        object.__setattr__(self, "_taps", tuple(sorted(exps - {m}, reverse=True)))
        if not self.is_irreducible():
            raise ParameterError(f"polynomial {self.poly:#x} is reducible over GF(2)")

    # -- raw int arithmetic ------------------------------------------------

    def reduce(self, r: int) -> int:
        m, mask, taps = self.m, self.mask, self._taps
        while r >> m:
            hi = r >> m
            r &= mask
            for t in taps:
                r ^= hi << t
        return r

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self.reduce(clmul(a, b))

    def sqr(self, a: int) -> int:
        tbl = _SQUARE_TABLE
        r = 0
        s = 0
        while a:
            r |= tbl[a & 255] << s
            a >>= 8
            s += 16
        return self.reduce(r)

    def inv(self, a: int) -> int:
        """Inverse by the binary extended Euclidean algorithm over GF(2)[x]."""
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^m)")
        u, v = a, self.poly
        g1, g2 = 1, 0
        lu, lv = u.bit_length(), v.bit_length()
        while u != 1:
            j = lu - lv
            if j < 0:
                u, v = v, u
                g1, g2 = g2, g1
                lu, lv = lv, lu
                j = -j
            u ^= v << j
            g1 ^= g2 << j
            lu = u.bit_length()
        return self.reduce(g1)

    def pow2k(self, a: int, k: int) -> int:
        for _ in range(k):
            a = self.sqr(a)
        return a

    def is_irreducible(self) -> bool:
        """Rabin's test: x^(2^m) = x mod f and gcd(x^(2^(m/p)) - x, f) = 1."""
        m = self.m
        x = 0b10
        if self.pow2k(x, m) != x:
            return False
        for p in _prime_factors(m):
            h = self.pow2k(x, m // p) ^ x
            if _poly_gcd(h, self.poly) != 1:
                return False
        return True

    # -- codec ---------------------------------------------------------------

    def to_bytes(self, a: int) -> bytes:
        return a.to_bytes(self.byte_len, "big")

    def from_bytes(self, data: bytes) -> int:
        if len(data) != self.byte_len:
            raise DecodeError(f"field element needs {self.byte_len} bytes, got {len(data)}")
        v = int.from_bytes(data, "big")
        if v >> self.m:
            raise DecodeError("nonzero padding bits above the field degree")
        return v

    def element(self, value: int) -> FieldElement:
        if value < 0 or value >> self.m:
            raise ParameterError("value is not a reduced field element")
        return FieldElement(value, self)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _poly_gcd(a: int, b: int) -> int:
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


#: f(x) = x^163 + x^7 + x^6 + x^3 + 1
B163 = FieldParams(163, {163, 7, 6, 3, 0})


@dataclass(frozen=True)
class FieldElement:
    value: int
    params: FieldParams

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement) or other.params != self.params:
            raise ParameterError("field elements belong to different fields")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value ^ other.value, self.params)

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.params.mul(self.value, other.value), self.params)

    def square(self) -> FieldElement:
        return FieldElement(self.params.sqr(self.value), self.params)

    def inverse(self) -> FieldElement:
        return FieldElement(self.params.inv(self.value), self.params)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __bytes__(self) -> bytes:
        return self.params.to_bytes(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.value:#x}, m={self.params.m})"


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_sqr(a: FieldElement) -> FieldElement:
    return a.square()


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def fe_to_bytes(a: FieldElement) -> bytes:
    return bytes(a)


def fe_from_bytes(data: bytes, params: FieldParams = B163) -> FieldElement:
    return FieldElement(params.from_bytes(data), params)
