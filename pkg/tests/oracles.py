"""Slow, obviously-correct reference implementations used only by tests.

Nothing here shares code with the library.
"""

import struct


def clmul(a, b):
    """Carry-less (GF(2)[x]) schoolbook product."""
    r = 0
    i = 0
    while b >> i:
        if b >> i & 1:
            r ^= a << i
        i += 1
    return r


def poly_mod(a, f):
    """Long division remainder of a by f over GF(2)."""
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def field_mul(a, b, f):
    return poly_mod(clmul(a, b), f)


def field_inv_search(a, f):
    m = f.bit_length() - 1
    for b in range(1, 1 << m):
        if field_mul(a, b, f) == 1:
            return b
    raise ZeroDivisionError


def field_inv_fermat(a, f):
    """a^(2^m - 2) by square-and-multiply on the schoolbook product."""
    m = f.bit_length() - 1
    e = (1 << m) - 2
    r, base = 1, a
    while e:
        if e & 1:
            r = field_mul(r, base, f)
        base = field_mul(base, base, f)
        e >>= 1
    return r


# -- toy curve y^2 + xy = x^3 + a x^2 + b over GF(2^m) ---------------------

class ToyCurve:
    """Affine group law written out directly from the chord-and-tangent rule."""

    def __init__(self, f, a, b):
        self.f, self.a, self.b = f, a, b
        self.m = f.bit_length() - 1
        self._inv = field_inv_search if self.m <= 8 else field_inv_fermat

    def on_curve(self, P):
        if P is None:
            return True
        x, y = P
        mul = lambda u, v: field_mul(u, v, self.f)
        return mul(y, y) ^ mul(x, y) == mul(mul(x, x), x) ^ mul(self.a, mul(x, x)) ^ self.b

    def points(self):
        pts = [None]
        for x in range(1 << self.m):
            for y in range(1 << self.m):
                if self.on_curve((x, y)):
                    pts.append((x, y))
        return pts

    def neg(self, P):
        return None if P is None else (P[0], P[0] ^ P[1])

    def add(self, P, Q):
        f = self.f
        mul = lambda u, v: field_mul(u, v, f)
        if P is None:
            return Q
        if Q is None:
            return P
        if Q == self.neg(P):
            return None
        (x1, y1), (x2, y2) = P, Q
        if P == Q:
            lam = x1 ^ mul(y1, self._inv(x1, f))
            x3 = mul(lam, lam) ^ lam ^ self.a
        else:
            lam = mul(y1 ^ y2, self._inv(x1 ^ x2, f))
            x3 = mul(lam, lam) ^ lam ^ x1 ^ x2 ^ self.a
        y3 = mul(lam, x1 ^ x3) ^ x3 ^ y1
        return (x3, y3)

    def mul(self, k, P):
        R = None
        for _ in range(k):
            R = self.add(R, P)
        return R


# -- SHA-1 straight from the FIPS 180 description ---------------------------

def _rotl(v, n):
    return ((v << n) | (v >> (32 - n))) & 0xFFFFFFFF


def sha1_reference(message: bytes) -> bytes:
    h = [0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0]
    ml = len(message) * 8
    message += b"\x80" + b"\x00" * ((55 - len(message)) % 64) + struct.pack(">Q", ml)
    for off in range(0, len(message), 64):
        w = list(struct.unpack(">16I", message[off:off + 64]))
        for t in range(16, 80):
            w.append(_rotl(w[t - 3] ^ w[t - 8] ^ w[t - 14] ^ w[t - 16], 1))
        a, b, c, d, e = h
        for t in range(80):
            if t < 20:
                fn, k = (b & c) | (~b & d), 0x5A827999
            elif t < 40:
                fn, k = b ^ c ^ d, 0x6ED9EBA1
            elif t < 60:
                fn, k = (b & c) | (b & d) | (c & d), 0x8F1BBCDC
            else:
                fn, k = b ^ c ^ d, 0xCA62C1D6
            a, b, c, d, e = (_rotl(a, 5) + fn + e + k + w[t]) & 0xFFFFFFFF, a, _rotl(b, 30), c, d
        h = [(x + y) & 0xFFFFFFFF for x, y in zip(h, (a, b, c, d, e))]
    return struct.pack(">5I", *h)
