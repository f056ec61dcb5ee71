"""secp256k1 group arithmetic.

Jacobian-coordinate point math over the curve y^2 = x^3 + 7. Scalar
multiplication of the generator uses a precomputed doubling table; arbitrary
points use plain double-and-add. Performance is adequate for desk-scale
protocol runs; this is not a constant-time implementation and must not be
used where timing side channels matter.
"""

from __future__ import annotations

P = 2**256 - 2**32 - 977
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8

# affine points are (x, y) tuples; None is the point at infinity
AffinePoint = tuple[int, int] | None
_Jacobian = tuple[int, int, int] | None


class CurveError(ValueError):
    pass


def _j_double(pt: _Jacobian) -> _Jacobian:
    if pt is None:
        return None
    x1, y1, z1 = pt
    if y1 == 0:
        return None
    a = x1 * x1 % P
    b = y1 * y1 % P
    c = b * b % P
    d = 2 * ((x1 + b) * (x1 + b) - a - c) % P
    e = 3 * a % P
    f = e * e % P
    x3 = (f - 2 * d) % P
    y3 = (e * (d - x3) - 8 * c) % P
    z3 = 2 * y1 * z1 % P
    return (x3, y3, z3)


def _j_add(p1: _Jacobian, p2: _Jacobian) -> _Jacobian:
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = z1 * z1 % P
    z2z2 = z2 * z2 % P
    u1 = x1 * z2z2 % P
    u2 = x2 * z1z1 % P
    s1 = y1 * z2 * z2z2 % P
    s2 = y2 * z1 * z1z1 % P
    if u1 == u2:
        if s1 != s2:
            return None
        return _j_double(p1)
    h = (u2 - u1) % P
    i = 4 * h * h % P
    j = h * i % P
    r = 2 * (s2 - s1) % P
    v = u1 * i % P
    x3 = (r * r - j - 2 * v) % P
    y3 = (r * (v - x3) - 2 * s1 * j) % P
    z3 = 2 * h * z1 * z2 % P
    return (x3, y3, z3)


def _to_affine(pt: _Jacobian) -> AffinePoint:
    if pt is None:
        return None
    x, y, z = pt
    if z == 0:
        return None
    zinv = pow(z, P - 2, P)
    zinv2 = zinv * zinv % P
    return (x * zinv2 % P, y * zinv2 * zinv % P)


def _from_affine(pt: AffinePoint) -> _Jacobian:
    if pt is None:
        return None
    return (pt[0], pt[1], 1)


class _GeneratorTable:
    """Lazily built table of 2^i * G in affine form for fixed-base multiplies."""

    def __init__(self) -> None:
        self._points: list[AffinePoint] | None = None

    def points(self) -> list[AffinePoint]:
        if self._points is None:
            pts = []
            current: _Jacobian = (GX, GY, 1)
            for _ in range(256):
                pts.append(_to_affine(current))
                current = _j_double(current)
            self._points = pts
        return self._points


_G_TABLE = _GeneratorTable()


def scalar_mult_generator(k: int) -> AffinePoint:
    k %= N
    if k == 0:
        return None
    table = _G_TABLE.points()
    acc: _Jacobian = None
    i = 0
    while k:
        if k & 1:
            acc = _j_add(acc, _from_affine(table[i]))
        k >>= 1
        i += 1
    return _to_affine(acc)


def scalar_mult(k: int, point: AffinePoint) -> AffinePoint:
    k %= N
    if k == 0 or point is None:
        return None
    acc: _Jacobian = None
    addend = _from_affine(point)
    while k:
        if k & 1:
            acc = _j_add(acc, addend)
        addend = _j_double(addend)
        k >>= 1
    return _to_affine(acc)


def point_add(p1: AffinePoint, p2: AffinePoint) -> AffinePoint:
    return _to_affine(_j_add(_from_affine(p1), _from_affine(p2)))


def is_on_curve(point: AffinePoint) -> bool:
    if point is None:
        return False
    x, y = point
    return 0 <= x < P and 0 <= y < P and (y * y - (x * x * x + 7)) % P == 0


def lift_x(x: int, odd_y: bool) -> AffinePoint:
    """Recover the curve point with the given x and y parity.

    Raises CurveError when x is not the abscissa of any curve point.
    """
    if not 0 <= x < P:
        raise CurveError("x out of field range")
    y_sq = (pow(x, 3, P) + 7) % P
    y = pow(y_sq, (P + 1) // 4, P)  # valid since P % 4 == 3
    if y * y % P != y_sq:
        raise CurveError("x is not on the curve")
    if (y & 1) != odd_y:
        y = P - y
    return (x, y)
