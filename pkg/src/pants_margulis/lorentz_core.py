"""Lorentzian vector space R^{2,1}, the Lie algebra sl(2,R), and the isometry between them.

Conventions
-----------
R^{2,1} carries the form <x, y> = x1*y1 + x2*y2 - x3*y3.

sl(2,R) carries the Killing-type form <V, W> = Tr(VW) / 2 and is identified
with R^{2,1} through the orthonormal basis

    E1 = [[1, 0], [0, -1]],  E2 = [[0, 1], [1, 0]],  E3 = [[0, 1], [-1, 0]],

so that (x, y, z) <-> x*E1 + y*E2 + z*E3 = [[x, y + z], [y - z, -x]].
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

TAU_NULL = 1e-9
TAU_EXP = 1e-8
DET_TOL = 1e-9


def _check_finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite entry {v!r}")


@dataclass(frozen=True, slots=True)
class Vec21:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        _check_finite(self.x1, self.x2, self.x3)

    @classmethod
    def zero(cls) -> Vec21:
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_seq(cls, seq) -> Vec21:
        x1, x2, x3 = (float(v) for v in seq)
        return cls(x1, x2, x3)

    def __add__(self, other: Vec21) -> Vec21:
        return Vec21(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: Vec21) -> Vec21:
        return Vec21(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> Vec21:
        return Vec21(-self.x1, -self.x2, -self.x3)

    def __mul__(self, k: float) -> Vec21:
        return Vec21(k * self.x1, k * self.x2, k * self.x3)

    __rmul__ = __mul__

    def __iter__(self):
        return iter((self.x1, self.x2, self.x3))

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


@dataclass(frozen=True, slots=True)
class Sl2Vector:
    """Traceless matrix [[a, b], [c, -a]]."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        _check_finite(self.a, self.b, self.c)

    @classmethod
    def from_matrix(cls, m) -> Sl2Vector:
        m = np.asarray(m, dtype=float)
        # Project onto the traceless part.
        half_diff = 0.5 * (m[0, 0] - m[1, 1])
        return cls(float(half_diff), float(m[0, 1]), float(m[1, 0]))

    def __add__(self, other: Sl2Vector) -> Sl2Vector:
        return Sl2Vector(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: Sl2Vector) -> Sl2Vector:
        return Sl2Vector(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> Sl2Vector:
        return Sl2Vector(-self.a, -self.b, -self.c)

    def __mul__(self, k: float) -> Sl2Vector:
        return Sl2Vector(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, -self.a]])

    def det(self) -> float:
        return -self.a * self.a - self.b * self.c


E1 = Sl2Vector(1.0, 0.0, 0.0)
E2 = Sl2Vector(0.0, 1.0, 1.0)
E3 = Sl2Vector(0.0, 1.0, -1.0)


@dataclass(frozen=True, slots=True)
class IsometryLift:
    """A 2x2 real matrix of determinant one, lifting an element of PSL(2,R).

    ``g`` and ``-g`` describe the same isometry. The determinant check is
    relative to the squared Frobenius norm, since long products lose
    absolute precision in ``m11*m22 - m12*m21``.
    """

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        _check_finite(self.m11, self.m12, self.m21, self.m22)
        scale = max(1.0, self.m11**2 + self.m12**2 + self.m21**2 + self.m22**2)
        if abs(self.det() - 1.0) > DET_TOL * scale:
            raise ValueError(f"determinant {self.det()!r} is not 1")

    @classmethod
    def identity(cls) -> IsometryLift:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_matrix(cls, m) -> IsometryLift:
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> float:
        return self.m11 + self.m22

    def inverse(self) -> IsometryLift:
        return IsometryLift(self.m22, -self.m12, -self.m21, self.m11)

    def __neg__(self) -> IsometryLift:
        return IsometryLift(-self.m11, -self.m12, -self.m21, -self.m22)

    def __matmul__(self, o: IsometryLift) -> IsometryLift:
        return IsometryLift(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    def __pow__(self, n: int) -> IsometryLift:
        base = self if n >= 0 else self.inverse()
        out = IsometryLift.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out


class CausalClass(enum.Enum):
    ZERO = "Zero"
    NULL = "Null"
    TIMELIKE = "Timelike"
    SPACELIKE = "Spacelike"


def minkowski_dot(x: Vec21, y: Vec21) -> float:
    return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3


def causal_class(x: Vec21) -> CausalClass:
    """Classify ``x`` by the sign of <x, x>, with a tolerance relative to |x|^2."""
    eucl = x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3
    if eucl == 0.0:
        return CausalClass.ZERO
    q = minkowski_dot(x, x)
    if abs(q) <= TAU_NULL * eucl:
        return CausalClass.NULL
    return CausalClass.TIMELIKE if q < 0 else CausalClass.SPACELIKE


def killing_form(v: Sl2Vector, w: Sl2Vector) -> float:
    # Tr([[a,b],[c,-a]] [[a',b'],[c',-a']]) / 2
    return v.a * w.a + 0.5 * (v.b * w.c + v.c * w.b)


def sl2_to_vec(v: Sl2Vector) -> Vec21:
    return Vec21(v.a, 0.5 * (v.b + v.c), 0.5 * (v.b - v.c))


def vec_to_sl2(x: Vec21) -> Sl2Vector:
    return Sl2Vector(x.x1, x.x2 + x.x3, x.x2 - x.x3)


def adjoint_action(g: IsometryLift, v: Sl2Vector) -> Sl2Vector:
    """Return g V g^-1 (the sign of the lift cancels)."""
    p, q, r, s = g.m11, g.m12, g.m21, g.m22
    # g V
    t11 = p * v.a + q * v.c
    t12 = p * v.b - q * v.a
    t21 = r * v.a + s * v.c
    t22 = r * v.b - s * v.a
    # (g V) g^-1 with g^-1 = [[s, -q], [-r, p]]
    n11 = t11 * s - t12 * r
    n12 = -t11 * q + t12 * p
    n21 = t21 * s - t22 * r
    n22 = -t21 * q + t22 * p
    return Sl2Vector(0.5 * (n11 - n22), n12, n21)


def act_on_vector(g: IsometryLift, x: Vec21) -> Vec21:
    """Linear action of g on R^{2,1}, transported from the adjoint action."""
    return sl2_to_vec(adjoint_action(g, vec_to_sl2(x)))


def cosh_sinhc(mu2: float) -> tuple[float, float]:
    """Return (cosh(mu), sinh(mu)/mu) for mu = sqrt(mu2), continued to mu2 < 0.

    For mu2 < 0 this is (cos(w), sin(w)/w) with w = sqrt(-mu2). Near zero a
    truncated series replaces the ratio, which cancels badly there.
    """
    if abs(mu2) <= TAU_EXP:
        return 1.0 + 0.5 * mu2, 1.0 + mu2 / 6.0
    if mu2 > 0:
        mu = math.sqrt(mu2)
        return math.cosh(mu), math.sinh(mu) / mu
    w = math.sqrt(-mu2)
    return math.cos(w), math.sin(w) / w


def exp_sl2(v: Sl2Vector) -> IsometryLift:
    """Matrix exponential of a traceless 2x2 matrix.

    Uses V^2 = (a^2 + bc) I, so exp(V) = cosh(mu) I + sinh(mu)/mu V.
    """
    ch, shc = cosh_sinhc(v.a * v.a + v.b * v.c)
    return IsometryLift(ch + shc * v.a, shc * v.b, shc * v.c, ch - shc * v.a)
