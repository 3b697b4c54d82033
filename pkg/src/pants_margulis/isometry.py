"""Classification and invariant vectors of isometries given by SL(2,R) lifts."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, EllipticElementError
from .lorentz_core import IsometryLift, Sl2Vector, adjoint_action

__all__ = [
    "IsometryLift",
    "IsometryClass",
    "HyperbolicFrame",
    "TAU_PAR",
    "classify",
    "trace_sign",
    "invariant_vector_F",
    "neutral_vector_X0",
    "hyperbolic_frame",
    "geodesic_length",
]

TAU_PAR = 1e-9
_IDENTITY_TOL = 1e-9


class IsometryClass(enum.Enum):
    IDENTITY = "Identity"
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"
    ELLIPTIC = "Elliptic"


@dataclass(frozen=True, slots=True)
class HyperbolicFrame:
    X0: Sl2Vector
    Xminus: Sl2Vector
    Xplus: Sl2Vector


def _is_pm_identity(g: IsometryLift) -> bool:
    if abs(g.m12) > _IDENTITY_TOL or abs(g.m21) > _IDENTITY_TOL:
        return False
    return (abs(g.m11 - 1) <= _IDENTITY_TOL and abs(g.m22 - 1) <= _IDENTITY_TOL) or (
        abs(g.m11 + 1) <= _IDENTITY_TOL and abs(g.m22 + 1) <= _IDENTITY_TOL
    )


def classify(g: IsometryLift) -> IsometryClass:
    if _is_pm_identity(g):
        return IsometryClass.IDENTITY
    t = abs(g.trace())
    if t > 2.0 + TAU_PAR:
        return IsometryClass.HYPERBOLIC
    if t < 2.0 - TAU_PAR:
        return IsometryClass.ELLIPTIC
    return IsometryClass.PARABOLIC


def trace_sign(g: IsometryLift) -> int:
    t = g.trace()
    if t == 0.0:
        raise DomainError("trace is zero; the lift sign is undefined")
    return 1 if t > 0 else -1


def _require_nonelliptic(g: IsometryLift) -> IsometryClass:
    cls = classify(g)
    if cls in (IsometryClass.ELLIPTIC, IsometryClass.IDENTITY):
        raise EllipticElementError(f"invariant vector undefined for {cls.value.lower()} element")
    return cls


def _traceless_part(g: IsometryLift, scale: float) -> Sl2Vector:
    # scale * (g - Tr(g)/2 I)
    return Sl2Vector(0.5 * scale * (g.m11 - g.m22), scale * g.m12, scale * g.m21)


def invariant_vector_F(g: IsometryLift) -> Sl2Vector:
    """sigma(g) * (g - Tr(g)/2 I), the g-invariant vector independent of the lift sign."""
    _require_nonelliptic(g)
    return _traceless_part(g, float(trace_sign(g)))


def neutral_vector_X0(g: IsometryLift) -> Sl2Vector:
    """Unit-spacelike g-invariant vector for hyperbolic g.

    For parabolic g there is no unit normalization; the non-normalized
    F_g is returned and only its direction (and sign) is canonical.
    """
    cls = _require_nonelliptic(g)
    if cls is IsometryClass.PARABOLIC:
        return invariant_vector_F(g)
    t = g.trace()
    scale = 2.0 * trace_sign(g) / math.sqrt(t * t - 4.0)
    return _traceless_part(g, scale)


def _frobenius(v: Sl2Vector) -> float:
    return math.sqrt(2 * v.a * v.a + v.b * v.b + v.c * v.c)


def hyperbolic_frame(g: IsometryLift) -> HyperbolicFrame:
    """Eigenframe (X0, X-, X+) of the adjoint action of a hyperbolic g.

    X+ is the e^{2s}-eigenvector, X- the e^{-2s}-eigenvector, with
    <X+, X-> = 1/2. The leftover positive rescaling X+ -> kX+, X- -> X-/k
    is fixed by equal Frobenius norms, and the sign by making the first
    nonzero entry of X+ positive.
    """
    if classify(g) is not IsometryClass.HYPERBOLIC:
        raise DomainError("eigenframe requires a hyperbolic element")
    if g.trace() < 0:
        g = -g
    t = g.trace()
    lam = 0.5 * (t + math.sqrt(t * t - 4.0))
    mu = 1.0 / lam
    # Eigenvectors of g; pick the better-conditioned of the two formulas.
    def eigvec(ev):
        c1 = (g.m12, ev - g.m11)
        c2 = (ev - g.m22, g.m21)
        return c1 if abs(c1[0]) + abs(c1[1]) >= abs(c2[0]) + abs(c2[1]) else c2

    p11, p21 = eigvec(lam)
    p12, p22 = eigvec(mu)
    d = p11 * p22 - p12 * p21
    # Normalize det(P) = 1; sign of the second column is free.
    if d < 0:
        p12, p22, d = -p12, -p22, -d
    r = math.sqrt(d)
    P = IsometryLift(p11 / r, p12 / r, p21 / r, p22 / r)

    x0 = neutral_vector_X0(g)
    xplus = adjoint_action(P, Sl2Vector(0.0, 1.0, 0.0))
    xminus = adjoint_action(P, Sl2Vector(0.0, 0.0, 1.0))
    k = math.sqrt(_frobenius(xminus) / _frobenius(xplus))
    xplus, xminus = xplus * k, xminus * (1.0 / k)
    cutoff = 1e-12 * _frobenius(xplus)
    first = next(e for e in (xplus.a, xplus.b, xplus.c) if abs(e) > cutoff)
    if first < 0:
        xplus, xminus = -xplus, -xminus
    return HyperbolicFrame(X0=x0, Xminus=xminus, Xplus=xplus)


def geodesic_length(g: IsometryLift) -> float:
    """Translation length 2 arccosh(|Tr|/2); zero for a parabolic (cusp)."""
    cls = _require_nonelliptic(g)
    if cls is IsometryClass.PARABOLIC:
        return 0.0
    return 2.0 * math.acosh(0.5 * abs(g.trace()))
