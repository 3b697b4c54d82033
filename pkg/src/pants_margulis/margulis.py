"""Affine deformations as cocycles and their Margulis invariants.

A cocycle is fixed by its values on the generators and extended by
u(gh) = u(g) + g.u(h). The normalized invariant of a hyperbolic g is
<u(g), X0_g>; at a parabolic g the non-normalized <u(g), F_g> is used
instead and only its sign is canonical.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSystemError, DomainError, EllipticElementError
from .isometry import (
    IsometryClass,
    classify,
    geodesic_length,
    neutral_vector_X0,
    trace_sign,
)
from .lorentz_core import (
    IsometryLift,
    Vec21,
    act_on_vector,
    exp_sl2,
    minkowski_dot,
    sl2_to_vec,
    vec_to_sl2,
)
from .surface_group import (
    HolonomyRep,
    boundary_words,
    conjugacy_rep,
    enumerate_conjugacy_reps,
    word_power,
)

TAU_ZERO = 1e-8
# d(length)/dt = KAPPA * alpha along t -> exp(t u(g)) g, for the form Tr(VW)/2.
KAPPA = 2.0


@dataclass(frozen=True, slots=True)
class Cocycle:
    u_a: Vec21
    u_b: Vec21

    @classmethod
    def zero(cls) -> Cocycle:
        return cls(Vec21.zero(), Vec21.zero())

    @classmethod
    def from_array(cls, arr) -> Cocycle:
        arr = np.asarray(arr, dtype=float).reshape(6)
        return cls(Vec21.from_seq(arr[:3]), Vec21.from_seq(arr[3:]))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.u_a.as_array(), self.u_b.as_array()])

    def __add__(self, other: Cocycle) -> Cocycle:
        return Cocycle(self.u_a + other.u_a, self.u_b + other.u_b)

    def __neg__(self) -> Cocycle:
        return Cocycle(-self.u_a, -self.u_b)

    def __mul__(self, k: float) -> Cocycle:
        return Cocycle(self.u_a * k, self.u_b * k)

    __rmul__ = __mul__


@dataclass(frozen=True, slots=True)
class AffineIsometry:
    """x -> linear.x + translation, with the linear part acting on R^{2,1}."""

    linear: IsometryLift
    translation: Vec21

    def __matmul__(self, other: AffineIsometry) -> AffineIsometry:
        return AffineIsometry(
            self.linear @ other.linear,
            self.translation + act_on_vector(self.linear, other.translation),
        )

    def __call__(self, x: Vec21) -> Vec21:
        return act_on_vector(self.linear, x) + self.translation

    def inverse(self) -> AffineIsometry:
        ginv = self.linear.inverse()
        return AffineIsometry(ginv, -act_on_vector(ginv, self.translation))

    @classmethod
    def translation_by(cls, v: Vec21) -> AffineIsometry:
        return cls(IsometryLift.identity(), v)


def _letter_values(rep: HolonomyRep, u: Cocycle) -> dict[str, Vec21]:
    return {
        "a": u.u_a,
        "b": u.u_b,
        "A": -act_on_vector(rep.letter("A"), u.u_a),
        "B": -act_on_vector(rep.letter("B"), u.u_b),
    }


def affine_image(rep: HolonomyRep, u: Cocycle, w: str) -> AffineIsometry:
    """The affine isometry rho(w) = (evaluate(w), u(w))."""
    vals = _letter_values(rep, u)
    g = IsometryLift.identity()
    t = Vec21.zero()
    for x in w:
        t = t + act_on_vector(g, vals[x])
        g = g @ rep.letter(x)
    return AffineIsometry(g, t)


def extend_cocycle(rep: HolonomyRep, u: Cocycle, w: str) -> Vec21:
    return affine_image(rep, u, w).translation


def coboundary(rep: HolonomyRep, v: Vec21) -> Cocycle:
    """Cocycle g -> v - g.v, the effect of conjugating by translation by v."""
    return Cocycle(
        v - act_on_vector(rep.gen_a, v),
        v - act_on_vector(rep.gen_b, v),
    )


def _mul(p, q):
    return (
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    )


def _letter_derivatives(rep: HolonomyRep, u: Cocycle) -> dict:
    """(x, U_x x) per letter, where U_x is the cocycle value on x as a matrix."""
    out = {}
    for gen, val, inv in (("a", u.u_a, "A"), ("b", u.u_b, "B")):
        U = vec_to_sl2(val)
        Um = (U.a, U.b, U.c, -U.a)
        g = rep.letter(gen)
        gi = rep.letter(inv)
        gm = (g.m11, g.m12, g.m21, g.m22)
        gim = (gi.m11, gi.m12, gi.m21, gi.m22)
        out[gen] = (gm, _mul(Um, gm))
        # U_{x^-1} x^-1 = -x^-1 U_x
        out[inv] = (gim, tuple(-e for e in _mul(gim, Um)))
    return out


def _product_and_derivative(letters: dict, w: str):
    """g(w) and D(w) = u(w) g(w), the t-derivative of the word product at t = 0.

    Forward accumulation keeps D at the scale of g; forming u(w) first and
    pairing it with X0 loses digits to cancellation on long words.
    """
    G = (1.0, 0.0, 0.0, 1.0)
    D = (0.0, 0.0, 0.0, 0.0)
    for x in w:
        X, M = letters[x]
        D = tuple(d + e for d, e in zip(_mul(D, X), _mul(G, M)))
        G = _mul(G, X)
    return IsometryLift(*G), D


def _invariants(g: IsometryLift, D, w: str) -> tuple[IsometryClass, float, float]:
    cls = classify(g)
    if cls in (IsometryClass.ELLIPTIC, IsometryClass.IDENTITY):
        raise EllipticElementError(
            f"word {w!r} is {cls.value.lower()} (trace {g.trace()!r}); invariant undefined", word=w
        )
    # <u, F_g> = sigma/2 Tr(U g) since U is traceless
    t = g.trace()
    at = 0.5 * trace_sign(g) * (D[0] + D[3])
    if cls is IsometryClass.PARABOLIC:
        return cls, at, at
    return cls, at, 2.0 * at / math.sqrt(t * t - 4.0)


def alpha_tilde(rep: HolonomyRep, u: Cocycle, w: str) -> float:
    """Non-normalized invariant <u(w), F_w>."""
    g, D = _product_and_derivative(_letter_derivatives(rep, u), w)
    return _invariants(g, D, w)[1]


def alpha(rep: HolonomyRep, u: Cocycle, w: str) -> float:
    """Normalized invariant <u(w), X0_w>; falls back to alpha_tilde at parabolics."""
    g, D = _product_and_derivative(_letter_derivatives(rep, u), w)
    return _invariants(g, D, w)[2]


def alpha_displacement(rep: HolonomyRep, u: Cocycle, w: str, basepoint: Vec21) -> float:
    """<rho(w)(x) - x, X0_w>, which does not depend on the basepoint x.

    The displacement splits as u(w) + (g - I)x; the u(w) part is paired
    through the stable route used by ``alpha``.
    """
    g = rep.evaluate(w)
    if classify(g) is not IsometryClass.HYPERBOLIC:
        raise EllipticElementError(f"word {w!r} is not hyperbolic", word=w)
    x0 = sl2_to_vec(neutral_vector_X0(g))
    linear_part = act_on_vector(g, basepoint) - basepoint
    return alpha(rep, u, w) + minkowski_dot(linear_part, x0)


def boundary_invariants(rep: HolonomyRep, u: Cocycle) -> tuple[float, float, float]:
    return tuple(alpha(rep, u, w) for w in boundary_words())


def solve_boundary_cocycle(rep: HolonomyRep, targets) -> Cocycle:
    """Minimum-norm cocycle whose boundary invariants equal ``targets``.

    The boundary invariants are linear in the six generator coordinates, so
    the matrix is assembled column by column from unit cocycles.
    """
    targets = np.asarray(targets, dtype=float).reshape(3)
    cols = [boundary_invariants(rep, Cocycle.from_array(e)) for e in np.eye(6)]
    M = np.array(cols).T
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= 1e-12 * max(1.0, sv[0]):
        raise DegenerateSystemError(f"boundary system has rank < 3 (singular values {sv})")
    x, *_ = np.linalg.lstsq(M, targets, rcond=None)
    return Cocycle.from_array(x)


class Verdict(enum.Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"
    ALL_NONNEGATIVE = "AllNonnegative"
    ALL_NONPOSITIVE = "AllNonpositive"
    MIXED = "Mixed"
    IDENTICALLY_ZERO = "identically zero"


class WordRecord(NamedTuple):
    word: str
    trace: float
    cls: IsometryClass
    alpha_tilde: float
    alpha: float
    sign: int


@dataclass
class SignReport:
    records: list[WordRecord]
    tau_zero: float
    zero_boundaries: tuple[str, ...] = ()
    verdict: Verdict = field(init=False)
    zero_words: list[str] = field(init=False)
    unexplained_zeros: list[str] = field(init=False)

    def __post_init__(self):
        self.verdict = verdict_of(r.sign for r in self.records)
        self.zero_words = [r.word for r in self.records if r.sign == 0]
        explained = _boundary_power_reps(self.zero_boundaries, self.records)
        self.unexplained_zeros = [w for w in self.zero_words if w not in explained]

    def summary(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "words": len(self.records),
            "tau_zero": self.tau_zero,
            "zero_boundaries": list(self.zero_boundaries),
            "zero_words": self.zero_words,
            "unexplained_zero_words": self.unexplained_zeros,
        }


def verdict_of(signs) -> Verdict:
    seen = set(signs)
    if not seen or seen == {0}:
        return Verdict.IDENTICALLY_ZERO
    if seen == {1}:
        return Verdict.ALL_POSITIVE
    if seen == {-1}:
        return Verdict.ALL_NEGATIVE
    if -1 not in seen:
        return Verdict.ALL_NONNEGATIVE
    if 1 not in seen:
        return Verdict.ALL_NONPOSITIVE
    return Verdict.MIXED


def _boundary_power_reps(zero_boundaries, records) -> set[str]:
    if not zero_boundaries:
        return set()
    max_len = max((len(r.word) for r in records), default=0)
    reps = set()
    for d in zero_boundaries:
        for n in range(1, max_len // len(d) + 1):
            reps.add(conjugacy_rep(word_power(d, n)))
            reps.add(conjugacy_rep(word_power(d, -n)))
    return reps


def scan_words(rep: HolonomyRep, u: Cocycle, words, tau_zero: float = TAU_ZERO) -> list[WordRecord]:
    """Evaluate both invariants on each word; elliptic words raise."""
    letters = _letter_derivatives(rep, u)
    records = []
    for w in words:
        g, D = _product_and_derivative(letters, w)
        try:
            cls, at, al = _invariants(g, D, w)
        except EllipticElementError as exc:
            raise EllipticElementError(f"representation error: {exc}", word=w) from None
        sign = 0 if abs(al) <= tau_zero else (1 if al > 0 else -1)
        records.append(WordRecord(w, g.trace(), cls, at, al, sign))
    return records


def sign_scan(rep: HolonomyRep, u: Cocycle, max_len: int, tau_zero: float = TAU_ZERO) -> SignReport:
    """Evaluate the invariant on every conjugacy representative up to ``max_len``.

    Boundary words whose invariant is within ``tau_zero`` of zero are
    recorded; zero words that are not conjugate to a power of one of them
    are listed separately.
    """
    records = scan_words(rep, u, enumerate_conjugacy_reps(max_len), tau_zero)
    zb = tuple(d for d, a in zip(boundary_words(), boundary_invariants(rep, u)) if abs(a) <= tau_zero)
    return SignReport(records=records, tau_zero=tau_zero, zero_boundaries=zb)


def deformation_path_element(rep: HolonomyRep, u: Cocycle, w: str, t: float) -> IsometryLift:
    """exp(t u(w)) evaluate(w)."""
    img = affine_image(rep, u, w)
    return exp_sl2(vec_to_sl2(img.translation * t)) @ img.linear


class DerivativeCheck(NamedTuple):
    fd: float
    predicted: float
    ratio: float


def length_derivative_check(rep: HolonomyRep, u: Cocycle, w: str, h: float) -> DerivativeCheck:
    """Central difference of the geodesic length along the deformation path.

    ``predicted`` is KAPPA * alpha(w); ``ratio`` is fd / predicted, or NaN
    when the prediction is within TAU_ZERO of zero.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    img = affine_image(rep, u, w)
    if classify(img.linear) is not IsometryClass.HYPERBOLIC:
        raise EllipticElementError(f"word {w!r} is not hyperbolic", word=w)
    V = vec_to_sl2(img.translation)
    ends = []
    for t in (h, -h):
        gt = exp_sl2(V * t) @ img.linear
        if classify(gt) is not IsometryClass.HYPERBOLIC:
            raise DomainError(f"path leaves the hyperbolic regime at t={t} for word {w!r}")
        ends.append(geodesic_length(gt))
    fd = (ends[0] - ends[1]) / (2 * h)
    predicted = KAPPA * alpha(rep, u, w)
    ratio = fd / predicted if abs(predicted) > TAU_ZERO else math.nan
    return DerivativeCheck(fd, predicted, ratio)


class ParabolicCheck(NamedTuple):
    fd: float
    predicted: float


def parabolic_trace_derivative_check(rep: HolonomyRep, u: Cocycle, w: str, h: float) -> ParabolicCheck:
    """Central difference of sigma/2 * Tr along the path, against alpha_tilde(w)."""
    if h <= 0:
        raise ValueError("h must be positive")
    img = affine_image(rep, u, w)
    if classify(img.linear) is not IsometryClass.PARABOLIC:
        raise DomainError(f"word {w!r} is not parabolic")
    sigma = trace_sign(img.linear)
    V = vec_to_sl2(img.translation)
    tp = (exp_sl2(V * h) @ img.linear).trace()
    tm = (exp_sl2(V * -h) @ img.linear).trace()
    fd = 0.5 * sigma * (tp - tm) / (2 * h)
    return ParabolicCheck(fd, alpha_tilde(rep, u, w))
