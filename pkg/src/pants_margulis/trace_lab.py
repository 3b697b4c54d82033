"""Traces of hyperbolic and parabolic elements deformed by exp(V).

Model elements: g = diag(e^s, e^-s) and p = [[1, r], [0, 1]]. The deforming
vector is V = [[a, b], [c, -a]]. For g the a-coordinate pairs with the
neutral vector; for p the c-coordinate does.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .isometry import geodesic_length
from .lorentz_core import IsometryLift, Sl2Vector, cosh_sinhc, exp_sl2

KINDS = ("hyperbolic", "parabolic")
ACTIONS = ("left", "right")


@dataclass(frozen=True)
class DeformParams:
    a: float
    b: float
    c: float
    s: float | None = None
    r: float | None = None

    def __post_init__(self):
        if (self.s is None) == (self.r is None):
            raise ValueError("exactly one of s (hyperbolic) or r (parabolic) must be set")
        if self.s is not None and not self.s > 0:
            raise ValueError("s must be positive")
        if self.r is not None and not self.r > 0:
            raise ValueError("r must be positive")

    @property
    def kind(self) -> str:
        return "hyperbolic" if self.s is not None else "parabolic"

    @property
    def V(self) -> Sl2Vector:
        return Sl2Vector(self.a, self.b, self.c)

    def model_element(self) -> IsometryLift:
        if self.s is not None:
            return hyperbolic_model(self.s)
        return parabolic_model(self.r)


def hyperbolic_model(s: float) -> IsometryLift:
    return IsometryLift(math.exp(s), 0.0, 0.0, math.exp(-s))


def parabolic_model(r: float) -> IsometryLift:
    return IsometryLift(1.0, r, 0.0, 1.0)


def pi_left(V: Sl2Vector, g: IsometryLift) -> IsometryLift:
    return exp_sl2(V) @ g


def pi_right(V: Sl2Vector, g: IsometryLift) -> IsometryLift:
    return g @ exp_sl2(-V)


def trace_deformed_hyperbolic(p: DeformParams) -> float:
    """Closed-form Tr(exp(V) diag(e^s, e^-s))."""
    if p.s is None:
        raise ValueError("hyperbolic trace needs s")
    ch, shc = cosh_sinhc(p.a * p.a + p.b * p.c)
    return 2.0 * math.cosh(p.s) * ch + 2.0 * p.a * math.sinh(p.s) * shc


def trace_deformed_parabolic(p: DeformParams) -> float:
    """Closed-form Tr(exp(V) [[1, r], [0, 1]])."""
    if p.r is None:
        raise ValueError("parabolic trace needs r")
    ch, shc = cosh_sinhc(p.a * p.a + p.b * p.c)
    return 2.0 * ch + p.c * p.r * shc


def closed_form_trace(p: DeformParams, action: str = "left") -> float:
    """Closed-form trace under either action; Tr(g exp(-V)) = Tr(exp(-V) g)."""
    if action == "right":
        p = DeformParams(-p.a, -p.b, -p.c, s=p.s, r=p.r)
    elif action != "left":
        raise ValueError(f"unknown action {action!r}")
    if p.s is not None:
        return trace_deformed_hyperbolic(p)
    return trace_deformed_parabolic(p)


def oracle_trace(p: DeformParams, action: str = "left") -> float:
    """Trace by explicit matrix product with the model element."""
    act = pi_left if action == "left" else pi_right
    return act(p.V, p.model_element()).trace()


@dataclass
class LemmaReport:
    kind: str
    action: str
    samples: int
    agree: int
    expected_sign: int
    min_abs_fd: float
    max_step_ratio_dev: float

    @property
    def passed(self) -> bool:
        return self.agree == self.samples


def _observable(kind: str, g: IsometryLift) -> float:
    # length for hyperbolic elements, trace for the parabolic model
    return geodesic_length(g) if kind == "hyperbolic" else g.trace()


def lemma_sign_check(kind: str, action: str, samples: int, seed: int = 0) -> LemmaReport:
    """First-order sign of length (hyperbolic) or trace (parabolic) change.

    Frame coordinates are uniform on [-1, 1]^3 with the invariant-carrying
    coordinate forced positive (a for hyperbolic, c for parabolic). The left
    action must increase the observable, the right action decrease it, for
    both steps h = 1e-4 and 1e-5.
    """
    if kind not in KINDS or action not in ACTIONS:
        raise ValueError(f"unknown kind/action {kind!r}/{action!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    act = pi_left if action == "left" else pi_right
    expected = 1 if action == "left" else -1
    agree = 0
    min_abs = math.inf
    max_dev = 0.0
    for _ in range(samples):
        a, b, c = rng.uniform(-1.0, 1.0, size=3)
        if kind == "hyperbolic":
            a = abs(a)
            g = hyperbolic_model(rng.uniform(0.1, 2.0))
        else:
            c = abs(c)
            g = parabolic_model(rng.uniform(0.1, 2.0))
        V = Sl2Vector(float(a), float(b), float(c))
        fds = []
        for h in (1e-4, 1e-5):
            up = _observable(kind, act(V * h, g))
            down = _observable(kind, act(V * -h, g))
            fds.append((up - down) / (2 * h))
        if all(np.sign(fd) == expected for fd in fds):
            agree += 1
        min_abs = min(min_abs, min(abs(fd) for fd in fds))
        max_dev = max(max_dev, abs(fds[1] / fds[0] - 1.0))
    return LemmaReport(kind, action, samples, agree, expected, min_abs, max_dev)
