import math

import numpy as np
import pytest

from oracles import affine_matrix
from pants_margulis.errors import DegenerateSystemError, EllipticElementError
from pants_margulis.isometry import hyperbolic_frame
from pants_margulis.lorentz_core import IsometryLift, Sl2Vector, Vec21, sl2_to_vec
from pants_margulis.margulis import (
    AffineIsometry,
    Cocycle,
    Verdict,
    affine_image,
    alpha,
    alpha_displacement,
    alpha_tilde,
    boundary_invariants,
    coboundary,
    deformation_path_element,
    extend_cocycle,
    length_derivative_check,
    parabolic_trace_derivative_check,
    sign_scan,
    solve_boundary_cocycle,
    verdict_of,
)
from pants_margulis.surface_group import (
    HolonomyRep,
    enumerate_conjugacy_reps,
    evaluate,
    fricke_construct,
    invert_word,
    reduce_word,
    word_power,
)


def random_cocycle(rng, scale=1.0):
    return Cocycle.from_array(rng.normal(scale=scale, size=6))


def random_word(rng, n):
    while True:
        w = reduce_word("".join(rng.choice(list("aAbB"), size=n)))
        if w:
            return w


def random_cyclic_word(rng, max_len=6):
    reps = enumerate_conjugacy_reps(max_len)
    return reps[rng.integers(len(reps))]


def diag_rep(s):
    """gen_a = diag(e^s, e^-s), gen_b an arbitrary hyperbolic with hyperbolic product."""
    return HolonomyRep(IsometryLift(math.exp(s), 0.0, 0.0, math.exp(-s)), IsometryLift(2.0, 1.0, 1.0, 1.0))


def vec(sl2):
    return sl2_to_vec(sl2)


def _oracle_affine(rep, u, w):
    out = np.eye(4)
    gens = {
        "a": affine_matrix(rep.gen_a.as_matrix(), u.u_a.as_array()),
        "b": affine_matrix(rep.gen_b.as_matrix(), u.u_b.as_array()),
    }
    gens["A"] = np.linalg.inv(gens["a"])
    gens["B"] = np.linalg.inv(gens["b"])
    for x in w:
        out = out @ gens[x]
    return out


# --- cocycle extension ---------------------------------------------------


def test_extend_trivial(pants, rng):
    u = random_cocycle(rng)
    assert extend_cocycle(pants, u, "") == Vec21.zero()
    t = extend_cocycle(pants, u, "aA")
    assert max(abs(c) for c in t) < 1e-14


def test_extend_matches_affine_oracle(pants, rng):
    u = random_cocycle(rng)
    t = extend_cocycle(pants, u, "ab")
    A = AffineIsometry(pants.gen_a, u.u_a)
    B = AffineIsometry(pants.gen_b, u.u_b)
    np.testing.assert_allclose(list(t), list((A @ B).translation), atol=1e-14)
    for _ in range(50):
        w = random_word(rng, 7)
        M = _oracle_affine(pants, u, w)
        got = extend_cocycle(pants, u, w).as_array()
        np.testing.assert_allclose(got, M[:3, 3], rtol=1e-10, atol=1e-10 * max(1, np.abs(M).max()))


def test_homomorphism_on_word_pairs(pants, rng):
    u = random_cocycle(rng)
    for _ in range(100):
        w1, w2 = random_word(rng, 5), random_word(rng, 5)
        lhs = affine_image(pants, u, reduce_word(w1 + w2))
        rhs = affine_image(pants, u, w1) @ affine_image(pants, u, w2)
        scale = max(1.0, max(abs(c) for c in rhs.translation), abs(rhs.linear.m11))
        assert np.allclose(list(lhs.translation), list(rhs.translation), atol=1e-11 * scale, rtol=0)
        assert np.allclose(lhs.linear.as_matrix(), rhs.linear.as_matrix(), atol=1e-11 * scale, rtol=0)


def test_inverse_rule(pants, rng):
    u = random_cocycle(rng)
    for w in ("a", "b", "ab", "aBBa"):
        g = evaluate(pants, w)
        t = extend_cocycle(pants, u, invert_word(w))
        img = affine_image(pants, u, w).inverse()
        np.testing.assert_allclose(list(t), list(img.translation), atol=1e-10)
        assert img.linear == g.inverse()


# --- coboundaries ---------------------------------------------------------


def test_coboundary_zero(pants):
    assert coboundary(pants, Vec21.zero()) == Cocycle.zero()


def test_coboundary_invariants_vanish(pants, rng):
    for _ in range(100):
        v = Vec21.from_seq(rng.normal(size=3))
        u = coboundary(pants, v)
        w = random_cyclic_word(rng)
        assert abs(alpha_tilde(pants, u, w)) < 1e-9 * max(1, abs(evaluate(pants, w).trace()))
        assert abs(alpha(pants, u, w)) < 1e-9


def test_coboundary_is_translation_conjugation(pants, rng):
    for _ in range(20):
        v = Vec21.from_seq(rng.normal(size=3))
        u = random_cocycle(rng)
        w = random_word(rng, 6)
        T = AffineIsometry.translation_by(v)
        conj = T @ affine_image(pants, u, w) @ T.inverse()
        got = affine_image(pants, u + coboundary(pants, v), w)
        np.testing.assert_allclose(list(got.translation), list(conj.translation), atol=1e-12 * 1e2)


# --- invariants -----------------------------------------------------------


def test_alpha_tilde_examples():
    rep = diag_rep(1.0)
    assert alpha_tilde(rep, Cocycle.zero(), "ab") == 0.0
    u = Cocycle(Vec21(1.0, 0.0, 0.0), Vec21.zero())
    assert alpha_tilde(rep, u, "a") == pytest.approx(math.sinh(1.0), abs=1e-15)
    assert alpha_tilde(rep, u, "a") == pytest.approx(1.1752012, abs=1e-7)

    r = 2.0
    p = IsometryLift(1.0, r, 0.0, 1.0)
    prep = HolonomyRep(p, IsometryLift(1.0, 0.0, 2.0, 1.0))
    a, b, c = 0.3, -0.7, 0.45
    u = Cocycle(vec(Sl2Vector(a, b, c)), Vec21.zero())
    assert alpha_tilde(prep, u, "a") == pytest.approx(c * r / 2, abs=1e-15)
    assert alpha(prep, u, "a") == alpha_tilde(prep, u, "a")


def test_alpha_examples(pants, rng):
    rep = diag_rep(0.8)
    fr = hyperbolic_frame(rep.gen_a)
    u = Cocycle(vec(fr.X0 * 2.5), Vec21.zero())
    assert alpha(rep, u, "a") == pytest.approx(2.5, abs=1e-14)
    u = Cocycle(vec(fr.Xplus * 0.7 + fr.Xminus * -1.3), Vec21.zero())
    assert alpha(rep, u, "a") == pytest.approx(0.0, abs=1e-14)
    for _ in range(100):
        u = random_cocycle(rng)
        w = random_cyclic_word(rng, 5)
        h = random_word(rng, int(rng.integers(1, 5)))
        conj = reduce_word(h + w + invert_word(h))
        assert alpha(pants, u, conj) == pytest.approx(alpha(pants, u, w), abs=1e-9)


def test_elliptic_and_identity_words_rejected(pants):
    u = Cocycle.zero()
    with pytest.raises(EllipticElementError) as err:
        alpha(pants, u, "")
    assert err.value.word == ""
    rep = fricke_construct(2.5, 2.5, 2.5)
    with pytest.raises(EllipticElementError):
        alpha_tilde(rep, u, "abAB")


def test_linearity(pants, rng):
    for _ in range(100):
        u1, u2 = random_cocycle(rng), random_cocycle(rng)
        lam, mu = rng.normal(size=2)
        w = random_cyclic_word(rng)
        lhs = alpha(pants, u1 * lam + u2 * mu, w)
        rhs = lam * alpha(pants, u1, w) + mu * alpha(pants, u2, w)
        assert lhs == pytest.approx(rhs, abs=1e-10 * max(1, abs(rhs)))


def test_cohomology_invariance(pants, rng):
    for _ in range(100):
        u = random_cocycle(rng)
        v = Vec21.from_seq(rng.normal(size=3))
        w = random_cyclic_word(rng)
        assert alpha(pants, u + coboundary(pants, v), w) == pytest.approx(alpha(pants, u, w), abs=1e-9)


def test_inversion_and_powers(pants, rng):
    for _ in range(100):
        u = random_cocycle(rng)
        w = random_cyclic_word(rng, 4)
        a = alpha(pants, u, w)
        assert alpha(pants, u, invert_word(w)) == pytest.approx(a, abs=1e-9)
        for n in (1, 2, 3):
            assert alpha(pants, u, word_power(w, n)) == pytest.approx(n * a, abs=1e-9 * n)
            assert alpha(pants, u, word_power(w, -n)) == pytest.approx(n * a, abs=1e-9 * n)


def test_sign_coherence(pants, rng):
    u = random_cocycle(rng)
    for w in enumerate_conjugacy_reps(6):
        at = alpha_tilde(pants, u, w)
        if abs(at) > 1e-12:
            assert np.sign(alpha(pants, u, w)) == np.sign(at)


def test_alpha_displacement(pants, rng):
    for _ in range(100):
        u = random_cocycle(rng)
        w = random_cyclic_word(rng, 5)
        a = alpha(pants, u, w)
        assert alpha_displacement(pants, u, w, Vec21.zero()) == a
        vals = [alpha_displacement(pants, u, w, Vec21.from_seq(rng.normal(scale=3, size=3))) for _ in range(10)]
        assert max(vals) - min(vals) < 1e-8 * max(1, abs(a))
        assert vals[0] == pytest.approx(a, abs=1e-8)
        cob = coboundary(pants, Vec21.from_seq(rng.normal(size=3)))
        assert abs(alpha_displacement(pants, cob, w, Vec21.from_seq(rng.normal(size=3)))) < 1e-8


# --- boundary solve and scans ------------------------------------------------


@pytest.mark.parametrize("targets", [(0, 0, 0), (1, 1, 1), (0, 1, 1), (-2, 0.5, 3)])
def test_solve_boundary_cocycle(pants, targets):
    u = solve_boundary_cocycle(pants, targets)
    np.testing.assert_allclose(boundary_invariants(pants, u), targets, atol=1e-8)
    if targets == (0, 0, 0):
        assert np.linalg.norm(u.as_array()) == 0.0


def test_solve_is_minimum_norm(pants, rng):
    u = solve_boundary_cocycle(pants, (1, 2, 3))
    x = u.as_array()
    # Any null-space perturbation keeps the targets and cannot reduce the norm.
    for _ in range(20):
        v = Vec21.from_seq(rng.normal(size=3))
        y = (u + coboundary(pants, v)).as_array()
        np.testing.assert_allclose(boundary_invariants(pants, Cocycle.from_array(y)), (1, 2, 3), atol=1e-8)
        assert np.linalg.norm(y) >= np.linalg.norm(x) - 1e-12


def test_solve_cusped(cusped_pants):
    u = solve_boundary_cocycle(cusped_pants, (1, 1, 1))
    assert alpha_tilde(cusped_pants, u, "BA") == pytest.approx(1.0, abs=1e-8)


def test_solve_degenerate():
    # Both generators share an axis: the rank of the boundary map drops.
    g = IsometryLift(2.0, 0.0, 0.0, 0.5)
    h = IsometryLift(3.0, 0.0, 0.0, 1 / 3)
    rep = HolonomyRep(g, h)
    with pytest.raises(DegenerateSystemError):
        solve_boundary_cocycle(rep, (1, 1, 1))


def test_verdicts():
    assert verdict_of([1, 1]) is Verdict.ALL_POSITIVE
    assert verdict_of([-1]) is Verdict.ALL_NEGATIVE
    assert verdict_of([0, 1]) is Verdict.ALL_NONNEGATIVE
    assert verdict_of([0, -1]) is Verdict.ALL_NONPOSITIVE
    assert verdict_of([1, -1, 0]) is Verdict.MIXED
    assert verdict_of([0, 0]) is Verdict.IDENTICALLY_ZERO


def test_scan_coboundary_identically_zero(pants):
    rep = sign_scan(pants, coboundary(pants, Vec21(0.3, -1.1, 0.4)), 6)
    assert rep.verdict is Verdict.IDENTICALLY_ZERO
    assert len(rep.zero_words) == len(rep.records)


def test_scan_positive_and_negative(pants):
    u = solve_boundary_cocycle(pants, (1, 1, 1))
    rep = sign_scan(pants, u, 8)
    assert rep.verdict is Verdict.ALL_POSITIVE and rep.zero_words == []
    assert sign_scan(pants, -u, 8).verdict is Verdict.ALL_NEGATIVE


def test_scan_zero_boundary(pants):
    rep = sign_scan(pants, solve_boundary_cocycle(pants, (0, 1, 1)), 8)
    assert rep.verdict is Verdict.ALL_NONNEGATIVE
    assert rep.zero_boundaries == ("a",)
    assert set(rep.zero_words) == {"a" * n for n in range(1, 9)} | {"A" * n for n in range(1, 9)}
    assert rep.unexplained_zeros == []


def test_scan_mixed_boundary_signs(pants):
    rep = sign_scan(pants, solve_boundary_cocycle(pants, (1, -1, 1)), 4)
    assert rep.verdict is Verdict.MIXED


def test_scan_rejects_elliptic_word():
    rep = fricke_construct(2.5, 2.5, 2.5)
    with pytest.raises(EllipticElementError) as err:
        sign_scan(rep, Cocycle.zero(), 4)
    assert len(err.value.word) == 4


def test_scan_records_sorted(pants):
    rep = sign_scan(pants, solve_boundary_cocycle(pants, (1, 1, 1)), 3)
    assert [r.word for r in rep.records] == enumerate_conjugacy_reps(3)


# --- deformation path and derivative checks --------------------------------


def test_path_element(pants, rng):
    u = random_cocycle(rng)
    assert deformation_path_element(pants, u, "aB", 0.0) == evaluate(pants, "aB")
    for t in rng.normal(size=10):
        g = deformation_path_element(pants, u, "abAAb", float(t))
        assert abs(g.det() - 1) < 1e-10 * max(1, np.sum(g.as_matrix() ** 2))
    s, a, t = 0.9, 0.4, 0.7
    rep = diag_rep(s)
    u = Cocycle(vec(Sl2Vector(a, 0, 0)), Vec21.zero())
    g = deformation_path_element(rep, u, "a", t)
    np.testing.assert_allclose(g.as_matrix(), np.diag([math.exp(s + t * a), math.exp(-s - t * a)]), rtol=1e-14)
    assert g.trace() == pytest.approx(2 * math.cosh(s + t * a), rel=1e-14)


def test_length_derivative_diagonal():
    rep = diag_rep(1.0)
    u = Cocycle(vec(Sl2Vector(0.3, 0, 0)), Vec21.zero())
    chk = length_derivative_check(rep, u, "a", 1e-5)
    assert chk.fd == pytest.approx(0.6, abs=1e-6)
    assert chk.predicted == pytest.approx(0.6, abs=1e-12)
    assert chk.ratio == pytest.approx(1.0, abs=1e-6)
    u = Cocycle(vec(Sl2Vector(0.0, 0.8, -0.5)), Vec21.zero())
    chk = length_derivative_check(rep, u, "a", 1e-5)
    assert abs(chk.fd) < 1e-6
    assert math.isnan(chk.ratio)


def test_length_derivative_random_words(pants, rng):
    u = random_cocycle(rng)
    for _ in range(100):
        w = random_cyclic_word(rng, 6)
        chk = length_derivative_check(pants, u, w, 1e-5)
        assert abs(chk.fd - 2 * alpha(pants, u, w)) / max(1, abs(chk.fd)) < 1e-4


def test_length_derivative_rejects_parabolic(cusped_pants):
    with pytest.raises(EllipticElementError):
        length_derivative_check(cusped_pants, Cocycle.zero(), "BA", 1e-5)


def test_parabolic_derivative():
    p = IsometryLift(1.0, 1.0, 0.0, 1.0)
    rep = HolonomyRep(p, IsometryLift(1.0, 0.0, 2.0, 1.0))
    u = Cocycle(vec(Sl2Vector(0.1, -0.3, 0.4)), Vec21.zero())
    chk = parabolic_trace_derivative_check(rep, u, "a", 1e-5)
    assert chk.fd == pytest.approx(0.2, abs=1e-8)
    assert chk.predicted == pytest.approx(0.2, abs=1e-15)
    u = Cocycle(vec(Sl2Vector(0.7, -0.3, 0.0)), Vec21.zero())
    assert abs(parabolic_trace_derivative_check(rep, u, "a", 1e-5).fd) < 1e-6
    cob = coboundary(rep, Vec21(0.2, 0.5, -0.9))
    assert abs(parabolic_trace_derivative_check(rep, cob, "a", 1e-5).fd) < 1e-6


def test_parabolic_derivative_negative_lift(cusped_pants, rng):
    u = random_cocycle(rng)
    assert evaluate(cusped_pants, "BA").trace() == pytest.approx(-2.0)
    chk = parabolic_trace_derivative_check(cusped_pants, u, "BA", 1e-5)
    assert abs(chk.fd - chk.predicted) < 1e-4 * max(1, abs(chk.predicted))
