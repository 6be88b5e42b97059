import numpy as np
import pytest

from contactflow import geometry
from contactflow.harmonics import (
    SpectralFunction,
    SphereGrid,
    Spectrum,
    adjoint_analyze,
    analyze,
    eigenvalue,
    inner_M,
    laplace_scale,
    legendre_tables,
    product,
    synthesize,
)

SQRT_4PI = np.sqrt(4.0 * np.pi)


def test_legendre_orthonormality():
    L = 10
    x, w = np.polynomial.legendre.leggauss(L + 1)
    P, dP, Q = legendre_tables(x, L)
    for m in range(L + 1):
        block = P[m:, m]                      # rows l = m..L
        gram = (block * w) @ block.T
        assert np.max(np.abs(gram - np.eye(L + 1 - m))) < 1e-12


def test_round_trip_analysis_synthesis():
    rng = np.random.default_rng(0)
    L = 9
    f = SpectralFunction.random(L, rng)
    grid = SphereGrid.for_degree(L)
    g = f.to_grid(grid)
    back = analyze(g, L)
    assert np.max(np.abs(back.coeffs - f.coeffs)) < 1e-12


def test_mode_normalization_on_sphere():
    # each mode has unit L^2(S^2) norm under the grid quadrature
    grid = SphereGrid.for_degree(6)
    for (l, m) in [(0, 0), (1, -1), (3, 2), (6, -5)]:
        f = SpectralFunction.mode(l, m)
        vals = synthesize(f, grid)
        assert abs(grid.integrate(vals * vals) - 1.0) < 1e-12


def test_gradient_adjoint_identity():
    # <grad F, grad Y_lm> = l(l+1) F_lm via the two adjoint channels
    rng = np.random.default_rng(1)
    L = 7
    f = SpectralFunction.random(L, rng)
    grid = SphereGrid.for_degree(L)
    f_th = synthesize(f, grid, deriv="dtheta")
    f_lm = synthesize(f, grid, deriv="dlambda_over_sin")
    got = (adjoint_analyze(f_th, grid, L, "dtheta")
           + adjoint_analyze(f_lm, grid, L, "dlambda_over_sin"))
    ll = np.arange(L + 1) * (np.arange(L + 1) + 1.0)
    want = f.coeffs * ll[:, None]
    assert np.max(np.abs(got - want)) < 1e-11


def test_laplacian_matches_frame_second_derivatives():
    # Delta f = -(v1^2 + v2^2 + v3^2) f on invariant functions, by FD
    rng = np.random.default_rng(2)
    f = SpectralFunction.random(3, rng)
    raw = rng.standard_normal(4)
    q = raw / np.linalg.norm(raw)
    fd = -sum(geometry.frame_second_derivative(f, axis, q) for axis in range(3))
    want = f.laplacian().pullback(q)
    assert abs(fd - want) < 1e-8


def test_laplace_scale_snapped():
    assert laplace_scale() == 2.0
    assert eigenvalue(1) == 4.0
    assert eigenvalue(3) == 24.0
    assert Spectrum.up_to(2).alpha.tolist() == [0.0, 4.0, 12.0]
    assert Spectrum.up_to(2).moment(1) == 5.0


def test_product_exact_at_degree_sum():
    rng = np.random.default_rng(3)
    f = SpectralFunction.random(3, rng)
    h = SpectralFunction.random(4, rng)
    p = product(f, h)
    grid = SphereGrid.for_degree(9)
    direct = synthesize(f, grid) * synthesize(h, grid)
    assert np.max(np.abs(synthesize(p.padded(9), grid) - direct)) < 1e-11


def test_inner_M_is_quadrature_integral():
    rng = np.random.default_rng(4)
    f = SpectralFunction.random(5, rng)
    h = SpectralFunction.random(5, rng)
    quad = geometry.QuadratureS3.build(7, 14, 2)
    vals = f.pullback(quad.nodes) * h.pullback(quad.nodes)
    want = float(np.dot(quad.weights, vals))
    assert abs(inner_M(f, h) - want) < 1e-10


def test_mean_and_norm_relations():
    f = SpectralFunction.constant(2.5)
    assert abs(f.mean_M() - 2.5) < 1e-14
    assert abs(inner_M(f, f) - 2.5 ** 2 * geometry.VOL_S3) < 1e-10
    g = f.mean_free()
    assert g.norm_base() == 0.0
    assert f.mean_zero() is False or f.mean_zero() == False  # noqa: E712


def test_triples_round_trip_and_slices():
    f = SpectralFunction.from_triples([(0, 0, 1.0), (2, -1, -0.5), (3, 3, 2.0)])
    assert f.L == 3
    assert sorted(f.to_triples()) == [(0, 0, 1.0), (2, -1, -0.5), (3, 3, 2.0)]
    assert np.allclose(f.degree_slice(2), [0.0, -0.5, 0.0, 0.0, 0.0])
    assert f.truncated(1).L == 1
    assert f.padded(5).trimmed().L == 3
    with pytest.raises(ValueError):
        SpectralFunction.from_triples([(1, 2, 1.0)])


def test_inverse_laplacian_domain():
    f = SpectralFunction.constant(1.0)
    with pytest.raises(ValueError):
        f.inverse_laplacian()
    g = SpectralFunction.mode(2, 1)
    back = g.laplacian().inverse_laplacian()
    assert np.max(np.abs(back.coeffs - g.coeffs)) < 1e-14


def test_pullback_matches_section_grid():
    rng = np.random.default_rng(5)
    f = SpectralFunction.random(4, rng)
    grid = SphereGrid.for_degree(4)
    vals = f.to_grid(grid).values
    th, lam = np.meshgrid(grid.theta, grid.lam, indexing="ij")
    pts = geometry.section_lift(th.ravel(), lam.ravel())
    direct = f.pullback(pts).reshape(vals.shape)
    assert np.max(np.abs(direct - vals)) < 1e-12


def test_fiber_invariance_of_pullback():
    # pullbacks are constant along Hopf fibers
    rng = np.random.default_rng(6)
    f = SpectralFunction.random(4, rng)
    raw = rng.standard_normal(4)
    q = raw / np.linalg.norm(raw)
    circle = geometry.quat_circle(q, 0, np.linspace(0.0, 2.0 * np.pi, 9))
    vals = f.pullback(circle)
    assert np.max(np.abs(vals - vals[0])) < 1e-12
