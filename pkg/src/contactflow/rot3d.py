"""Curl on the contact 3-sphere and the volume-preserving pairing.

rot is the operator with omega_{rot X} = * d omega_X for the calibrated
metric, orientation, and volume mu = theta ^ dtheta.  Three routes coexist:

  * curl(X): the production path, which reads the frame-component grids of
    X over the section and recovers the curl's potentials by adjoint
    quadrature (gradient parts drop out exactly, as curl annihilates them);
  * contact_curl(f) / curl_inverse_contact(f): closed forms on contact
    fields, rot X_f = (f - Delta f) xi + phi grad f and its right inverse
    rot^-1 X_f = -f xi + 2 phi grad(Delta^-1 f);
  * curl_fd(X, points): a pointwise finite-difference oracle built only on
    frame derivatives of the metric components, sharing no code with the
    spectral path.

The pairing <X_f, X_h> = int g(rot^-1 X_f, X_h) dmu makes the fields of
mean-zero Hamiltonians a negative-definite block: the ratio against the
flat Hamiltonian pairing is exactly -3.  The Reeb field itself is a fixed
point of rot, so its pairing branch returns the volume of the sphere.
"""

from __future__ import annotations

import numpy as np

from . import geometry
from .fields import FrameField, contact_field, contact_field_at
from .geometry import SQRT2
from .harmonics import (
    SpectralFunction,
    SphereGrid,
    adjoint_analyze,
    analyze,
    synthesize,
)


def curl(X, L_out=None):
    """Curl of an invariant field from its component data.

    The xi-component of rot X picks up the plane components through the
    adjoint of the surface gradient; the phi-grad potential of rot X is the
    mean-free part of the xi-component of X.  Exact for band limit <= L_out.
    """
    L = X.degree if L_out is None else L_out
    grid = SphereGrid.for_degree(max(X.degree, L))
    A, B, C = X.components(grid)
    a_spec = analyze(A, L)
    adj_B_th = adjoint_analyze(B.values, grid, L, "dtheta")
    adj_C_lm = adjoint_analyze(C.values, grid, L, "dlambda_over_sin")
    a_new = SpectralFunction(a_spec.coeffs - SQRT2 * (adj_B_th + adj_C_lm))
    w_new = a_spec.mean_free()
    return FrameField(a_new, 0.0, w_new)


def contact_curl(f):
    """Closed form rot X_f = (f - Delta f) xi + phi grad f."""
    f = f if isinstance(f, SpectralFunction) else SpectralFunction.constant(float(f))
    return FrameField(f - f.laplacian(), 0.0, f.mean_free())


def curl_inverse_contact(f):
    """The divergence-free field with rot = X_f, for mean-zero f.

    Returns -f xi + 2 phi grad(Delta^-1 f).  The mean-zero restriction is
    structural: constants are handled by the fixed point rot xi = xi.
    """
    f = f if isinstance(f, SpectralFunction) else SpectralFunction.constant(float(f))
    if not f.mean_zero():
        raise ValueError("curl_inverse_contact needs a mean-zero Hamiltonian")
    return FrameField(-1.0 * f, 0.0, 2.0 * f.inverse_laplacian())


def curl_fd(X, points, step=geometry.FD_STEP):
    """Finite-difference curl oracle at quaternion points, ambient values.

    Uses only the frame formulas
        (rot X)_1 = x_1 - (v2 x_3 - v3 x_2)
        (rot X)_2 = 2 x_2 - (v3 x_1 - v1 x_3)
        (rot X)_3 = 2 x_3 - (v1 x_2 - v2 x_1)
    on the metric components x_i = g(X, v_i).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    comps = [X.component_callable(i) for i in range(3)]
    out = np.zeros_like(points)
    for n, q in enumerate(points):
        d = np.array([[geometry.frame_derivative(comps[j], i, q, step=step)
                       for j in range(3)] for i in range(3)])
        x = np.array([comps[j](q[None])[0] for j in range(3)])
        c1 = x[0] - (d[1, 2] - d[2, 1])
        c2 = 2.0 * x[1] - (d[2, 0] - d[0, 2])
        c3 = 2.0 * x[2] - (d[0, 1] - d[1, 0])
        v1, v2, v3 = geometry.unit_frame(q)
        out[n] = c1 * v1 + c2 * v2 + c3 * v3
    return out


def divergence_fd(X, points, step=geometry.FD_STEP):
    """Finite-difference divergence oracle: div X = sum_i v_i(x_i).

    The unit frame is divergence-free (unimodularity), so no frame terms.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    comps = [X.component_callable(i) for i in range(3)]
    return np.array([
        sum(geometry.frame_derivative(comps[i], i, q, step=step) for i in range(3))
        for q in points
    ])


def dmu_inner(f, h):
    """Volume-preserving pairing int g(rot^-1 X_f, X_h) dmu, by quadrature.

    The Hamiltonian f splits as constant + mean-zero; the constant rides on
    the fixed point rot xi = xi, the rest through the closed-form inverse.
    """
    f = f if isinstance(f, SpectralFunction) else SpectralFunction.constant(float(f))
    h = h if isinstance(h, SpectralFunction) else SpectralFunction.constant(float(h))
    c = f.mean_M()
    f0 = f.mean_free()
    if f0.norm_M() <= 1e-15 * max(1.0, abs(c)):
        pre = FrameField(SpectralFunction.constant(c), 0.0, 0.0)
    else:
        pre = FrameField(SpectralFunction.constant(c) - f0, 0.0,
                         2.0 * f0.inverse_laplacian())
    deg = pre.degree + h.L
    quad = geometry.QuadratureS3.build(deg // 2 + 1, deg + 2, 2)
    vals = geometry.metric(quad.nodes, pre.evaluate(quad.nodes),
                           contact_field_at(h, quad.nodes))
    return float(np.dot(quad.weights, vals))


# ---------------------------------------------------------------------------
# verification suite

def _ambient_residual(X, Y, points):
    return float(np.max(np.linalg.norm(X.evaluate(points) - Y.evaluate(points),
                                       axis=-1)))


def rot_report(L=6, seed=0, n_pairs=100, n_points=40):
    """Run the curl identity suite; a list of named residual checks."""
    from .metrics import biinvariant_inner

    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((n_points, 4))
    pts = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    checks = []

    def add(name, residual, tol):
        checks.append({"name": name, "max_residual": float(residual),
                       "tolerance": float(tol), "passed": bool(residual < tol)})

    # fixed point of rot at calibration points
    reeb = FrameField.reeb()
    add("reeb_field_fixed_point", _ambient_residual(curl(reeb), reeb, pts), 1e-8)

    # closed-form contact curl against the production path
    res_cf = 0.0
    res_grad = 0.0
    for _ in range(5):
        f = SpectralFunction.random(L, rng)
        res_cf = max(res_cf, _ambient_residual(curl(contact_field(f)),
                                               contact_curl(f), pts))
        u = SpectralFunction.random(L, rng)
        gz = curl(FrameField.gradient(u))
        res_grad = max(res_grad, _ambient_residual(gz, FrameField(0.0, 0.0, 0.0), pts))
    add("contact_curl_closed_form", res_cf, 1e-6)
    add("gradient_fields_curl_free", res_grad, 1e-6)

    # right inverse: rot(rot^-1 X_f) = X_f on mean-zero Hamiltonians
    res_rt = 0.0
    res_div = 0.0
    for _ in range(5):
        f0 = SpectralFunction.random(L, rng, lmin=1)
        Y = curl_inverse_contact(f0)
        res_rt = max(res_rt, _ambient_residual(curl(Y), contact_field(f0), pts))
        res_div = max(res_div, float(np.max(np.abs(divergence_fd(Y, pts[:8])))))
    add("inverse_round_trip", res_rt, 1e-6)
    add("inverse_divergence_free", res_div, 1e-6)

    # pairing ratio against the flat Hamiltonian pairing: exactly -3
    res_ratio = 0.0
    used = 0
    while used < n_pairs:
        f0 = SpectralFunction.random(L, rng, lmin=1)
        h0 = SpectralFunction.random(L, rng, lmin=1)
        denom = biinvariant_inner(f0, h0)
        if abs(denom) <= 1e-8:
            continue
        res_ratio = max(res_ratio, abs(dmu_inner(f0, h0) / denom + 3.0))
        used += 1
    add("pairing_ratio_minus_three", res_ratio, 1e-8)

    # both bi-invariant pairings give the Reeb field the volume of S^3
    one = SpectralFunction.constant(1.0)
    res_vol = max(abs(dmu_inner(one, one) - geometry.VOL_S3),
                  abs(biinvariant_inner(one, one) - geometry.VOL_S3))
    add("reeb_norm_is_volume", res_vol, 1e-8)

    return checks
