"""Acceptance suite: eleven end-to-end checks, one test per criterion.

Each test prints a single PASS line with the measured figures (visible
with pytest -s; pytest -v shows the per-criterion verdict either way).
Tolerances and sample counts are fixed and asserted directly, not relaxed.
"""

import json
import subprocess
import sys
import time

import numpy as np

from contactflow import geometry
from contactflow.bracket import (
    ad_invariance_residual,
    basis_function,
    basis_size,
    jacobi_residual,
    structure_constants,
    verify_homomorphism,
)
from contactflow.curvature import (
    SectionPlane,
    k_biinvariant,
    k_eigen,
    k_right_invariant,
    k_structural,
    structural_sign,
)
from contactflow.flow import FlowState, IntegratorConfig, evolve, relative_drift, stationarity_residual
from contactflow.harmonics import SpectralFunction
from contactflow.metrics import MetricKind, metric_relation_residual
from contactflow.rot3d import rot_report

CLI = [sys.executable, "-m", "contactflow.cli"]


def _pairs(rng, n, degree, lmin=0):
    for _ in range(n):
        yield (SpectralFunction.random(degree, rng, lmin=lmin),
               SpectralFunction.random(degree, rng, lmin=lmin))


def test_criterion_01_axiom_suite():
    t0 = time.monotonic()
    report = geometry.verify_axioms(n_points=1000, seed=0, tol=1e-10)
    elapsed = time.monotonic() - t0
    assert len(report) == 14
    worst = max(c.max_residual for c in report)
    for check in report:
        assert check.passed, "%s residual %g" % (check.property_id,
                                                 check.max_residual)
    assert elapsed < 10.0, "axiom suite took %.1fs" % elapsed
    print("CRITERION 1: PASS - 14 properties at 1000 points, "
          "max residual %.2e, %.1fs" % (worst, elapsed))


def test_criterion_02_algebra_homomorphism():
    rng = np.random.default_rng(10)
    worst = 0.0
    for f, h in _pairs(rng, 50, 2):
        res = verify_homomorphism(f.padded(8), h.padded(8), n_points=4, seed=17)
        worst = max(worst, res)
    assert worst < 1e-6, worst
    print("CRITERION 2: PASS - homomorphism residual %.2e over 50 pairs" % worst)


def test_criterion_03_jacobi_identity():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(50):
        f = SpectralFunction.random(2, rng)
        h = SpectralFunction.random(2, rng)
        k = SpectralFunction.random(2, rng)
        worst = max(worst, jacobi_residual(f, h, k))
    assert worst < 1e-8, worst
    print("CRITERION 3: PASS - Jacobi residual %.2e over 50 triples" % worst)


def test_criterion_04_metric_relation():
    rng = np.random.default_rng(12)
    worst = 0.0
    for f, h in _pairs(rng, 100, 3):
        worst = max(worst, metric_relation_residual(f, h))
    assert worst < 1e-9, worst
    print("CRITERION 4: PASS - metric relation residual %.2e over 100 pairs"
          % worst)


def test_criterion_05_biinvariance():
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(100):
        k = SpectralFunction.random(2, rng)
        f = SpectralFunction.random(2, rng)
        h = SpectralFunction.random(2, rng)
        worst = max(worst, ad_invariance_residual(k, f, h))
    assert worst < 1e-9, worst
    print("CRITERION 5: PASS - pairing ad-invariance residual %.2e "
          "over 100 triples" % worst)


def test_criterion_06_flow_conservation():
    t0 = time.monotonic()
    rng = np.random.default_rng(21)
    base = SpectralFunction.random(2, rng, lmin=1)
    f = base * (15.0 / base.norm_M())
    h0 = f.helmholtz().padded(8)

    def drifts(dt):
        cfg = IntegratorConfig(dt=dt, t_end=1.0, invariant_sample_stride=100,
                               k_max=3)
        result = evolve(FlowState(h0, 0.0), cfg)
        return (relative_drift(result.energy),
                relative_drift(result.casimirs[:, 1]),
                relative_drift(result.casimirs[:, 2]))

    dT, dI2, dI3 = drifts(1e-3)
    assert dT < 1e-6 and dI2 < 1e-6 and dI3 < 1e-6, (dT, dI2, dI3)
    _, _, dI3_coarse = drifts(2e-3)
    ratio = dI3_coarse / dI3
    assert 10.0 <= ratio <= 22.0, ratio
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0, "flow runs took %.1fs" % elapsed
    print("CRITERION 6: PASS - drift T %.1e, I2 %.1e, I3 %.1e; "
          "dt-halving ratio %.1f; %.1fs" % (dT, dI2, dI3, ratio, elapsed))


def test_criterion_07_eigenmode_equilibria():
    worst_res = 0.0
    worst_move = 0.0
    for l, m in [(1, 0), (1, -1), (2, 1), (3, -3)]:
        h = SpectralFunction.mode(l, m)
        worst_res = max(worst_res, stationarity_residual(h))
        cfg = IntegratorConfig(dt=1e-2, t_end=0.05)
        result = evolve(FlowState(h.padded(4), 0.0), cfg)
        moved = np.max(np.abs(result.states[-1].h.coeffs
                              - h.padded(4).coeffs))
        worst_move = max(worst_move, float(moved))
    assert worst_res < 1e-12, worst_res
    assert worst_move < 1e-12, worst_move
    print("CRITERION 7: PASS - stationarity %.1e, evolution drift %.1e"
          % (worst_res, worst_move))


def test_criterion_08_curvature_consistency():
    rng = np.random.default_rng(14)
    worst_gap = 0.0
    for _ in range(20):
        lf, lh = rng.integers(1, 4, size=2)
        f = SpectralFunction.zeros(int(lf))
        f.coeffs[lf, :] = rng.standard_normal(2 * int(lf) + 1)
        h = SpectralFunction.zeros(int(lh))
        h.coeffs[lh, :] = rng.standard_normal(2 * int(lh) + 1)
        sig = SectionPlane(f, h, MetricKind.RIGHT_INVARIANT)
        kd = k_right_invariant(sig, "direct")
        ka = k_right_invariant(sig, "assembled")
        ke = k_eigen(f, h)
        worst_gap = max(worst_gap, abs(kd - ka), abs(kd - ke), abs(ka - ke))
        assert k_biinvariant(SectionPlane(f, h, MetricKind.BI_INVARIANT)) >= 0.0
    assert worst_gap < 1e-8, worst_gap
    # general mixed planes keep the quarter-square sign
    for f, h in _pairs(rng, 5, 3):
        assert k_biinvariant(SectionPlane(f, h, MetricKind.BI_INVARIANT)) >= 0.0
    # planes containing the Reeb direction are flat in both metrics
    c = SpectralFunction.constant(1.0)
    worst_reeb = 0.0
    for _ in range(5):
        h = SpectralFunction.random(3, rng)
        kb = k_biinvariant(SectionPlane(c, h, MetricKind.BI_INVARIANT))
        ke = k_right_invariant(SectionPlane(c, h, MetricKind.RIGHT_INVARIANT),
                               "direct")
        worst_reeb = max(worst_reeb, abs(kb), abs(ke))
    assert worst_reeb < 1e-10, worst_reeb
    print("CRITERION 8: PASS - three-path gap %.2e on 20 eigen-pairs, "
          "Reeb-plane residual %.2e" % (worst_gap, worst_reeb))


def test_criterion_09_structural_sign():
    sign = structural_sign()   # raises if neither sign matches the reference
    table = structure_constants(3)
    rng = np.random.default_rng(15)
    worst = 0.0
    for _ in range(20):
        j, k = rng.choice(np.arange(1, basis_size(3)), size=2, replace=False)
        ks = k_structural(table, int(j), int(k))
        ke = k_eigen(basis_function(int(j)), basis_function(int(k)))
        assert abs(abs(ks) - abs(ke)) < 1e-8, (j, k, ks, ke)
        worst = max(worst, abs(ks - ke))
    assert worst < 1e-8, worst
    print("CRITERION 9: PASS - resolved sign %+d, structural-vs-eigen gap "
          "%.2e on 20 pairs" % (sign, worst))


def test_criterion_10_curl_suite():
    t0 = time.monotonic()
    report = rot_report(L=6, seed=0, n_pairs=100)
    elapsed = time.monotonic() - t0
    tol_by_name = {
        "reeb_field_fixed_point": 1e-8,
        "contact_curl_closed_form": 1e-6,
        "gradient_fields_curl_free": 1e-6,
        "inverse_round_trip": 1e-6,
        "inverse_divergence_free": 1e-6,
        "pairing_ratio_minus_three": 1e-8,
        "reeb_norm_is_volume": 1e-8,
    }
    assert {c["name"] for c in report} == set(tol_by_name)
    for check in report:
        assert check["tolerance"] == tol_by_name[check["name"]]
        assert check["passed"], check
    assert elapsed < 120.0, "curl suite took %.1fs" % elapsed
    worst = max(c["max_residual"] / c["tolerance"] for c in report)
    print("CRITERION 10: PASS - 7 curl checks, worst residual at %.1e of "
          "tolerance, %.1fs" % (worst, elapsed))


def test_criterion_11_cli_determinism(tmp_path):
    def run(args):
        return subprocess.run(CLI + list(args), capture_output=True, text=True)

    jobs = [
        ["calibrate"],
        ["rot", "--L", "4", "--seed", "2"],
        ["axioms", "--n-points", "60", "--seed", "4"],
        ["evolve", "--L", "4", "--dt", "0.01", "--t-end", "0.05",
         "--init", "1,1,1.5;2,-1,0.5", "--k-max", "3"],
        ["curvature", "--degree-cutoff", "1"],
        ["brackets", "--L", "2"],
    ]
    for args in jobs:
        a, b = run(args), run(args)
        assert a.returncode == b.returncode == 0, (args, a.stderr)
        assert a.stdout == b.stdout, "nondeterministic output for %s" % args
    cfg = tmp_path / "run.cfg"
    cfg.write_text("command = rot\nL = 3\nseed = 6\n")
    a = run(["--config", str(cfg)])
    b = run(["--config", str(cfg)])
    assert a.stdout == b.stdout and a.returncode == 0
    print("CRITERION 11: PASS - byte-identical reruns across %d configs"
          % (len(jobs) + 1))
