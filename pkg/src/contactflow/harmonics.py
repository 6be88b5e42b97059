"""Spectral engine on the Hopf base sphere.

Reeb-invariant functions on S^3 descend to the quotient 2-sphere; this
module carries them as real spherical-harmonic coefficients and supplies
the forward/inverse transforms, tangential derivatives, and the diagonal
operators Delta, D = 1 + Delta, D^-1, Delta^-1.

Basis: Y_l0 = Pbar_l0 / sqrt(2 pi), Y_lm^cos = Pbar_lm cos(m lam)/sqrt(pi),
Y_lm^sin = Pbar_lm sin(m lam)/sqrt(pi), with Pbar normalized so that
int_{-1}^{1} Pbar_lm^2 dx = 1; the basis is orthonormal in L^2(S^2).
Coefficients are stored densely as coeffs[l, L + m], sin components at
negative m.

The M-Laplacian eigenvalue on degree-l pullbacks is alpha_l = scale*l(l+1)
with the scale measured once against the frame-derivative oracle of the
geometry module and snapped to the nearest integer (the eigenvalues of the
calibrated metric are integers); it is stored, never hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry

SQRT_PI = np.sqrt(np.pi)
SQRT_2PI = np.sqrt(2.0 * np.pi)
SQRT_4PI = np.sqrt(4.0 * np.pi)


def legendre_tables(x, L):
    """Normalized associated Legendre tables at abscissas x = cos(theta).

    Returns (P, dP, Q) with shape (L+1, L+1, len(x)):
    P[l, m] = Pbar_lm(x); dP[l, m] = d/dtheta Pbar_lm(cos theta);
    Q[l, m] = Pbar_lm / sin(theta) for m >= 1 (identically zero at m = 0).
    All three use division-free recurrences, so the tables are finite at
    the poles.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = x.shape[0]
    s = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    P = np.zeros((L + 1, L + 1, n))
    dP = np.zeros((L + 1, L + 1, n))
    Q = np.zeros((L + 1, L + 1, n))

    P[0, 0] = 1.0 / np.sqrt(2.0)
    for m in range(1, L + 1):
        cmm = np.sqrt((2.0 * m + 1.0) / (2.0 * m))
        P[m, m] = cmm * s * P[m - 1, m - 1]
        dP[m, m] = cmm * (x * P[m - 1, m - 1] + s * dP[m - 1, m - 1])
        if m == 1:
            Q[1, 1] = np.sqrt(3.0) / 2.0
        else:
            Q[m, m] = cmm * s * Q[m - 1, m - 1]
    for m in range(0, L + 1):
        if m + 1 <= L:
            c = np.sqrt(2.0 * m + 3.0)
            P[m + 1, m] = c * x * P[m, m]
            dP[m + 1, m] = c * (-s * P[m, m] + x * dP[m, m])
            Q[m + 1, m] = c * x * Q[m, m]
        for l in range(m + 2, L + 1):
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            P[l, m] = a * (x * P[l - 1, m] - b * P[l - 2, m])
            dP[l, m] = a * (-s * P[l - 1, m] + x * dP[l - 1, m] - b * dP[l - 2, m])
            Q[l, m] = a * (x * Q[l - 1, m] - b * Q[l - 2, m])
    return P, dP, Q


class SphereGrid:
    """Gauss-Legendre (colatitude) x equiangular (longitude) grid.

    for_degree(L) builds a grid on which analysis of band-L functions is
    quadrature-exact and synthesis of any degree <= L is alias-free; this
    exceeds the 3/2-rule resolution for quadratic products at the same L.
    """

    def __init__(self, nlat, nlon):
        if nlat < 1 or nlon < 2:
            raise ValueError("grid must have nlat >= 1, nlon >= 2")
        self.nlat = nlat
        self.nlon = nlon
        x, w = np.polynomial.legendre.leggauss(nlat)
        self.x = x
        self.w = w
        self.theta = np.arccos(x)
        self.lam = 2.0 * np.pi * np.arange(nlon) / nlon
        self._tables = {}
        self._tables_L = -1

    @classmethod
    def for_degree(cls, L):
        return cls(L + 1, 2 * L + 2)

    @classmethod
    def for_integration(cls, deg_integrand, deg_synth):
        """Grid integrating degree-deg_integrand spherical polynomials exactly
        while staying alias-free for synthesis up to deg_synth."""
        nlat = deg_integrand // 2 + 1
        nlon = max(deg_integrand + 1, 2 * deg_synth + 2)
        nlon += nlon % 2
        return cls(nlat, nlon)

    def tables(self, L):
        if L > self._tables_L:
            self._tables = dict(zip(("P", "dP", "Q"), legendre_tables(self.x, L)))
            self._tables_L = L
        if L == self._tables_L:
            return self._tables
        return {k: v[: L + 1, : L + 1] for k, v in self._tables.items()}

    def integrate(self, values):
        """Integral over the unit sphere (dOmega)."""
        return float(self.w @ np.sum(values, axis=1)) * (2.0 * np.pi / self.nlon)

    def quad_weights(self):
        return self.w[:, None] * (2.0 * np.pi / self.nlon) * np.ones((1, self.nlon))


@dataclass(frozen=True)
class GridFunction:
    """Point values on a SphereGrid (the pseudo-spectral workspace)."""
    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.nlat, self.grid.nlon):
            raise ValueError("values shape does not match the grid")
        object.__setattr__(self, "values", v)

    def integrate(self):
        return self.grid.integrate(self.values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            if other.grid is not self.grid:
                raise ValueError("grid mismatch in product")
            return GridFunction(self.grid, self.values * other.values)
        return GridFunction(self.grid, self.values * float(other))

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# Laplace spectrum, measured once against the geometry oracle

_SCALE = None


def laplace_scale():
    """Eigenvalue scale: alpha_l = laplace_scale() * l * (l+1).

    Measured from the frame-derivative Laplacian on a degree-1 pullback and
    snapped to the nearest integer.  Calibration yields 2 (alpha_1 = 4).
    """
    global _SCALE
    if _SCALE is None:
        measured = geometry.measure_laplace_eigenvalue_degree1() / 2.0
        snapped = round(measured)
        if abs(measured - snapped) > 1e-6:
            raise RuntimeError(
                "measured Laplace scale %r is not near an integer" % measured)
        _SCALE = float(snapped)
    return _SCALE


@dataclass(frozen=True)
class Spectrum:
    """alpha_l table for 0 <= l <= L (strictly increasing, alpha_0 = 0)."""
    alpha: np.ndarray

    @classmethod
    def up_to(cls, L):
        l = np.arange(L + 1, dtype=float)
        return cls(laplace_scale() * l * (l + 1.0))

    def moment(self, l):
        """Moment of inertia 1 + alpha_l of the operator 1 + Delta."""
        return 1.0 + self.alpha[l]


def eigenvalue(l):
    return laplace_scale() * l * (l + 1.0)


def _alpha_per_degree(L):
    l = np.arange(L + 1, dtype=float)
    return laplace_scale() * l * (l + 1.0)


# ---------------------------------------------------------------------------

class SpectralFunction:
    """A Reeb-invariant function on S^3 in base spherical-harmonic form.

    coeffs[l, L + m]: cos components at m >= 0, sin components at m < 0.
    All operations return new objects; nothing here mutates.
    """

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[1] != 2 * coeffs.shape[0] - 1:
            raise ValueError("coefficient array must have shape (L+1, 2L+1)")
        self.coeffs = coeffs
        self.L = coeffs.shape[0] - 1

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, L):
        return cls(np.zeros((L + 1, 2 * L + 1)))

    @classmethod
    def constant(cls, c):
        f = cls.zeros(0)
        f.coeffs[0, 0] = float(c) * SQRT_4PI
        return f

    @classmethod
    def mode(cls, l, m, value=1.0, L=None):
        """A single basis coefficient (l, m); sin branch for m < 0."""
        if L is None:
            L = l
        if not (0 <= l <= L and -l <= m <= l):
            raise ValueError("mode indices out of range")
        f = cls.zeros(L)
        f.coeffs[l, L + m] = value
        return f

    @classmethod
    def random(cls, L, rng, lmin=0, scale=1.0):
        """Gaussian coefficients over lmin <= l <= L (triangular support)."""
        c = np.zeros((L + 1, 2 * L + 1))
        for l in range(lmin, L + 1):
            c[l, L - l:L + l + 1] = rng.normal(size=2 * l + 1)
        return cls(scale * c)

    @classmethod
    def from_triples(cls, triples, L=None):
        """Build from (l, m, value) triples."""
        triples = list(triples)
        if L is None:
            L = max((int(l) for l, _, _ in triples), default=0)
        f = cls.zeros(L)
        for l, m, v in triples:
            l, m = int(l), int(m)
            if not (0 <= l <= L and -l <= m <= l):
                raise ValueError("triple (%d, %d) out of range" % (l, m))
            f.coeffs[l, L + m] = float(v)
        return f

    def to_triples(self, drop_tol=0.0):
        out = []
        for l in range(self.L + 1):
            for m in range(-l, l + 1):
                v = self.coeffs[l, self.L + m]
                if abs(v) > drop_tol:
                    out.append((l, m, float(v)))
        return out

    # -- structure ----------------------------------------------------------

    def padded(self, L):
        if L < self.L:
            raise ValueError("cannot pad to a smaller band limit")
        if L == self.L:
            return self
        c = np.zeros((L + 1, 2 * L + 1))
        c[: self.L + 1, L - self.L: L + self.L + 1] = self.coeffs
        return SpectralFunction(c)

    def truncated(self, L):
        if L >= self.L:
            return self.padded(L)
        c = self.coeffs[: L + 1, self.L - L: self.L + L + 1].copy()
        return SpectralFunction(c)

    def trimmed(self, tol=0.0):
        """Drop trailing degrees whose coefficients are all <= tol."""
        L = self.L
        while L > 0 and np.max(np.abs(self.coeffs[L])) <= tol:
            L -= 1
        return self.truncated(L)

    def degree_slice(self, l):
        return self.coeffs[l, self.L - l: self.L + l + 1]

    # -- algebra -------------------------------------------------------------

    def __add__(self, other):
        L = max(self.L, other.L)
        return SpectralFunction(self.padded(L).coeffs + other.padded(L).coeffs)

    def __sub__(self, other):
        L = max(self.L, other.L)
        return SpectralFunction(self.padded(L).coeffs - other.padded(L).coeffs)

    def __mul__(self, c):
        return SpectralFunction(self.coeffs * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return SpectralFunction(-self.coeffs)

    # -- diagonal operators ---------------------------------------------------

    def _alpha_column(self):
        return _alpha_per_degree(self.L)[:, None]

    def laplacian(self):
        return SpectralFunction(self.coeffs * self._alpha_column())

    def helmholtz(self):
        """D f = (1 + Delta) f."""
        return SpectralFunction(self.coeffs * (1.0 + self._alpha_column()))

    def inverse_helmholtz(self):
        """D^-1 f."""
        return SpectralFunction(self.coeffs / (1.0 + self._alpha_column()))

    def inverse_laplacian(self):
        """Delta^-1 f; defined only on mean-zero input."""
        if not self.mean_zero():
            raise ValueError("inverse_laplacian requires a mean-zero function")
        inv = np.zeros((self.L + 1, 1))
        alpha = self._alpha_column()
        inv[1:] = 1.0 / alpha[1:]
        c = self.coeffs * inv
        c[0, self.L] = 0.0
        return SpectralFunction(c)

    # -- means and norms -------------------------------------------------------

    def mean_M(self):
        """Mean over S^3 with respect to dmu."""
        return float(self.coeffs[0, self.L]) / SQRT_4PI

    def mean_zero(self, tol=1e-12):
        return abs(self.coeffs[0, self.L]) <= tol * max(1.0, self.norm_base())

    def mean_free(self):
        """The projection onto mean-zero functions (degree 0 dropped)."""
        c = self.coeffs.copy()
        c[0, self.L] = 0.0
        return SpectralFunction(c)

    def norm_base(self):
        return float(np.linalg.norm(self.coeffs))

    def norm_M(self):
        """L^2(M) norm: the fibre factor converts base Parseval to M."""
        return np.sqrt(geometry.FIBER_FACTOR) * self.norm_base()

    # -- evaluation -------------------------------------------------------------

    def to_grid(self, grid, deriv=None):
        return GridFunction(grid, synthesize(self, grid, deriv=deriv))

    def evaluate_base(self, theta, lam, deriv=None):
        """Scattered evaluation at colatitude/longitude arrays."""
        theta = np.asarray(theta, dtype=float)
        lam = np.asarray(lam, dtype=float)
        shape = np.broadcast(theta, lam).shape
        th = np.broadcast_to(theta, shape).ravel()
        lm = np.broadcast_to(lam, shape).ravel()
        P, dP, Q = legendre_tables(np.cos(th), self.L)
        L = self.L
        m_arr = np.arange(1, L + 1)
        cosm = np.cos(m_arr[:, None] * lm[None, :])
        sinm = np.sin(m_arr[:, None] * lm[None, :])
        if deriv is None:
            vals = self.coeffs[:, L] @ P[:, 0] / SQRT_2PI
            for m in range(1, L + 1):
                am = self.coeffs[m:, L + m] @ P[m:, m] / SQRT_PI
                bm = self.coeffs[m:, L - m] @ P[m:, m] / SQRT_PI
                vals += am * cosm[m - 1] + bm * sinm[m - 1]
        elif deriv == "dtheta":
            vals = self.coeffs[:, L] @ dP[:, 0] / SQRT_2PI
            for m in range(1, L + 1):
                am = self.coeffs[m:, L + m] @ dP[m:, m] / SQRT_PI
                bm = self.coeffs[m:, L - m] @ dP[m:, m] / SQRT_PI
                vals += am * cosm[m - 1] + bm * sinm[m - 1]
        elif deriv == "dlambda_over_sin":
            vals = np.zeros_like(th)
            for m in range(1, L + 1):
                am = m * (self.coeffs[m:, L - m] @ Q[m:, m]) / SQRT_PI
                bm = -m * (self.coeffs[m:, L + m] @ Q[m:, m]) / SQRT_PI
                vals += am * cosm[m - 1] + bm * sinm[m - 1]
        else:
            raise ValueError("unknown derivative tag %r" % deriv)
        return vals.reshape(shape)

    def pullback(self, q):
        """Values of the Reeb-invariant extension at S^3 points (..., 4)."""
        theta, lam = geometry.hopf_angles(q)
        return self.evaluate_base(theta, lam)

    def surface_gradient(self, q):
        """(d_theta F, (1/sin) d_lambda F) at the Hopf images of S^3 points."""
        theta, lam = geometry.hopf_angles(q)
        return (self.evaluate_base(theta, lam, deriv="dtheta"),
                self.evaluate_base(theta, lam, deriv="dlambda_over_sin"))


# ---------------------------------------------------------------------------
# transforms

def synthesize(f, grid, deriv=None):
    """Values of f (or a tangential derivative) on a SphereGrid.

    deriv: None for the function itself, "dtheta" for d/dtheta,
    "dlambda_over_sin" for (1/sin theta) d/dlambda; the latter two are the
    ingredients of every frame derivative on the base.
    """
    L = f.L
    nlat, nlon = grid.nlat, grid.nlon
    if nlon < 2 * L + 2:
        raise ValueError("grid too coarse in longitude for degree %d" % L)
    tabs = grid.tables(L)
    C = np.zeros((nlat, nlon // 2 + 1), dtype=complex)
    if deriv is None or deriv == "dtheta":
        T = tabs["P"] if deriv is None else tabs["dP"]
        C[:, 0] = (f.coeffs[:, L] @ T[:, 0]) * (nlon / SQRT_2PI)
        for m in range(1, L + 1):
            am = f.coeffs[m:, L + m] @ T[m:, m] / SQRT_PI
            bm = f.coeffs[m:, L - m] @ T[m:, m] / SQRT_PI
            C[:, m] = (am - 1j * bm) * (nlon / 2.0)
    elif deriv == "dlambda_over_sin":
        Q = tabs["Q"]
        for m in range(1, L + 1):
            am = m * (f.coeffs[m:, L - m] @ Q[m:, m]) / SQRT_PI
            bm = -m * (f.coeffs[m:, L + m] @ Q[m:, m]) / SQRT_PI
            C[:, m] = (am - 1j * bm) * (nlon / 2.0)
    else:
        raise ValueError("unknown derivative tag %r" % deriv)
    return np.fft.irfft(C, n=nlon, axis=1)


def analyze(g, L=None):
    """Project a GridFunction onto the basis up to degree L.

    Exact (to round-off) whenever the underlying function is band-limited
    within the grid's analysis degree.
    """
    grid, values = g.grid, g.values
    if L is None:
        L = grid.nlat - 1
    if grid.nlat < L + 1:
        raise ValueError("grid too coarse in latitude to analyze degree %d" % L)
    if grid.nlon < 2 * L + 2:
        raise ValueError("grid too coarse in longitude to analyze degree %d" % L)
    C = np.fft.rfft(values, axis=1) * (2.0 * np.pi / grid.nlon)
    P = grid.tables(L)["P"]
    coeffs = np.zeros((L + 1, 2 * L + 1))
    coeffs[:, L] = P[:, 0] @ (grid.w * C[:, 0].real) / SQRT_2PI
    for m in range(1, L + 1):
        coeffs[m:, L + m] = P[m:, m] @ (grid.w * C[:, m].real) / SQRT_PI
        coeffs[m:, L - m] = P[m:, m] @ (grid.w * -C[:, m].imag) / SQRT_PI
    return SpectralFunction(coeffs)


def adjoint_analyze(values, grid, L, deriv):
    """Coefficient functionals c[l,m] = <values, deriv(Y_lm)>_{S^2}.

    deriv is "dtheta" or "dlambda_over_sin"; this is the quadrature adjoint
    of the corresponding synthesis, the workhorse of integration by parts
    on the base (no pole terms: the test functions carry the sin factors).
    """
    C = np.fft.rfft(values, axis=1) * (2.0 * np.pi / grid.nlon)
    tabs = grid.tables(L)
    coeffs = np.zeros((L + 1, 2 * L + 1))
    if deriv == "dtheta":
        dP = tabs["dP"]
        coeffs[:, L] = dP[:, 0] @ (grid.w * C[:, 0].real) / SQRT_2PI
        for m in range(1, L + 1):
            coeffs[m:, L + m] = dP[m:, m] @ (grid.w * C[:, m].real) / SQRT_PI
            coeffs[m:, L - m] = dP[m:, m] @ (grid.w * -C[:, m].imag) / SQRT_PI
    elif deriv == "dlambda_over_sin":
        Q = tabs["Q"]
        # (1/s) d_lambda Y_lm^cos = -m Q_lm sin(m lam)/sqrt(pi), and
        # (1/s) d_lambda Y_lm^sin = +m Q_lm cos(m lam)/sqrt(pi)
        for m in range(1, L + 1):
            gs = grid.w * -C[:, m].imag
            gc = grid.w * C[:, m].real
            coeffs[m:, L + m] = -m * (Q[m:, m] @ gs) / SQRT_PI
            coeffs[m:, L - m] = m * (Q[m:, m] @ gc) / SQRT_PI
    else:
        raise ValueError("unknown derivative tag %r" % deriv)
    return coeffs


def product(f, h):
    """Exact pointwise product: band limit grows to f.L + h.L."""
    D = f.L + h.L
    grid = SphereGrid.for_degree(D)
    vals = synthesize(f, grid) * synthesize(h, grid)
    return analyze(GridFunction(grid, vals), D)


def inner_base(f, h):
    """<F, H> over the base sphere (Parseval)."""
    L = max(f.L, h.L)
    return float(np.sum(f.padded(L).coeffs * h.padded(L).coeffs))


def inner_M(f, h):
    """int_M f h dmu = fibre factor times the base pairing."""
    return geometry.FIBER_FACTOR * inner_base(f, h)
