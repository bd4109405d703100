"""Numerical lcK geometry: Brunella's glued Kaehler potential and the
homogeneous Vaisman metric, verified pointwise by finite differences.

Points are complex arrays of shape (N, n). Nothing here is a proof; every
report carries the tolerances it was checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm, qmc

from .contraction import ResonantMap, conjugate_diagonal, invert, is_triangular_term, lee_coefficients
from .errors import HopfError, ParameterError, ValidationError
from .exact import GaussianRational
from .resonance import Multipliers

# ---------------------------------------------------------------------------
# sampling


def _sobol(d: int, count: int, seed: int) -> np.ndarray:
    # draw a power-of-two block (keeps the balance properties) and truncate
    k = max(0, math.ceil(math.log2(max(count, 1))))
    return qmc.Sobol(d=d, scramble=True, seed=seed).random_base2(k)[:count]


def sphere_points(n: int, count: int, seed: int = 0, radius: float = 1.0) -> np.ndarray:
    """Scrambled-Sobol points on the sphere of given radius in C^n."""
    u = _sobol(2 * n, count, seed)
    g = norm.ppf(np.clip(u, 1e-12, 1 - 1e-12))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return radius * (g[:, :n] + 1j * g[:, n:])


def shell_points(n: int, count: int, r_in: float, r_out: float, seed: int = 0) -> np.ndarray:
    u = _sobol(2 * n + 1, count, seed)
    g = norm.ppf(np.clip(u[:, : 2 * n], 1e-12, 1 - 1e-12))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = r_in + (r_out - r_in) * u[:, 2 * n]
    return r[:, None] * (g[:, :n] + 1j * g[:, n:])


def sphere_extremum(func, n: int, radius: float, sense: str = "max", samples: int = 4096,
                    seed: int = 0, refine: int = 8) -> float:
    """max (or min) of a real function on the sphere of given radius.

    Dense quasi-random sampling, then Nelder-Mead polishing of the best
    candidates in the ambient real coordinates, projected back to the sphere.
    """
    sign = -1.0 if sense == "max" else 1.0
    pts = sphere_points(n, samples, seed, radius)
    vals = sign * func(pts)
    best = float(vals.min())

    def objective(x):
        x = x / np.linalg.norm(x) * radius
        return sign * float(func((x[:n] + 1j * x[n:])[None, :])[0])

    for idx in np.argsort(vals)[:refine]:
        z = pts[idx]
        x0 = np.concatenate([z.real, z.imag])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000})
        best = min(best, float(res.fun))
    return sign * best


# ---------------------------------------------------------------------------
# finite differences


def _to_real(z):
    return np.concatenate([z.real, z.imag], axis=-1)


def _to_complex(x, n):
    return x[..., :n] + 1j * x[..., n:]


def real_hessian(func, z, h: float) -> np.ndarray:
    """Central-difference Hessian in real coordinates (Re z, Im z); shape (N, 2n, 2n)."""
    z = np.atleast_2d(z)
    n = z.shape[1]
    x = _to_real(z)
    d = 2 * n
    F = lambda y: func(_to_complex(y, n))  # noqa: E731
    f0 = F(x)
    R = np.empty((x.shape[0], d, d))
    E = np.eye(d) * h
    for a in range(d):
        fp, fm = F(x + E[a]), F(x - E[a])
        R[:, a, a] = (fp - 2 * f0 + fm) / h**2
        for b in range(a + 1, d):
            v = (F(x + E[a] + E[b]) - F(x + E[a] - E[b]) - F(x - E[a] + E[b]) + F(x - E[a] - E[b])) / (4 * h**2)
            R[:, a, b] = R[:, b, a] = v
    return R


def complex_hessian(func, z, h: float = 1e-4) -> np.ndarray:
    """Levi form H_{jk} = d^2 func / dz_j dzbar_k by central differences; shape (N, n, n)."""
    z = np.atleast_2d(z)
    n = z.shape[1]
    R = real_hessian(func, z, h)
    Hxx, Hyy, Hxy = R[:, :n, :n], R[:, n:, n:], R[:, :n, n:]
    return 0.25 * (Hxx + Hyy + 1j * (Hxy - np.swapaxes(Hxy, 1, 2)))


def _grad5(func, x, h):
    """Fourth-order central gradient of func: (N, d) -> (N, ...) along each real axis."""
    d = x.shape[1]
    out = []
    for a in range(d):
        e = np.zeros(d)
        e[a] = h
        out.append((-func(x + 2 * e) + 8 * func(x + e) - 8 * func(x - e) + func(x - 2 * e)) / (12 * h))
    return np.stack(out, axis=1)


# ---------------------------------------------------------------------------
# regularized maximum


def smooth_relu(t, eta: float):
    """C^4 convex smoothing of max(t, 0), exact for |t| >= eta.

    Its second derivative is the triweight bump 35/(32 eta) (1 - (t/eta)^2)^3,
    so finite-difference stencils that straddle the band edge see no jump up
    to the fourth derivative.
    """
    t = np.asarray(t, dtype=float)
    u = np.clip(t / eta, -1.0, 1.0)
    mid = eta * (35 / 256 + u / 2 + 35 / 64 * u**2 - 35 / 128 * u**4 + 7 / 64 * u**6 - 5 / 256 * u**8)
    return np.where(t >= eta, t, np.where(t <= -eta, 0.0, mid))


def regularized_max(x, y, eta: float):
    return y + smooth_relu(x - y, eta)


# ---------------------------------------------------------------------------
# preconditioning and the potential


def _sup_norm_sq(evaluate, n, samples, seed):
    return sphere_extremum(lambda z: np.sum(np.abs(evaluate(z)) ** 2, axis=1), n, 1.0, "max", samples, seed)


def precondition_domain(gamma: ResonantMap, margin: float | None = None, samples: int = 4096,
                        seed: int = 0, max_iter: int = 60):
    """Conjugate gamma by a diagonal dilation until gamma(closed unit ball) sits well inside it.

    Scalar dilations d_eps first (coefficients scale by eps^(1-|m|)). Degree-one
    Jordan terms are invariant under those, so for triangular maps the weighted
    dilation (t^-1, ..., t^-n) is the fallback. Returns (gamma', mu) with mu
    the exact per-coordinate dilation factors.

    The target is sup |gamma'| < 1 - margin on the unit sphere. The default
    margin (1 - max|lambda|)/2 asks for gamma' to sit halfway between its
    linear part and the unit sphere, which keeps f = |gamma'^-1|^2 close to
    quadratic and the gluing band wide.
    """
    n = gamma.n
    lam_max = max(math.sqrt(float(x.abs2())) for x in gamma.lam)
    cap = (1.0 - lam_max) / 2
    target = 1.0 - (cap if margin is None else min(margin, cap))
    two = GaussianRational(2)

    def ok(g):
        return math.sqrt(_sup_norm_sq(g.polymap.numeric(), n, samples, seed)) < target

    eps = GaussianRational(1)
    current = gamma
    for _ in range(max_iter):
        if ok(current):
            return current, tuple([eps] * n)
        eps = eps * two
        current = conjugate_diagonal(gamma, [eps] * n)
        if all(sum(m) == 1 for _, m, _ in current.terms):
            break
    if all(is_triangular_term(i, m) for i, m, _ in gamma.terms):
        t = GaussianRational(1)
        for _ in range(max_iter):
            t = t / two
            mu = tuple(t ** (-(j + 1)) for j in range(n))
            current = conjugate_diagonal(gamma, mu)
            if ok(current):
                return current, mu
    raise ParameterError(f"could not precondition gamma into the unit ball after {max_iter} dilations")


@dataclass(frozen=True)
class PotentialSpec:
    dilation: tuple
    s: float
    m: float
    M: float
    A: float
    c: float
    eta: float
    margin: float
    safety: float
    raw: dict = field(default_factory=dict)

    @property
    def A_threshold(self) -> float:
        return (self.M - self.m) / (1 - self.s**2)

    @property
    def c_interval(self) -> tuple:
        return (self.M - self.A, self.m - self.A * self.s**2)

    def to_json(self):
        return {
            "dilation": [str(x) for x in self.dilation],
            "s": self.s, "m": self.m, "M": self.M, "A": self.A, "c": self.c, "eta": self.eta,
            "A_threshold": self.A_threshold, "c_interval": list(self.c_interval),
            "margin": self.margin, "safety": self.safety, "raw": self.raw,
        }


class Potential:
    """psi = f on the ball of radius s, and the regularized max of f and A f0 + c outside it,
    where f0 = |z|^2 and f = f0 o gamma^{-1}."""

    def __init__(self, gamma: ResonantMap, spec: PotentialSpec):
        self.gamma = gamma
        self.spec = spec
        self.n = gamma.n
        self.forward = gamma.polymap.numeric()
        self.backward = invert(gamma).numeric()

    def f0(self, z):
        return np.sum(np.abs(z) ** 2, axis=-1)

    def f(self, z):
        return np.sum(np.abs(self.backward(z)) ** 2, axis=-1)

    def outer(self, z):
        return self.spec.A * self.f0(z) + self.spec.c

    def psi(self, z):
        r2 = self.f0(z)
        fz = self.f(z)
        glued = regularized_max(fz, self.outer(z), self.spec.eta)
        return np.where(r2 < self.spec.s**2, fz, glued)

    __call__ = psi

    def psi_plain_max(self, z):
        """Same gluing with a hard max: the negative control."""
        r2 = self.f0(z)
        fz = self.f(z)
        return np.where(r2 < self.spec.s**2, fz, np.maximum(fz, self.outer(z)))

    def psi_after_gamma(self, z):
        return self.psi(self.forward(z))

    def kink_points(self, count: int = 64, seed: int = 1) -> np.ndarray:
        """Points where f = A f0 + c, found by bisection along rays between radii s and 1."""
        dirs = sphere_points(self.n, count, seed)
        lo = np.full(count, self.spec.s)
        hi = np.ones(count)

        def gap(r):
            z = r[:, None] * dirs
            return self.f(z) - self.outer(z)

        for _ in range(60):
            mid = 0.5 * (lo + hi)
            pos = gap(mid) > 0
            lo = np.where(pos, mid, lo)
            hi = np.where(pos, hi, mid)
        return (0.5 * (lo + hi))[:, None] * dirs

    def annulus_samples(self, count: int = 1024, seed: int = 0, kinks: int = 64) -> np.ndarray:
        """Quasi-random points of the shell containing B_1 - gamma(B_1), plus gluing-locus points."""
        r_in = math.sqrt(sphere_extremum(lambda z: np.sum(np.abs(self.forward(z)) ** 2, axis=1),
                                         self.n, 1.0, "min", 1024, seed))
        pts = shell_points(self.n, count, r_in, 1.0, seed)
        if kinks:
            pts = np.concatenate([pts, self.kink_points(kinks, seed + 1)])
        return pts


def build_potential(gamma: ResonantMap, margin: float = 0.1, safety: float = 0.0025,
                    samples: int = 4096, seed: int = 0, dilation=None) -> Potential:
    """Choose s, m, M, A, c, eta for the glued potential of a preconditioned contraction."""
    n = gamma.n
    fwd = gamma.polymap.numeric()
    bwd = invert(gamma).numeric()

    def f(z):
        return np.sum(np.abs(bwd(z)) ** 2, axis=-1)

    s_raw = math.sqrt(_sup_norm_sq(fwd, n, samples, seed))
    s = s_raw * (1 + safety)
    if s >= 1:
        raise ParameterError(f"gamma(closed unit ball) is not inside the unit ball (sup |gamma| = {s_raw:.6g}); precondition first")
    M_raw = sphere_extremum(f, n, 1.0, "max", samples, seed)
    m_raw = sphere_extremum(f, n, s, "min", samples, seed)
    M = M_raw * (1 + safety)
    m = m_raw * (1 - safety)
    A_thr = (M - m) / (1 - s**2)
    A = (1 + margin) * A_thr
    lo, hi = M - A, m - A * s**2
    if not lo < hi or A_thr <= 0:
        raise ParameterError(f"empty c interval ({lo:.6g}, {hi:.6g}) with A = {A:.6g}, m = {m:.6g}, M = {M:.6g}, s = {s:.6g}")
    c = 0.5 * (lo + hi)

    inner = sphere_points(n, samples, seed, s)
    outer = sphere_points(n, samples, seed)
    gap_inner = float(np.min(f(inner) - (A * s**2 + c)))
    gap_outer = float(np.min(A + c - f(outer)))
    eta = 0.25 * min(gap_inner, gap_outer, hi - c, c - lo)
    if eta <= 0:
        raise ParameterError(f"gluing gap is not positive (inner {gap_inner:.3g}, outer {gap_outer:.3g})")
    if dilation is None:
        dilation = tuple([GaussianRational(1)] * n)
    spec = PotentialSpec(tuple(dilation), s, m, M, A, c, eta, margin, safety,
                         raw={"s": s_raw, "m": m_raw, "M": M_raw, "gap_inner": gap_inner, "gap_outer": gap_outer})
    return Potential(gamma, spec)


# ---------------------------------------------------------------------------
# verification


@dataclass
class PositivityReport:
    sample_count: int
    min_eigenvalue: float
    max_smoothness_error: float
    positivity_tol: float
    smoothness_tol: float
    step: float
    failing_points: list
    eigenvalues: np.ndarray = field(repr=False, default=None)

    @property
    def passed(self) -> bool:
        return not self.failing_points and self.min_eigenvalue > self.positivity_tol

    def to_json(self):
        return {
            "sample_count": self.sample_count,
            "min_eigenvalue": self.min_eigenvalue,
            "max_smoothness_error": self.max_smoothness_error,
            "positivity_tol": self.positivity_tol,
            "smoothness_tol": self.smoothness_tol,
            "step": self.step,
            "failing_count": len(self.failing_points),
            "failing_points": [[[z.real, z.imag] for z in p] for p in self.failing_points[:10]],
            "passed": self.passed,
        }


def verify_positivity(psi, samples, h: float = 1e-4, positivity_tol: float = 1e-6,
                      smoothness_tol: float = 0.05) -> PositivityReport:
    """Smallest Levi-form eigenvalue of psi over the samples, plus a C^2 check.

    A point fails if its eigenvalue is <= positivity_tol or if the Hessians at
    steps h and h/2 disagree by more than smoothness_tol (relative), which is
    how a kink in the gluing shows up: across a kink the second difference
    scales like 1/h, so halving h changes it by about 100%, while at smooth
    points the change is O(h^2).
    """
    samples = np.atleast_2d(samples)
    H1 = complex_hessian(psi, samples, h)
    H2 = complex_hessian(psi, samples, h / 2)
    if not (np.all(np.isfinite(H1)) and np.all(np.isfinite(H2))):
        raise HopfError("non-finite Hessian entries; evaluator used outside its domain")
    eig = np.linalg.eigvalsh(H1)[:, 0]
    scale = np.maximum(1.0, np.abs(H1).max(axis=(1, 2)))
    smooth = np.abs(H1 - H2).max(axis=(1, 2)) / scale
    bad = (eig <= positivity_tol) | (smooth > smoothness_tol)
    return PositivityReport(
        sample_count=len(samples),
        min_eigenvalue=float(eig.min()),
        max_smoothness_error=float(smooth.max()),
        positivity_tol=positivity_tol,
        smoothness_tol=smoothness_tol,
        step=h,
        failing_points=[samples[i] for i in np.flatnonzero(bad)],
        eigenvalues=eig,
    )


@dataclass
class HomothetyReport:
    max_relative_error: float
    A: float
    sample_count: int
    step: float

    def to_json(self):
        return {"max_relative_error": self.max_relative_error, "A": self.A,
                "sample_count": self.sample_count, "step": self.step}


def verify_homothety(potential: Potential, A: float | None = None, samples=None, count: int = 256,
                     h: float = 1e-4, seed: int = 3) -> HomothetyReport:
    """Compare the Levi form of psi o gamma on the unit sphere with (1/A) times that of psi."""
    A = potential.spec.A if A is None else A
    if samples is None:
        samples = sphere_points(potential.n, count, seed)
    H_pull = complex_hessian(potential.psi_after_gamma, samples, h)
    H_here = complex_hessian(potential.psi, samples, h)
    diff = np.linalg.norm(H_pull - H_here / A, axis=(1, 2))
    err = diff / np.linalg.norm(H_pull, axis=(1, 2))
    return HomothetyReport(float(err.max()), float(A), len(samples), h)


# ---------------------------------------------------------------------------
# homogeneous Vaisman metric


def _omega_coeffs(x, n):
    """Real coefficient matrices of i ddbar|z|^2 / |z|^2 = 2 sum dx_j^dy_j / r^2 (coords: x..., y...)."""
    r2 = np.sum(x**2, axis=1)
    W = np.zeros((x.shape[0], 2 * n, 2 * n))
    for j in range(n):
        W[:, j, n + j] = 2 / r2
        W[:, n + j, j] = -2 / r2
    return W


def _lambda_real_matrix(lam):
    n = len(lam)
    L = np.zeros((2 * n, 2 * n))
    for j, x in enumerate(lam):
        a, b = float(x.re), float(x.im)
        L[j, j], L[j, n + j] = a, -b
        L[n + j, j], L[n + j, n + j] = b, a
    return L


@dataclass
class VaismanCheckReport:
    lcK_residual: float
    closedness_residual: float
    invariance_residual: float
    sample_count: int
    step: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.lcK_residual, self.closedness_residual, self.invariance_residual) < self.tol

    def to_json(self):
        return {"lcK_residual": self.lcK_residual, "closedness_residual": self.closedness_residual,
                "invariance_residual": self.invariance_residual, "sample_count": self.sample_count,
                "step": self.step, "tol": self.tol, "passed": self.passed}


def vaisman_homogeneous_check(lam: Multipliers, count: int = 200, h: float = 1e-4, seed: int = 5,
                              tol: float = 1e-6) -> VaismanCheckReport:
    """Check d omega = theta ^ omega and d theta = 0 for omega = i ddbar|z|^2/|z|^2,
    theta = -d ln|z|^2, plus d_lambda-invariance of omega, at quasi-random points."""
    mods = {x.abs2() for x in lam}
    if len(mods) != 1:
        raise ValidationError("homogeneous Vaisman metric needs |lambda_i| all equal")
    n = lam.n
    rho = math.sqrt(float(next(iter(mods))))
    z = shell_points(n, count, rho, 1.0, seed)
    x = _to_real(z)
    d = 2 * n

    W = _omega_coeffs(x, n)
    dW = _grad5(lambda y: _omega_coeffs(y, n), x, h)  # (N, a, b, c) = d_a W_bc
    logr2 = lambda y: np.log(np.sum(y**2, axis=1))  # noqa: E731
    theta = -_grad5(logr2, x, h)
    lck = 0.0
    for a in range(d):
        for b in range(a + 1, d):
            for c in range(b + 1, d):
                dw = dW[:, a, b, c] + dW[:, b, c, a] + dW[:, c, a, b]
                tw = theta[:, a] * W[:, b, c] + theta[:, b] * W[:, c, a] + theta[:, c] * W[:, a, b]
                lck = max(lck, float(np.abs(dw - tw).max()))
    dtheta = _grad5(lambda y: -_grad5(logr2, y, h), x, h)  # d_a theta_b
    closed = float(np.abs(dtheta - np.swapaxes(dtheta, 1, 2)).max())
    L = _lambda_real_matrix(lam)
    pulled = np.einsum("ai,nab,bj->nij", L, _omega_coeffs(x @ L.T, n), L)
    inv = float(np.abs(pulled - W).max())
    return VaismanCheckReport(lck, closed, inv, count, h, tol)


def lee_field(lam) -> tuple:
    """Coefficients (ln|lambda_1|, ..., ln|lambda_n|) of the Lee field Re sum ln|lambda_j| z_j d/dz_j."""
    if isinstance(lam, ResonantMap):
        if not lam.is_diagonal:
            raise ValidationError("the Lee field formula applies to diagonal contractions only")
        lam = lam.lam
    return lee_coefficients(lam)
