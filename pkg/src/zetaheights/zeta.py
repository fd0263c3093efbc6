"""Dedekind zeta evaluation and zero location on the critical segment.

The completed function S(s) = s(s-1) Lambda(s) is evaluated through the
smoothed sum Lambda(s) = r(1/(s-1) - 1/s) + sum_n a_n [F(s,n) + F(1-s,n)],
with the Mellin weights F realized as the incomplete Mellin transform of a
single cached kernel

    W(y) = (1/2 pi i) int_(c) Gamma(z/2)^r1 Gamma(z)^r2 y^{-z} dz,

computed once by trapezoid rule on a geometric grid with cubic
interpolation in log y. Swapping the n-sum and the x-integral turns every
S(s) evaluation into a short fixed quadrature, which is what makes dense
zero scans affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import k0 as bessel_k0
from scipy.special import loggamma

from .config import RunConfig, default_config
from .errors import (DomainError, GridMissError, InconsistentResidueError,
                     IncompleteZeroSetError)
from .fields import NumberField, coefficient_array

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GammaFactor:
    """Archimedean data of the completed zeta function."""

    r1: int
    r2: int
    abs_disc: float
    log_abs_disc: float

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def scale(self) -> float:
        """Q = sqrt|d| pi^{-r1/2} (2 pi)^{-r2}; conductor per coefficient."""
        return math.exp(0.5 * self.log_abs_disc
                        - 0.5 * self.r1 * math.log(math.pi)
                        - self.r2 * math.log(TWO_PI))

    @property
    def front(self) -> float:
        """Constant 2^{r2} from Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)."""
        return 2.0 ** self.r2

    def log_gamma_hat(self, s: complex) -> complex:
        """log of |d|^{s/2} Gamma_R(s)^{r1} Gamma_C(s)^{r2}."""
        return (math.log(self.front) + s * math.log(self.scale)
                + self.r1 * loggamma(s / 2.0) + self.r2 * loggamma(s))

    @classmethod
    def of(cls, K: NumberField) -> "GammaFactor":
        return cls(K.r1, K.r2, float(K.abs_disc), K.log_abs_disc)


@dataclass(frozen=True)
class ZeroList:
    """Positive ordinates of critical-line zeros up to height T."""

    T: float
    ordinates: tuple
    bracket_widths: tuple
    zero_at_origin: bool = False
    assumed_simple: bool = True
    diagnostics: dict = field(default_factory=dict)

    def count_below(self, T: float) -> int:
        """N_K(T): zeros with |t| < T, conjugates paired, origin once."""
        n = 2 * sum(1 for t in self.ordinates if t < T)
        return n + (1 if self.zero_at_origin else 0)


@dataclass(frozen=True)
class ZeroStatistics:
    N: int
    lam: float


class ZetaEvaluator:
    """Cached analytic data for one field: kernel grid, theta nodes, residue."""

    def __init__(self, K: NumberField, config: RunConfig | None = None):
        self.field = K
        self.config = config or default_config()
        self.gamma = GammaFactor.of(K)
        self._build_kernel()
        self._build_theta()
        self._residue = None
        self.diagnostics = {
            "N": self.N,
            "weight_rel_tol": self.config.weight_rel_tol,
            "y_threshold": self.y_threshold,
            "contour": {"offset": self.config.contour_offset,
                        "step": self.config.contour_step,
                        "halfwidth_log": self.config.contour_halfwidth_log},
            "kernel": self.kernel_kind,
        }

    # -- kernel ---------------------------------------------------------

    def _build_kernel(self):
        cfg = self.config
        r1, r2 = self.gamma.r1, self.gamma.r2
        n = self.gamma.degree
        target_drop = -math.log(cfg.weight_rel_tol)  # e.g. 41.4 for 1e-18
        # saddle-point scale of where the kernel has decayed by the target
        base = (2.0 * (target_drop + 10.0) / n) ** (n / 2.0)
        y_hi = 1.3 * base / (2.0 ** (r1 / 2.0)) + 10.0
        y_lo = 0.98 / self.gamma.scale
        if r1 == 1 and r2 == 0:
            self.kernel_kind = "gaussian-exact"
            vec_log_w = lambda ys: math.log(2.0) - ys * ys
            y_hi = math.sqrt(target_drop + 12.0) + 1.0
        elif r1 == 0 and r2 == 1:
            self.kernel_kind = "exponential-exact"
            vec_log_w = lambda ys: -ys
            y_hi = target_drop + 14.0
        elif r1 == 2 and r2 == 0:
            self.kernel_kind = "bessel-exact"

            def vec_log_w(ys):
                with np.errstate(divide="ignore"):
                    return np.log(4.0 * bessel_k0(2.0 * ys))
            y_hi = 0.5 * (target_drop + 14.0)
        else:
            self.kernel_kind = "mellin-barnes"
            vec_log_w = None
        halfwidth = cfg.contour_halfwidth_log / (math.pi / 4.0 * n)
        step_log = cfg.wgrid_step_factor / halfwidth
        lo, hi = math.log(y_lo), math.log(y_hi)
        npts = max(int((hi - lo) / step_log) + 2, 64)
        grid = np.linspace(lo, hi, npts)
        if vec_log_w is None:
            logw = self._mellin_barnes_logw(np.exp(grid), halfwidth)
        else:
            logw = vec_log_w(np.exp(grid))
        finite = np.isfinite(logw)
        if not finite.all():
            last = np.nonzero(finite)[0][-1]
            grid, logw = grid[: last + 1], logw[: last + 1]
        self._log_grid = grid
        self._spline = CubicSpline(grid, logw)
        peak = float(logw.max())
        below = np.nonzero(logw <= peak + math.log(cfg.weight_rel_tol))[0]
        idx = below[below > int(np.argmax(logw))]
        self.y_threshold = float(np.exp(grid[idx[0]])) if len(idx) else float(np.exp(grid[-1]))
        self.y_max = float(np.exp(grid[-1]))
        self._contour_halfwidth = halfwidth

    def _mellin_barnes_logw(self, ys, halfwidth):
        cfg = self.config
        c = cfg.contour_offset
        v = np.arange(0.0, halfwidth + cfg.contour_step, cfg.contour_step)
        z = c + 1j * v
        log_g = (self.gamma.r1 * loggamma(z / 2.0)
                 + self.gamma.r2 * loggamma(z))
        weights = np.full(len(v), cfg.contour_step)
        weights[0] = 0.5 * cfg.contour_step
        vals = np.empty(len(ys))
        lny = np.log(ys)
        # W(y) = (1/pi) Re int_0^vmax G(c+iv) e^{-(c+iv) ln y} dv
        chunk = max(1, 4_000_000 // max(len(v), 1))
        for start in range(0, len(lny), chunk):
            block = lny[start: start + chunk]
            integrand = np.exp(log_g[None, :] - np.outer(block, z))
            vals[start: start + len(block)] = integrand.real @ weights / math.pi
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log(vals)
        out[~np.isfinite(out)] = -np.inf
        return out

    def kernel(self, ys: np.ndarray) -> np.ndarray:
        """W(y) for y inside the cached grid, 0 beyond its decayed end."""
        ys = np.asarray(ys, dtype=float)
        out = np.zeros_like(ys)
        mask = (ys > 0) & (np.log(np.maximum(ys, 1e-300)) <= self._log_grid[-1])
        lny = np.log(ys[mask])
        lny = np.clip(lny, self._log_grid[0], self._log_grid[-1])
        out[mask] = np.exp(self._spline(lny))
        return out

    # -- theta ----------------------------------------------------------

    def _build_theta(self):
        cfg = self.config
        Q = self.gamma.scale
        self.N = max(int(math.ceil(Q * self.y_threshold
                                   * cfg.coeff_cutoff_multiplier)), 8)
        if self.N > 2 * 10 ** 8:
            raise DomainError(
                f"evaluator needs {self.N} coefficients; field too large")
        self.a = coefficient_array(self.field, self.N)
        tau_max = math.log(max(self.y_max * Q, math.e))
        n_panels = max(int(math.ceil(tau_max / cfg.panel_width)), 2)
        nodes, weights = np.polynomial.legendre.leggauss(cfg.panel_order)
        taus, ws = [], []
        edges = np.linspace(0.0, tau_max, n_panels + 1)
        for a_edge, b_edge in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (a_edge + b_edge), 0.5 * (b_edge - a_edge)
            taus.append(mid + half * nodes)
            ws.append(half * weights)
        self.tau_nodes = np.concatenate(taus)
        self.tau_weights = np.concatenate(ws)
        ns = np.arange(1, self.N + 1, dtype=float)
        coeffs = self.a[1: self.N + 1]
        vals = np.empty(len(self.tau_nodes))
        for j, tau in enumerate(self.tau_nodes):
            scale = math.exp(tau) / Q
            n_eff = min(self.N, int(self.y_max / scale) + 1)
            ys = ns[:n_eff] * scale
            vals[j] = float(np.dot(coeffs[:n_eff], self.kernel(ys)))
        self.theta_values = vals
        self.tau_max = tau_max

    # -- Lambda / S -----------------------------------------------------

    def smoothed_sum(self, s: complex) -> complex:
        """sum_n a_n F(s, n) = C int_1^inf x^{s-1} Theta(x) dx."""
        phase = np.exp(s * self.tau_nodes.astype(complex))
        return self.gamma.front * complex(
            np.dot(self.tau_weights, phase * self.theta_values))

    def mellin_weight(self, s: complex, n: int) -> complex:
        """Single smoothed coefficient weight F(s, n) (test support)."""
        u = n / self.gamma.scale
        if u >= self.y_max:
            return 0.0
        lo = math.log(u)
        taus = 0.5 * (self._log_grid[-1] - lo) * _GL64_NODES + 0.5 * (self._log_grid[-1] + lo)
        wts = 0.5 * (self._log_grid[-1] - lo) * _GL64_WEIGHTS
        ys = np.exp(taus)
        vals = self.kernel(ys) * np.exp(s * taus)
        return self.gamma.front * (u ** (-s)) * complex(np.dot(wts, vals))

    @property
    def residue(self) -> float:
        if self._residue is None:
            self._solve_residue()
        return self._residue

    @property
    def pole_term(self) -> float:
        """R = residue of Lambda at s=1 (gamma-hat(1) times residue)."""
        return self.residue * math.exp(self.gamma.log_gamma_hat(1.0).real)

    def _solve_residue(self):
        from_afe = {}
        for s in (2.0, 3.0):
            from_afe[s] = self.smoothed_sum(s) + self.smoothed_sum(1.0 - s)
        n_direct = self.config.direct_series_N(self.field.n_K)
        ghat2 = math.exp(self.gamma.log_gamma_hat(2.0).real)
        ghat3 = math.exp(self.gamma.log_gamma_hat(3.0).real)
        d2 = direct_series(self.field, 2.0, n_direct).value.real
        d3 = direct_series(self.field, 3.0, n_direct).value.real
        # Lambda(2) = AFE sums + R/2  =>  R from the s=2 equation
        R = 2.0 * (ghat2 * d2 - from_afe[2.0].real)
        ghat1 = math.exp(self.gamma.log_gamma_hat(1.0).real)
        rho = R / ghat1
        lam3 = from_afe[3.0].real + R * (1.0 / 2.0 - 1.0 / 3.0)
        rel = abs(lam3 / (ghat3 * d3) - 1.0)
        if not rel <= 1e-8:
            raise InconsistentResidueError(
                f"s=3 consistency check failed: relative error {rel:.3e}")
        if not rho > 0:
            raise InconsistentResidueError(f"nonpositive residue {rho}")
        self._residue = rho

    def completed(self, s: complex) -> complex:
        """Entire S(s) = s(s-1) Lambda(s); S(s) = S(1-s) by construction."""
        if abs(s.imag if isinstance(s, complex) else 0.0) > self.config.max_height + 8.0:
            raise GridMissError(f"Im(s) = {s.imag} beyond quadrature coverage")
        s = complex(s)
        lam_sum = self.smoothed_sum(s) + self.smoothed_sum(1.0 - s)
        return s * (s - 1.0) * lam_sum + self.pole_term

    def hardy(self, t: float) -> float:
        """Real S(1/2 + it) along the critical line."""
        s = complex(0.5, t)
        phase = np.exp(s * self.tau_nodes.astype(complex))
        i1 = complex(np.dot(self.tau_weights, phase * self.theta_values))
        return -(0.25 + t * t) * self.gamma.front * 2.0 * i1.real + self.pole_term


_GL64_NODES, _GL64_WEIGHTS = np.polynomial.legendre.leggauss(64)


_EVALUATOR_CACHE: dict = {}


def get_evaluator(K: NumberField, config: RunConfig | None = None) -> ZetaEvaluator:
    key = (K.defining_poly.coefficients, (config or default_config()).cache_key())
    if key not in _EVALUATOR_CACHE:
        _EVALUATOR_CACHE[key] = ZetaEvaluator(K, config)
    return _EVALUATOR_CACHE[key]


# ----------------------------------------------------------------------
# Dirichlet series with average-order tail correction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float
    correction: float


def direct_series(K: NumberField, s: complex, N: int) -> SeriesValue:
    """sum_{n<=N} a_n n^{-s} plus the average-order tail correction.

    The ideal-count summatory function grows like rho x, so the truncated
    tail is corrected by rho_hat N^{1-s}/(s-1) with rho_hat = A(N)/N; the
    returned tail_bound is the crude divisor-function estimate
    n_K (1+log N)^{n_K-1} N^{1-sigma}/(sigma-1) on the raw truncation.
    """
    s = complex(s)
    if s.real < 1.5:
        raise DomainError("direct series requires Re(s) >= 1.5")
    if N < 100:
        raise DomainError("N must be >= 100")
    a = coefficient_array(K, N)
    ns = np.arange(1, N + 1, dtype=float)
    terms = a[1: N + 1] * np.exp(-s * np.log(ns))
    value = complex(np.sum(terms))  # pairwise summation
    rho_hat = float(np.sum(a[1: N + 1])) / N
    correction = rho_hat * N ** (1.0 - s) / (s - 1.0)
    sigma = s.real
    tail_bound = (K.n_K * (1.0 + math.log(N)) ** (K.n_K - 1)
                  * N ** (1.0 - sigma) / (sigma - 1.0))
    return SeriesValue(value=value + correction, tail_bound=tail_bound,
                       correction=abs(correction))


def residue_at_one(ev: ZetaEvaluator) -> float:
    """Residue of zeta_K at s = 1, solved from the AFE at s = 2.

    Consistency is verified at s = 3 to 1e-8 relative before accepting;
    InconsistentResidueError signals an over-aggressive truncation.
    """
    return ev.residue


def completed_zeta(ev: ZetaEvaluator, s: complex) -> complex:
    """S(s) = s(s-1) |d|^{s/2} Gamma_R^{r1} Gamma_C^{r2} zeta_K(s), entire."""
    return ev.completed(s)


# ----------------------------------------------------------------------
# Zero location
# ----------------------------------------------------------------------

def _bisect_zero(ev: ZetaEvaluator, lo: float, hi: float, flo: float,
                 tol: float):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = ev.hardy(mid)
        if fm == 0.0:
            return mid, 0.0
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), hi - lo


def locate_zeros(ev: ZetaEvaluator, T: float,
                 run_closure: bool = True) -> ZeroList:
    """Scan S(1/2+it) on [0, T], bisect sign changes to 1e-9 brackets.

    Completeness checks: the counting window must contain the located
    count, and (for T >= 2) the exponential-kernel explicit-formula
    identity must close. On failure the scan step halves, up to 3 times;
    IncompleteZeroSetError carries the per-attempt diagnostics.
    """
    if not 0.0 < T <= 40.0:
        raise DomainError("T must lie in (0, 40]")
    cfg = ev.config
    step = cfg.scan_step
    attempts = []
    for _attempt in range(4):
        zeros, widths, origin = _scan_once(ev, T, step, cfg.bisect_tol)
        zl = ZeroList(T=T, ordinates=tuple(zeros), bracket_widths=tuple(widths),
                      zero_at_origin=origin,
                      diagnostics={"scan_step": step})
        ok, report = _completeness_checks(ev, zl, run_closure)
        attempts.append(report)
        if ok:
            zl.diagnostics["completeness"] = report
            return zl
        step *= 0.5
    raise IncompleteZeroSetError(
        f"zero scan failed completeness checks up to step {step}",
        diagnostics={"attempts": attempts})


def _scan_once(ev: ZetaEvaluator, T: float, step: float, tol: float):
    n_steps = int(math.ceil(T / step))
    ts = np.linspace(0.0, T, n_steps + 1)
    vals = np.array([ev.hardy(t) for t in ts])
    scale = float(np.max(np.abs(vals))) or 1.0
    zeros, widths = [], []
    origin = abs(vals[0]) < 1e-9 * scale
    for i in range(len(ts) - 1):
        if vals[i] == 0.0 and ts[i] > 0.0:
            zeros.append(ts[i])
            widths.append(0.0)
            continue
        if vals[i] * vals[i + 1] < 0:
            z, w = _bisect_zero(ev, ts[i], ts[i + 1], vals[i], tol)
            zeros.append(z)
            widths.append(w)
    return zeros, widths, origin


def _completeness_checks(ev: ZetaEvaluator, zl: ZeroList, run_closure: bool):
    from .explicit import hsw_window, identity_exponential
    from .errors import ClosureFailureError
    K = ev.field
    report = {}
    ok = True
    T_check = max(1.0, zl.T)
    window = hsw_window(K.n_K, K.log_abs_disc, T_check)
    count = zl.count_below(T_check)
    in_window = window.window[0] - 1e-9 <= count <= window.window[1] + 1e-9
    report["hsw"] = {"count": count, "window": window.window}
    ok = ok and in_window
    if run_closure and zl.T >= 2.0:
        try:
            ledger = identity_exponential(K, zl, ev.config.prime_cutoff,
                                          evaluator=ev)
            report["closure"] = {"arithmetic": ledger.arithmetic_side,
                                 "bracket": ledger.zero_side_bracket}
        except ClosureFailureError as exc:
            report["closure"] = {"failed": str(exc), **exc.payload}
            ok = False
    return ok, report


def zero_statistics(zl: ZeroList, T: float) -> ZeroStatistics:
    """N_K(T) with conjugate pairs, and lambda_K(T) = sum 1/(1+t^2)."""
    if T > zl.T + 1e-12:
        raise DomainError("statistics height exceeds located range")
    n = 0
    lam_terms = []
    for t in zl.ordinates:
        if t < T:
            n += 2
            lam_terms.append(2.0 / (1.0 + t * t))
    if zl.zero_at_origin:
        n += 1
        lam_terms.append(1.0)
    return ZeroStatistics(N=n, lam=math.fsum(lam_terms))
