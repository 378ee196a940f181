"""Entropy profiles and the two scaling models fitted to them.

Deng information model::

    I(eps) = d * log(eps) + beta

d-summable Deng information model::

    I(eps) = (d * log(eps) + beta) * eps**(1 - nu)

which reduces to the first at ``nu = 1``. ``d`` is reported positive when the
entropy grows with ``eps``.
``log`` is natural by default; ``log_base="2"`` switches the abscissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .boxcover import DEFAULT_REPETITIONS, box_covering
from .entropy import EXACT, deng_entropy, mass_from_covering
from .errors import (ComparisonError, DegreesOfFreedomError, FitDomainError,
                     FitError, InsufficientRangeError)
from .graph import DistanceRows, Network, covering_delta

DENG = "deng"
DSUMMABLE = "dsummable"
TIE = "tie"

LOG_BASES = ("e", "2")
MIN_POINTS = 4
NU_GRID = tuple(float(v) for v in np.arange(-20, 4) * 0.5)
TIE_THRESHOLD = 2.0
SCAN_STEP = 0.01
MAX_STARTS = 5
# how far past the grid, and in what chunks, the scan may follow a boundary minimum
SCAN_REACH = 100.0
SCAN_CHUNK = 10.0


@dataclass(frozen=True)
class EntropyProfile:
    """Deng entropy against box diameter for one network."""

    epsilons: tuple[int, ...]
    entropies: tuple[float, ...]
    network_name: str = ""
    mode: str = EXACT
    seed: int | None = None
    repetitions: int | None = None
    delta: int | None = None
    emax: int | None = None
    n_boxes: tuple[int, ...] = ()
    nonspecificity: tuple[float, ...] = ()
    discord: tuple[float, ...] = ()
    n_boxes_variance: tuple[float, ...] = ()

    def __post_init__(self):
        eps = self.epsilons
        if len(eps) != len(self.entropies):
            raise ValueError("epsilons and entropies differ in length")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilons must be strictly increasing")
        if eps and eps[0] < 2:
            raise ValueError("epsilons must be >= 2")
        hi = self.emax if self.emax is not None else (
            self.delta - 1 if self.delta is not None else None)
        if hi is not None and eps and eps[-1] > hi:
            raise ValueError(f"epsilon {eps[-1]} exceeds the admissible maximum {hi}")

    @property
    def provenance(self) -> tuple:
        return (self.network_name, self.mode, self.seed, self.repetitions, self.epsilons)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.epsilons, dtype=float), np.asarray(self.entropies, dtype=float)


def build_profile(g: Network, seed: int = 0, repetitions: int = DEFAULT_REPETITIONS,
                  mode: str = EXACT, emax: int | None = None, workers: int = 1,
                  rows: DistanceRows | None = None) -> EntropyProfile:
    """Cover ``g`` at every integer diameter in ``[2, delta - 1]`` and evaluate Deng entropy.

    ``emax`` overrides the upper end of the range (it may not exceed delta).
    """
    rows = rows or DistanceRows(g)
    delta = covering_delta(g, rows)
    hi = delta - 1 if emax is None else emax
    if hi > delta:
        raise InsufficientRangeError(f"emax={hi} exceeds delta={delta}")
    if hi - 1 < MIN_POINTS:
        raise InsufficientRangeError(
            f"delta={delta} leaves {max(hi - 1, 0)} box diameters in [2, {hi}]; "
            f"at least {MIN_POINTS} are needed")
    n = g.node_count
    cols = {k: [] for k in ("eps", "I", "nb", "ns", "dc", "var")}
    for eps in range(2, hi + 1):
        cover = box_covering(g, eps, seed=seed, repetitions=repetitions, rows=rows, workers=workers)
        h = deng_entropy(mass_from_covering(cover, n), mode)
        cols["eps"].append(eps)
        cols["I"].append(h.total)
        cols["nb"].append(cover.n_boxes)
        cols["ns"].append(h.nonspecificity)
        cols["dc"].append(h.discord)
        cols["var"].append(cover.n_boxes_variance)
    return EntropyProfile(
        epsilons=tuple(cols["eps"]), entropies=tuple(cols["I"]), network_name=g.name,
        mode=mode, seed=seed, repetitions=repetitions, delta=delta, emax=emax,
        n_boxes=tuple(cols["nb"]), nonspecificity=tuple(cols["ns"]),
        discord=tuple(cols["dc"]), n_boxes_variance=tuple(cols["var"]),
    )


def log_eps(eps, log_base: str = "e") -> np.ndarray:
    eps = np.asarray(eps, dtype=float)
    if log_base == "e":
        return np.log(eps)
    if log_base == "2":
        return np.log2(eps)
    raise ValueError(f"log_base must be one of {LOG_BASES}, got {log_base!r}")


def deng_curve(eps, d, beta, log_base="e"):
    return d * log_eps(eps, log_base) + beta


def dsummable_curve(eps, d, beta, nu, log_base="e"):
    eps = np.asarray(eps, dtype=float)
    return (d * log_eps(eps, log_base) + beta) * eps ** (1.0 - nu)


# -- information criteria ---------------------------------------------------

def aic(rss: float, n: int, k: int) -> float:
    """Gaussian least-squares AIC, counting the noise variance as a parameter.

    An exact fit (``rss == 0``) returns ``-inf``.
    """
    if n <= k:
        raise DegreesOfFreedomError(f"{n} points cannot support {k} parameters")
    if rss < 0:
        raise ValueError("rss must be non-negative")
    if rss == 0:
        return -math.inf
    return n * math.log(rss / n) + 2 * (k + 1)


def aicc(rss: float, n: int, k: int) -> float | None:
    """Small-sample AIC; ``None`` when ``n - k - 2 <= 0``."""
    base = aic(rss, n, k)
    p = k + 1
    if n - p - 1 <= 0:
        return None
    return base + 2 * p * (p + 1) / (n - p - 1)


def r2_adj(rss: float, tss: float, n: int, k: int) -> float:
    if n <= k:
        raise DegreesOfFreedomError(f"{n} points cannot support {k} parameters")
    if tss <= 0:
        raise ValueError("total sum of squares must be positive")
    return 1.0 - (rss / (n - k)) / (tss / (n - 1))


@dataclass(frozen=True)
class FitResult:
    model: str
    d: float
    beta: float
    nu: float | None
    rss: float
    n: int
    k: int
    r2_adj: float
    aic: float
    aicc: float | None = None
    log_base: str = "e"
    provenance: tuple = ()
    converged: bool = True
    iterations: int = 0

    def predict(self, eps) -> np.ndarray:
        if self.model == DENG:
            return deng_curve(eps, self.d, self.beta, self.log_base)
        return dsummable_curve(eps, self.d, self.beta, self.nu, self.log_base)

    def to_dict(self) -> dict:
        return {
            "model": self.model, "d": self.d, "beta": self.beta, "nu": self.nu,
            "rss": self.rss, "r2_adj": self.r2_adj, "aic": _finite_or_str(self.aic),
            "aicc": None if self.aicc is None else _finite_or_str(self.aicc),
            "n": self.n, "k": self.k, "converged": self.converged,
            "iterations": self.iterations,
        }


def _finite_or_str(v):
    return v if math.isfinite(v) else ("-inf" if v < 0 else "inf")


def _result(model, d, beta, nu, resid, y, k, log_base, provenance, converged=True, iterations=0):
    n = len(y)
    rss = float(np.dot(resid, resid))
    tss = float(np.sum((y - y.mean()) ** 2))
    return FitResult(
        model=model, d=float(d), beta=float(beta), nu=None if nu is None else float(nu),
        rss=rss, n=n, k=k,
        r2_adj=r2_adj(rss, tss, n, k) if tss > 0 else math.nan,
        aic=aic(rss, n, k), aicc=aicc(rss, n, k), log_base=log_base,
        provenance=provenance, converged=converged, iterations=iterations,
    )


def _check_points(p: EntropyProfile):
    if len(p.epsilons) < MIN_POINTS:
        raise FitError(f"need at least {MIN_POINTS} points, profile has {len(p.epsilons)}")
    eps, y = p.arrays()
    if not np.all(np.isfinite(y)):
        raise FitDomainError("profile contains non-finite entropies")
    return eps, y


# -- Deng information model -------------------------------------------------

def fit_deng(p: EntropyProfile, log_base: str = "e") -> FitResult:
    """Ordinary least squares of entropy on ``log(eps)``."""
    eps, y = _check_points(p)
    x = log_eps(eps, log_base)
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx == 0:
        raise FitError("degenerate abscissas")
    slope = float(np.dot(xc, y - y.mean())) / sxx
    beta = float(y.mean() - slope * x.mean())
    resid = slope * x + beta - y
    return _result(DENG, slope, beta, None, resid, y, 2, log_base, p.provenance)


# -- d-summable Deng information model --------------------------------------

def _linear_at_nu(x, eps, y, nu):
    w = eps ** (1.0 - nu)
    a = np.column_stack([x * w, w])
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = a @ coef - y
    return coef, float(np.dot(resid, resid))


def grid_start(x, eps, y, nu_grid=NU_GRID):
    """Best (d, beta, nu) over a fixed-nu grid; ties go to the lowest nu."""
    best = None
    for nu in sorted(nu_grid):
        coef, rss = _linear_at_nu(x, eps, y, nu)
        if not math.isfinite(rss):
            continue
        if best is None or rss < best[1]:
            best = (np.array([coef[0], coef[1], nu]), rss)
    if best is None:
        raise FitDomainError("no grid value of nu gives finite residuals")
    return best


def _scan_rss(x, eps, y, nus):
    """RSS of the best linear (d, beta) at every nu in ``nus``, vectorised."""
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        w = eps[None, :] ** (1.0 - nus[:, None])
        a1, a2 = x[None, :] * w, w
        n1 = np.sqrt(np.sum(a1 * a1, axis=1))
        n2 = np.sqrt(np.sum(a2 * a2, axis=1))
        a1, a2 = a1 / n1[:, None], a2 / n2[:, None]
        s11, s12, s22 = (a1 * a1).sum(1), (a1 * a2).sum(1), (a2 * a2).sum(1)
        b1, b2 = a1 @ y, a2 @ y
        det = s11 * s22 - s12 * s12
        c1 = (s22 * b1 - s12 * b2) / det
        c2 = (s11 * b2 - s12 * b1) / det
        resid = c1[:, None] * a1 + c2[:, None] * a2 - y[None, :]
        rss = np.sum(resid * resid, axis=1)
    rss[~np.isfinite(rss)] = np.inf
    return rss


def candidate_starts(x, eps, y, nu_grid=NU_GRID, step=SCAN_STEP, max_starts=MAX_STARTS):
    """Starting points at the deepest local minima of RSS profiled over nu.

    The coarse grid is merged with a fine scan, because the profiled RSS can
    have dips narrower than the grid spacing. Each dip is polished with a
    bounded 1-D search.
    """
    lo, hi = min(nu_grid), max(nu_grid)
    nus = np.union1d(np.asarray(nu_grid, dtype=float),
                     lo + step * np.arange(int(round((hi - lo) / step)) + 1))
    rss = _scan_rss(x, eps, y, nus)
    if not np.isfinite(rss).any():
        raise FitDomainError("no value of nu gives finite residuals")
    # the optimum may lie beyond the grid; follow the slope outwards
    for _ in range(int(SCAN_REACH / SCAN_CHUNK)):
        best = int(np.argmin(rss))
        if 0 < best < len(nus) - 1:
            break
        if best == 0:
            more = nus[0] - step * np.arange(int(round(SCAN_CHUNK / step)), 0, -1)
        else:
            more = nus[-1] + step * np.arange(1, int(round(SCAN_CHUNK / step)) + 1)
        extra = _scan_rss(x, eps, y, more)
        if not np.isfinite(extra).any():
            break
        if best == 0:
            nus, rss = np.r_[more, nus], np.r_[extra, rss]
        else:
            nus, rss = np.r_[nus, more], np.r_[rss, extra]
    left = np.r_[np.inf, rss[:-1]]
    right = np.r_[rss[1:], np.inf]
    minima = np.flatnonzero((rss <= left) & (rss <= right) & np.isfinite(rss))
    minima = minima[np.argsort(rss[minima], kind="stable")][:max_starts]

    def profiled(nu):
        return _linear_at_nu(x, eps, y, nu)[1]

    starts = []
    for i in minima:
        a, b = nus[max(i - 1, 0)], nus[min(i + 1, len(nus) - 1)]
        nu = float(nus[i])
        if b > a:
            res = minimize_scalar(profiled, bounds=(a, b), method="bounded",
                                  options={"xatol": 1e-12})
            if np.isfinite(res.fun) and res.fun <= rss[i]:
                nu = float(res.x)
        coef, r = _linear_at_nu(x, eps, y, nu)
        starts.append((np.array([coef[0], coef[1], nu]), r))
    return starts


def levenberg_marquardt(residual, jacobian, p0, max_iter=500, rtol=1e-12):
    """Damped Gauss-Newton with Marquardt scaling.

    Stops when an accepted step lowers the RSS by a relative amount below
    ``rtol``, when no damping level yields a decrease (stationary point), or
    after ``max_iter`` iterations. Returns ``(params, rss, converged, iterations)``.
    """
    p = np.asarray(p0, dtype=float)
    r = residual(p)
    if not np.all(np.isfinite(r)):
        raise FitDomainError("non-finite residuals at the starting point")
    rss = float(np.dot(r, r))
    lam = 1e-3
    scale = np.zeros_like(p)
    for it in range(1, max_iter + 1):
        if rss == 0.0:
            return p, rss, True, it - 1
        jac = jacobian(p)
        scale = np.maximum(scale, np.sqrt(np.sum(jac * jac, axis=0)))
        dscale = np.where(scale > 0, scale, 1.0)
        while True:
            a = np.vstack([jac, np.diag(math.sqrt(lam) * dscale)])
            b = np.concatenate([-r, np.zeros_like(p)])
            step, *_ = np.linalg.lstsq(a, b, rcond=None)
            trial = p + step
            with np.errstate(over="ignore", invalid="ignore"):
                r_new = residual(trial)
            rss_new = float(np.dot(r_new, r_new)) if np.all(np.isfinite(r_new)) else math.inf
            if rss_new < rss:
                break
            lam *= 4.0
            if lam > 1e16:
                return p, rss, True, it
        rel = (rss - rss_new) / rss
        p, r, rss = trial, r_new, rss_new
        lam = max(lam / 3.0, 1e-15)
        if rel < rtol:
            return p, rss, True, it
    return p, rss, False, max_iter


def fit_dsummable(p: EntropyProfile, log_base: str = "e", nu_grid=NU_GRID,
                  max_iter: int = 500, rtol: float = 1e-12) -> FitResult:
    """Nonlinear least squares over (d, beta, nu).

    Levenberg-Marquardt runs from each candidate start (see
    ``candidate_starts``); the lowest final RSS wins.
    """
    eps, y = _check_points(p)
    x = log_eps(eps, log_base)
    lneps = np.log(eps)

    def residual(q):
        d, beta, nu = q
        return (d * x + beta) * eps ** (1.0 - nu) - y

    def jacobian(q):
        d, beta, nu = q
        w = eps ** (1.0 - nu)
        return np.column_stack([x * w, w, -(d * x + beta) * w * lneps])

    grid, _ = grid_start(x, eps, y, nu_grid)
    grid_fit = _result(DSUMMABLE, *grid, residual(grid), y, 3, log_base, p.provenance,
                       converged=False, iterations=0)
    best = None
    for start, _ in candidate_starts(x, eps, y, nu_grid):
        q, rss, converged, iters = levenberg_marquardt(residual, jacobian, start, max_iter, rtol)
        if best is None or rss < best[1]:
            best = (q, rss, converged, iters)
    q, _, converged, iters = best
    if not converged:
        raise FitError(f"no convergence within {max_iter} iterations", best=grid_fit)
    return _result(DSUMMABLE, *q, residual(q), y, 3, log_base, p.provenance,
                   converged=True, iterations=iters)


# -- model comparison -------------------------------------------------------

@dataclass(frozen=True)
class ModelComparison:
    fits: tuple[FitResult, FitResult]
    aic_min: float
    delta_aic: tuple[float, float]
    selected: str

    def _delta(self, model):
        for f, da in zip(self.fits, self.delta_aic):
            if f.model == model:
                return da
        return None

    @property
    def delta_aic_deng(self):
        return self._delta(DENG)

    @property
    def delta_aic_dsummable(self):
        return self._delta(DSUMMABLE)

    def fit(self, model) -> FitResult | None:
        for f in self.fits:
            if f.model == model:
                return f
        return None


def compare(f1: FitResult, f2: FitResult, threshold: float = TIE_THRESHOLD) -> ModelComparison:
    """ΔAIC of each fit from the better one; ``tie`` when both are below ``threshold``."""
    if f1.provenance != f2.provenance:
        raise ComparisonError("fits come from different profiles")
    aics = (f1.aic, f2.aic)
    exact = [math.isinf(a) and a < 0 for a in aics]
    if all(exact):
        # both interpolate the data: fewer parameters wins by the AIC penalty gap
        kmin = min(f1.k, f2.k)
        deltas = tuple(2.0 * (f.k - kmin) for f in (f1, f2))
        aic_min = -math.inf
    elif any(exact):
        deltas = tuple(0.0 if e else math.inf for e in exact)
        aic_min = -math.inf
    else:
        aic_min = min(aics)
        deltas = tuple(a - aic_min for a in aics)
    if max(deltas) < threshold:
        selected = TIE
    else:
        selected = (f1, f2)[deltas.index(0.0)].model
    return ModelComparison(fits=(f1, f2), aic_min=aic_min, delta_aic=deltas, selected=selected)


def fit_report(p: EntropyProfile, comparison: ModelComparison, log_base: str = "e") -> dict:
    return {
        "network": p.network_name,
        "mode": p.mode,
        "log_base": log_base,
        "seed": p.seed,
        "repetitions": p.repetitions,
        "epsilons": list(p.epsilons),
        "fits": [f.to_dict() for f in comparison.fits],
        "aic_min": _finite_or_str(comparison.aic_min),
        "delta_aic": {f.model: _finite_or_str(da)
                      for f, da in zip(comparison.fits, comparison.delta_aic)},
        "selected": comparison.selected,
    }
