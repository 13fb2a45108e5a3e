"""
DQPT diagnostics of a squeezed quench.

Covers the rate function and its peaks, Fisher-zero lines in complex time,
critical momenta and times, and the (r, phi) control map
Delta(r, phi) = min_k |Delta_k|.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar
from scipy.signal import find_peaks

from app.api.exceptions import GaplessModeException, InvalidArgumentException
from app.config import settings
from app.core.model import quasiparticle_energy
from app.core.quench import (
    build_quench_table,
    delta_k,
    loschmidt_matrix,
    mismatch_angle,
    overlap_amplitudes,
)
from app.entities.diagnostics import (
    CriticalInterval,
    CriticalSet,
    CriticalTime,
    DeltaMap,
    FisherZeroLine,
    FisherZeroSample,
    RateSeries,
)
from app.entities.modes import MomentumGrid
from app.entities.params import QuenchSpec, SqueezeSpec, XYParams
from app.utils.logger import get_logger

logger = get_logger(__name__)


# ============================================================================
# Rate function
# ============================================================================

def validate_times(times: Sequence[float]) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise InvalidArgumentException("time grid must be a non-empty 1-d sequence", field="times")
    if not np.all(np.isfinite(t)):
        raise InvalidArgumentException("time grid must be finite", field="times")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise InvalidArgumentException("time grid must be strictly increasing", field="times")
    return t


def loschmidt_log_amplitude(
    q: QuenchSpec,
    s: SqueezeSpec,
    grid: MomentumGrid,
    times: Sequence[float],
) -> np.ndarray:
    """
    Per-site complex log of the Loschmidt amplitude, (2/N) sum_{k>0} ln G_k(t).

    The real part uses ln max(|G_k|, LOG_FLOOR); the imaginary part sums the
    principal phases of the modes. The echo is exp(N * real part).
    """
    t = validate_times(times)
    if grid.size == 0:
        raise InvalidArgumentException("momentum grid is empty", field="grid")
    g = loschmidt_matrix(build_quench_table(q, s, grid), t)
    log_g = np.log(np.maximum(np.abs(g), settings.LOG_FLOOR)) + 1j * np.angle(g)
    return (2.0 / grid.n_sites) * np.sum(log_g, axis=1)


def rate_function(
    q: QuenchSpec,
    s: SqueezeSpec,
    grid: MomentumGrid,
    times: Sequence[float],
    prominence: Optional[float] = None,
    flip_sign: bool = False,
) -> RateSeries:
    """
    Rate function lambda(t) = -(2/N) sum_{k>0} ln |G_k(t)|.

    Each |G_k| is floored at settings.LOG_FLOOR before the logarithm.

    Args:
        q: Quench
        s: Squeeze applied to the pre-quench ground state
        grid: Momentum grid of the N-site chain
        times: Strictly increasing time samples
        prominence: Peak prominence threshold (defaults to settings.PEAK_PROMINENCE)
        flip_sign: Report +(2/N) sum ln |G_k| instead (peaks become dips)

    Returns:
        RateSeries with detected peak times

    Raises:
        InvalidArgumentException: If the time grid is empty or malformed
    """
    t = validate_times(times)
    values = -loschmidt_log_amplitude(q, s, grid, t).real
    if flip_sign:
        values = -values

    series = RateSeries(times=t, values=values, flip_sign=flip_sign)
    peaks = detect_peaks(series, settings.PEAK_PROMINENCE if prominence is None else prominence)
    logger.debug(f"Rate function on {t.size} times, N={grid.n_sites}: {len(peaks)} peaks")
    return series.with_peaks(peaks)


def _peak_signal(series: RateSeries) -> np.ndarray:
    return -series.values if series.flip_sign else series.values


def detect_peaks(series: RateSeries, prominence: float) -> List[float]:
    """
    Interior local maxima of the rate function with at least ``prominence``.

    Returns:
        Peak times, left to right
    """
    if series.times.size == 0:
        raise InvalidArgumentException("rate series is empty", field="series")
    if prominence <= 0:
        raise InvalidArgumentException("prominence must be positive", field="prominence")
    indices, _ = find_peaks(_peak_signal(series), prominence=prominence)
    return [float(series.times[i]) for i in indices]


def dominant_peaks(
    series: RateSeries, count: int = 2, window: Optional[int] = None
) -> List[float]:
    """
    Times of the ``count`` strongest nonanalyticities, sorted in time.

    Each interior time is scored by the drop of the one-sided slope across it,
    (lambda(t) - lambda(t - w dt)) / w dt minus (lambda(t + w dt) - lambda(t)) / w dt.
    A cusp maximum and a one-sided square-root kink both score high, while a
    smooth bump scores only its curvature times the window.

    Args:
        series: Rate function samples
        count: Number of times to return
        window: Half-width w in samples (defaults to settings.PEAK_SLOPE_WINDOW)

    Returns:
        Up to ``count`` times, left to right
    """
    values = _peak_signal(series)
    n = values.size
    w = min(settings.PEAK_SLOPE_WINDOW if window is None else int(window), (n - 1) // 2)
    if w < 1:
        return []
    t = series.times
    behind, stop, ahead = n - 2 * w, n - w, 2 * w
    left = (values[w:stop] - values[:behind]) / (t[w:stop] - t[:behind])
    right = (values[ahead:] - values[w:stop]) / (t[ahead:] - t[w:stop])
    floor = 1e-9 * (1.0 + float(np.max(np.abs(np.concatenate([left, right])))))
    indices, properties = find_peaks(left - right, height=floor)
    if indices.size == 0:
        return []
    order = np.argsort(properties["peak_heights"], kind="stable")[::-1][:count]
    return sorted(float(t[w + indices[i]]) for i in order)


# ============================================================================
# Fisher zeros
# ============================================================================

def fisher_zero_line(
    n: int,
    q: QuenchSpec,
    s: SqueezeSpec,
    k_samples: Sequence[float],
) -> FisherZeroLine:
    """
    Branch n of z_n(k) = [ln(|B|^2/|A|^2) + i(2n + 1) pi] / (2 eps_k).

    Samples with a vanishing overlap or a gapless post-quench mode are flagged
    as unbounded and carry no numeric tau/t.
    """
    k = np.asarray(k_samples, dtype=float)
    if k.size and (np.any(k <= 0.0) or np.any(k >= math.pi)):
        raise InvalidArgumentException("momentum samples must lie in (0, pi)", field="k_samples")

    a, b = overlap_amplitudes(k, q, s)
    abs_a, abs_b = np.abs(np.atleast_1d(a)), np.abs(np.atleast_1d(b))
    eps = np.atleast_1d(quasiparticle_energy(k, q.post))

    samples: List[FisherZeroSample] = []
    for i, kk in enumerate(k):
        if (
            abs_a[i] < settings.AMPLITUDE_FLOOR
            or abs_b[i] < settings.AMPLITUDE_FLOOR
            or eps[i] <= settings.GAP_FLOOR
        ):
            samples.append(FisherZeroSample(k=float(kk), unbounded=True))
            continue
        tau = math.log(abs_b[i] ** 2 / abs_a[i] ** 2) / (2.0 * eps[i])
        t = (2 * n + 1) * math.pi / (2.0 * eps[i])
        samples.append(FisherZeroSample(k=float(kk), tau=float(tau), t=float(t)))

    line = FisherZeroLine(n=n, samples=samples)
    if line.unbounded_count:
        logger.warning(
            f"Fisher line n={n}: {line.unbounded_count}/{len(samples)} samples unbounded"
        )
    return line


def fisher_zero_family(
    n: int,
    q: QuenchSpec,
    r_values: Sequence[float],
    phi: float,
    k_samples: Sequence[float],
) -> List[FisherZeroLine]:
    """One Fisher-zero line per squeezing strength at fixed direction phi."""
    return [fisher_zero_line(n, q, SqueezeSpec(r=r, phi=phi), k_samples) for r in r_values]


# ============================================================================
# Critical momenta and times
# ============================================================================

def _interior_grid(resolution: int) -> np.ndarray:
    return np.linspace(0.0, math.pi, resolution + 2)[1:-1]


@lru_cache(maxsize=32)
def _angle_profile(q: QuenchSpec, resolution: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = _interior_grid(resolution)
    two_alpha = 2.0 * np.asarray(mismatch_angle(k, q))
    profile = (k, np.cos(two_alpha), np.sin(two_alpha))
    for array in profile:
        array.setflags(write=False)
    return profile


def _delta_on_profile(q: QuenchSpec, s: SqueezeSpec, resolution: int):
    k, cos2a, sin2a = _angle_profile(q, resolution)
    return k, math.cos(2.0 * s.r) * cos2a - math.sin(2.0 * s.r) * math.sin(s.phi) * sin2a


def critical_momenta(
    q: QuenchSpec,
    s: SqueezeSpec,
    resolution: Optional[int] = None,
) -> CriticalSet:
    """
    Roots of Delta_k on (0, pi).

    A uniform scan locates sign changes, each refined by bisection to
    settings.ROOT_XTOL. If |Delta_k| stays below settings.ALL_CRITICAL_TOL
    everywhere, every mode is critical and no isolated roots are reported.
    """
    resolution = resolution or settings.ROOT_RESOLUTION
    k, delta = _delta_on_profile(q, s, resolution)

    if np.max(np.abs(delta)) < settings.ALL_CRITICAL_TOL:
        logger.debug("All modes critical")
        return CriticalSet(all_modes_critical=True)

    def f(x: float) -> float:
        return float(delta_k(x, q, s))

    roots: List[float] = [float(x) for x in k[delta == 0.0]]
    for j in np.nonzero(delta[:-1] * delta[1:] < 0.0)[0]:
        roots.append(float(bisect(f, k[j], k[j + 1], xtol=settings.ROOT_XTOL)))
    roots.sort()
    logger.debug(f"Found {len(roots)} critical momenta")
    return CriticalSet(momenta=roots)


def post_quench_energy_range(p: XYParams, resolution: Optional[int] = None) -> Tuple[float, float]:
    """
    Minimum and maximum of epsilon_k over the closed interval [0, pi].

    Grid scan followed by bounded scalar refinement around each extremum.
    """
    resolution = resolution or settings.ROOT_RESOLUTION
    k = np.linspace(0.0, math.pi, resolution)
    eps = np.asarray(quasiparticle_energy(k, p))

    def refine(index: int, sign: float) -> float:
        lo, hi = k[max(index - 1, 0)], k[min(index + 1, k.size - 1)]
        result = minimize_scalar(
            lambda x: sign * quasiparticle_energy(x, p),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": settings.ROOT_XTOL},
        )
        return float(sign * result.fun)

    i_min, i_max = int(np.argmin(eps)), int(np.argmax(eps))
    return min(float(eps[i_min]), refine(i_min, 1.0)), max(float(eps[i_max]), refine(i_max, -1.0))


def critical_times(cs: CriticalSet, q: QuenchSpec, n_max: int) -> CriticalSet:
    """
    Real-time crossings t_c = (2n + 1) pi / (2 eps_k') for n = 0..n_max.

    When every mode is critical the crossings fill bands whose endpoints come
    from the extrema of the post-quench spectrum.

    Raises:
        InvalidArgumentException: If n_max is negative
        GaplessModeException: If a critical mode has zero post-quench energy
    """
    if n_max < 0:
        raise InvalidArgumentException(f"n_max must be >= 0, got {n_max}", field="n_max")

    if cs.all_modes_critical:
        eps_min, eps_max = post_quench_energy_range(q.post)
        if eps_min <= settings.GAP_FLOOR:
            raise GaplessModeException(energy=eps_min)
        intervals = [
            CriticalInterval(
                n=n,
                t_min=(2 * n + 1) * math.pi / (2.0 * eps_max),
                t_max=(2 * n + 1) * math.pi / (2.0 * eps_min),
            )
            for n in range(n_max + 1)
        ]
        return cs.model_copy(update={"intervals": intervals})

    times: List[CriticalTime] = []
    for k in cs.momenta:
        eps = float(quasiparticle_energy(k, q.post))
        if eps <= settings.GAP_FLOOR:
            raise GaplessModeException(k=k, energy=eps)
        times.extend(
            CriticalTime(k=k, n=n, t=(2 * n + 1) * math.pi / (2.0 * eps)) for n in range(n_max + 1)
        )
    return cs.model_copy(update={"times": times})


# ============================================================================
# Delta criterion and (r, phi) scan
# ============================================================================

def delta_criterion(
    q: QuenchSpec,
    s: SqueezeSpec,
    resolution: Optional[int] = None,
) -> float:
    """
    Delta(r, phi) = min over k in (0, pi) of |Delta_k|.

    Returns exactly 0.0 when the scan brackets a root; otherwise the grid
    minimum is refined with bounded scalar minimization.
    """
    resolution = resolution or settings.ROOT_RESOLUTION
    k, delta = _delta_on_profile(q, s, resolution)

    if np.any(delta == 0.0) or np.any(delta[:-1] * delta[1:] < 0.0):
        return 0.0

    magnitude = np.abs(delta)
    i = int(np.argmin(magnitude))
    lo = k[i - 1] if i > 0 else 0.0
    hi = k[i + 1] if i < k.size - 1 else math.pi
    result = minimize_scalar(
        lambda x: abs(float(delta_k(x, q, s))),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": settings.ROOT_XTOL},
    )
    return float(min(magnitude[i], result.fun))


def _scan_row(args: Tuple[QuenchSpec, float, Tuple[float, ...], int]) -> List[float]:
    q, r, phi_values, resolution = args
    return [delta_criterion(q, SqueezeSpec(r=r, phi=phi), resolution) for phi in phi_values]


def _validate_axis(values: Sequence[float], name: str) -> np.ndarray:
    axis = np.asarray(values, dtype=float)
    if axis.ndim != 1 or axis.size == 0:
        raise InvalidArgumentException(f"{name} must be a non-empty 1-d grid", field=name)
    if np.any(np.diff(axis) < 0):
        raise InvalidArgumentException(f"{name} must be sorted", field=name)
    return axis


def delta_scan(
    q: QuenchSpec,
    r_grid: Sequence[float],
    phi_grid: Sequence[float],
    workers: Optional[int] = None,
    resolution: Optional[int] = None,
) -> DeltaMap:
    """
    Evaluate delta_criterion on every (r, phi) cell.

    Rows are distributed over a process pool when ``workers`` > 1; results
    land in ordered slots so the map does not depend on scheduling.

    Args:
        q: Quench
        r_grid: Sorted squeezing strengths
        phi_grid: Sorted squeezing directions (taken as given, not canonicalised)
        workers: Worker processes (defaults to settings.SCAN_WORKERS)
        resolution: Scan resolution in k

    Returns:
        DeltaMap with delta[i, j] = Delta(r_i, phi_j)
    """
    r_axis = _validate_axis(r_grid, "r_grid")
    phi_axis = _validate_axis(phi_grid, "phi_grid")
    workers = workers or settings.SCAN_WORKERS
    resolution = resolution or settings.ROOT_RESOLUTION

    rows = [(q, float(r), tuple(float(p) for p in phi_axis), resolution) for r in r_axis]
    logger.info(
        f"Scanning {r_axis.size}x{phi_axis.size} (r, phi) cells with {workers} worker(s)"
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_row, rows))
    else:
        results = [_scan_row(row) for row in rows]

    return DeltaMap(r_values=r_axis, phi_values=phi_axis, delta=np.array(results, dtype=float))


__all__ = [
    "validate_times",
    "loschmidt_log_amplitude",
    "rate_function",
    "detect_peaks",
    "dominant_peaks",
    "fisher_zero_line",
    "fisher_zero_family",
    "critical_momenta",
    "post_quench_energy_range",
    "critical_times",
    "delta_criterion",
    "delta_scan",
]
