"""
=======================
Special functions module
=======================

Cumulative distribution, survival, density and quantile functions of the Student-t and
standard normal reference distributions.

Every function accepts a scalar or a numpy array and returns the same shape.
The Student-t CDF is evaluated through the regularized incomplete beta function,
choosing the argument form that avoids cancellation on either side of ``x**2 = dof``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from pydantic.v1 import validator
from scipy import special, stats

from bvalue import constants, defaults, errors
from bvalue.dto import DTOMixin
from bvalue.types import ArrayLike


class RefDist(DTOMixin):
    """
    Reference distribution of a standardized test statistic.

    Attributes:
        kind: ``StudentT`` or ``Normal``.
        dof: Degrees of freedom, required for ``StudentT`` and ignored for ``Normal``.
    """
    kind: constants.DistKind
    dof: Optional[float] = None

    @validator('dof', always=True)
    def _check_dof(cls, dof, values):
        if values.get('kind') == constants.DistKind.NORMAL:
            return None
        if dof is None or not np.isfinite(dof) or dof <= 0:
            raise errors.DomainError(f'Student-t degrees of freedom must be a positive real, got {dof}.')
        return float(dof)

    @classmethod
    def student_t(cls, dof: float) -> RefDist:
        return cls(kind=constants.DistKind.STUDENT_T, dof=dof)

    @classmethod
    def normal(cls) -> RefDist:
        return cls(kind=constants.DistKind.NORMAL)

    @classmethod
    def for_mode(cls, dist_mode: constants.DistMode, dof: float) -> RefDist:
        """
        Reference distribution for a test mode, ``t`` uses ``dof`` and ``z`` ignores it.
        """
        if dist_mode == constants.DistMode.Z:
            return cls.normal()
        return cls.student_t(dof)

    @property
    def is_normal(self) -> bool:
        return self.kind == constants.DistKind.NORMAL


def _prepare(x: ArrayLike, name: str = 'x') -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise errors.DomainError(f'{name} must be finite, got {x}.')
    return arr, arr.ndim == 0


def _finish(arr: np.ndarray, scalar: bool) -> ArrayLike:
    return float(arr) if scalar else arr


def _t_cdf(dof: float, x: np.ndarray) -> np.ndarray:
    x2 = x * x
    with np.errstate(divide='ignore', invalid='ignore'):
        # central form, accurate for small |x|
        half = 0.5 * special.betainc(0.5, 0.5 * dof, x2 / (dof + x2))
        # tail form, accurate for large |x|
        tail = 0.5 * special.betainc(0.5 * dof, 0.5, dof / (dof + x2))
    central = 0.5 + np.sign(x) * half
    tails = np.where(x < 0, tail, 1.0 - tail)
    return np.where(x2 < dof, central, tails)


def cdf(d: RefDist, x: ArrayLike) -> ArrayLike:
    """
    Cumulative distribution function P(T <= x).

    Raises:
        DomainError: If ``x`` is not finite.
    """
    arr, scalar = _prepare(x)
    if d.is_normal:
        return _finish(special.ndtr(arr), scalar)
    return _finish(_t_cdf(d.dof, arr), scalar)  # type: ignore


def sf(d: RefDist, x: ArrayLike) -> ArrayLike:
    """
    Survival function P(T > x), computed by symmetry so upper tails keep full precision.
    """
    arr, scalar = _prepare(x)
    return _finish(np.asarray(cdf(d, -arr)), scalar)


def pdf(d: RefDist, x: ArrayLike) -> ArrayLike:
    """
    Probability density function.

    Raises:
        DomainError: If ``x`` is not finite.
    """
    arr, scalar = _prepare(x)
    if d.is_normal:
        return _finish(stats.norm.pdf(arr), scalar)
    return _finish(stats.t.pdf(arr, d.dof), scalar)


def quantile(d: RefDist, p: ArrayLike) -> ArrayLike:
    """
    Inverse cumulative distribution function.

    The bracketed starting value comes from scipy's inverse functions, it is then polished with
    safeguarded Newton steps against :py:func:`cdf` so that ``cdf(d, quantile(d, p))``
    reproduces ``p`` to the precision of this module's own CDF.

    Raises:
        DomainError: If ``p`` is not strictly between 0 and 1.
    """
    arr, scalar = _prepare(p, 'p')
    if np.any((arr <= 0.0) | (arr >= 1.0)):
        raise errors.DomainError(f'p must lie in (0, 1), got {p}.')

    if d.is_normal:
        return _finish(special.ndtri(arr), scalar)

    x = special.stdtrit(d.dof, arr)
    upper = arr > 0.5
    for _ in range(defaults.config['newton_steps']):
        error = _signed_error(d, x, arr, upper)
        density = np.asarray(pdf(d, x))
        with np.errstate(divide='ignore', invalid='ignore'):
            step = np.where(density > 0, error / density, 0.0)
        candidate = x - step
        candidate = np.where(np.isfinite(candidate), candidate, x)
        improves = np.abs(_signed_error(d, candidate, arr, upper)) < np.abs(error)
        if not np.any(improves):
            break
        x = np.where(improves, candidate, x)

    return _finish(np.asarray(x, dtype=float), scalar)


def _signed_error(d: RefDist, x: np.ndarray, p: np.ndarray, upper: np.ndarray) -> np.ndarray:
    # cdf(x) - p, evaluated on the survival side in the upper half
    lower_error = np.asarray(cdf(d, x)) - p
    upper_error = (1.0 - p) - np.asarray(sf(d, x))
    return np.where(upper, upper_error, lower_error)


@lru_cache(maxsize=512)
def _critical_values(kind: str, dof: Optional[float], alpha: float) -> Tuple[float, float]:
    dist = RefDist(kind=kind, dof=dof)
    return float(quantile(dist, 1.0 - alpha)), float(quantile(dist, 1.0 - alpha / 2.0))


def critical_values(d: RefDist, alpha: float) -> Tuple[float, float]:
    """
    Critical values used throughout the library.

    Args:
        d: Reference distribution.
        alpha: Significance level.
    Returns:
        The pair ``(q_{1-alpha}, q_{1-alpha/2})``, the half-widths of the
        100(1-2alpha)% and 100(1-alpha)% intervals in standard-error units.
    """
    if not 0.0 < alpha < 1.0:
        raise errors.DomainError(f'alpha must lie in (0, 1), got {alpha}.')
    return _critical_values(d.kind, d.dof, float(alpha))
