"""Zero-truncated power-series frequency laws.

A compounder is the normalizing series C(lam) = sum_{n>=1} a_n lam^n of a
zero-truncated discrete law p_n = a_n lam^n / C(lam), lam in (0, s).  Four
families ship: geometric, Poisson, logarithmic and binomial with a fixed
trial count m.  Every quantity below is an exact closed form; the underscore
methods are the relaxed-domain kernels (y in [0, s)) that distribution
evaluation uses internally, the public ones validate lam in (0, s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from scipy.special import gammaln

from .exceptions import DomainError
from .numerics import log1mexp

# Inputs this close to an endpoint of (0, s) are rejected, never clamped.
ENDPOINT_GUARD = 1e-12


@dataclass(frozen=True)
class PowerSeries:
    """Base class for the four shipped compounders."""

    name: ClassVar[str] = ""
    lambda_sup: ClassVar[float] = math.inf
    # c = min{n : a_n > 0}; equals 1 for every shipped family.
    first_support: ClassVar[int] = 1

    # -- validation ---------------------------------------------------------

    def check_lambda(self, lam: float) -> float:
        lam = float(lam)
        if not math.isfinite(lam) or lam <= ENDPOINT_GUARD:
            raise DomainError(
                f"{self.name}: lambda must lie in (0, {self.lambda_sup}), got {lam!r}")
        if math.isfinite(self.lambda_sup) and lam >= self.lambda_sup - ENDPOINT_GUARD:
            raise DomainError(
                f"{self.name}: lambda must lie in (0, {self.lambda_sup}), got {lam!r}")
        return lam

    # -- series coefficients ------------------------------------------------

    def coefficient(self, n: int) -> float:
        """a_n for integer n >= 1."""
        raise NotImplementedError

    def log_coefficient(self, n):
        """log a_n, vectorized; -inf where a_n = 0."""
        raise NotImplementedError

    # -- public closed forms (validated lambda) ------------------------------

    def c_value(self, lam: float) -> float:
        return float(self._c(self.check_lambda(lam)))

    def c_prime(self, lam: float) -> float:
        return float(self._c_prime(self.check_lambda(lam)))

    def c_double_prime(self, lam: float) -> float:
        return float(self._c_double_prime(self.check_lambda(lam)))

    def c_triple_prime(self, lam: float) -> float:
        return float(self._c_triple_prime(self.check_lambda(lam)))

    def c_inverse(self, u: float) -> float:
        """lam with C(lam) = u; defined for 0 < u < C(s-) = inf."""
        u = float(u)
        if not math.isfinite(u) or u <= 0.0:
            raise DomainError(f"{self.name}: c_inverse needs 0 < u < C(s-), got {u!r}")
        return float(self._c_inverse(u))

    def pmf(self, lam: float, n) -> float:
        """p_n = a_n lam^n / C(lam); log-space above n = 50 for overflow safety."""
        lam = self.check_lambda(lam)
        n = np.asarray(n)
        if np.any(n < 1) or not np.issubdtype(n.dtype, np.integer):
            raise DomainError("pmf index n must be an integer >= 1")
        if np.all(n <= 50):
            coeff = np.vectorize(self.coefficient, otypes=[float])(n)
            out = coeff * lam ** n / self._c(lam)
        else:
            out = np.exp(self.log_pmf(lam, n))
        return out[()] if out.ndim == 0 else out

    def log_pmf(self, lam: float, n):
        lam = self.check_lambda(lam)
        n = np.asarray(n, dtype=float)
        with np.errstate(divide="ignore"):
            out = self.log_coefficient(n) + n * math.log(lam) - self._log_c(lam)
        return out[()] if out.ndim == 0 else out

    # -- relaxed-domain kernels (y in [0, s), arrays welcome) ----------------

    def _c(self, y):
        raise NotImplementedError

    def _c_prime(self, y):
        raise NotImplementedError

    def _c_double_prime(self, y):
        raise NotImplementedError

    def _c_triple_prime(self, y):
        raise NotImplementedError

    def _c_inverse(self, u):
        raise NotImplementedError

    def _log_c(self, y):
        with np.errstate(divide="ignore"):
            return np.log(self._c(y))

    def _log_c_prime(self, y):
        return np.log(self._c_prime(y))

    def _ratio_21(self, y):
        """C''(y) / C'(y), the ratio driving hazard shape and the E-step."""
        return self._c_double_prime(y) / self._c_prime(y)

    def _dlog_lam_over_c(self, lam):
        """d/dlam [log lam - log C(lam)] = 1/lam - C'(lam)/C(lam)."""
        return 1.0 / lam - self._c_prime(lam) / self._c(lam)


@dataclass(frozen=True)
class Geometric(PowerSeries):
    """C(lam) = lam / (1 - lam) on (0, 1); a_n = 1."""

    name: ClassVar[str] = "geometric"
    lambda_sup: ClassVar[float] = 1.0

    def coefficient(self, n):
        return 1.0

    def log_coefficient(self, n):
        return np.zeros_like(np.asarray(n, dtype=float))

    def _c(self, y):
        return y / (1.0 - y)

    def _c_prime(self, y):
        return (1.0 - y) ** -2.0

    def _c_double_prime(self, y):
        return 2.0 * (1.0 - y) ** -3.0

    def _c_triple_prime(self, y):
        return 6.0 * (1.0 - y) ** -4.0

    def _c_inverse(self, u):
        return u / (1.0 + u)

    def _log_c(self, y):
        with np.errstate(divide="ignore"):
            return np.log(y) - np.log1p(-y)

    def _log_c_prime(self, y):
        return -2.0 * np.log1p(-y)

    def _ratio_21(self, y):
        return 2.0 / (1.0 - y)

    def _dlog_lam_over_c(self, lam):
        return -1.0 / (1.0 - lam)


@dataclass(frozen=True)
class Poisson(PowerSeries):
    """C(lam) = exp(lam) - 1 on (0, inf); a_n = 1/n!."""

    name: ClassVar[str] = "poisson"
    lambda_sup: ClassVar[float] = math.inf

    def coefficient(self, n):
        return 1.0 / math.factorial(int(n))

    def log_coefficient(self, n):
        return -gammaln(np.asarray(n, dtype=float) + 1.0)

    def _c(self, y):
        return np.expm1(y)

    def _c_prime(self, y):
        return np.exp(y)

    def _c_double_prime(self, y):
        return np.exp(y)

    def _c_triple_prime(self, y):
        return np.exp(y)

    def _c_inverse(self, u):
        return np.log1p(u)

    def _log_c(self, y):
        return np.asarray(y, dtype=float) + log1mexp(y)

    def _log_c_prime(self, y):
        return np.asarray(y, dtype=float)

    def _ratio_21(self, y):
        return np.ones_like(np.asarray(y, dtype=float))

    def _dlog_lam_over_c(self, lam):
        return 1.0 / lam - 1.0 / (-np.expm1(-lam))


@dataclass(frozen=True)
class Logarithmic(PowerSeries):
    """C(lam) = -log(1 - lam) on (0, 1); a_n = 1/n."""

    name: ClassVar[str] = "logarithmic"
    lambda_sup: ClassVar[float] = 1.0

    def coefficient(self, n):
        return 1.0 / float(n)

    def log_coefficient(self, n):
        return -np.log(np.asarray(n, dtype=float))

    def _c(self, y):
        return -np.log1p(-y)

    def _c_prime(self, y):
        return 1.0 / (1.0 - y)

    def _c_double_prime(self, y):
        return (1.0 - y) ** -2.0

    def _c_triple_prime(self, y):
        return 2.0 * (1.0 - y) ** -3.0

    def _c_inverse(self, u):
        return -np.expm1(-u)

    def _log_c(self, y):
        with np.errstate(divide="ignore"):
            return np.log(-np.log1p(-y))

    def _log_c_prime(self, y):
        return -np.log1p(-y)

    def _ratio_21(self, y):
        return 1.0 / (1.0 - y)

    def _dlog_lam_over_c(self, lam):
        return 1.0 / lam - 1.0 / ((1.0 - lam) * (-np.log1p(-lam)))


@dataclass(frozen=True)
class Binomial(PowerSeries):
    """C(lam) = (1 + lam)^m - 1 on (0, inf); a_n = binom(m, n).

    The trial count m is a structural constant of the compounder, never a
    fitted parameter.
    """

    m: int = 2

    name: ClassVar[str] = "binomial"
    lambda_sup: ClassVar[float] = math.inf

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"binomial trial count m must be an integer >= 1, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))

    def coefficient(self, n):
        n = int(n)
        return float(math.comb(self.m, n)) if n <= self.m else 0.0

    def log_coefficient(self, n):
        n = np.asarray(n, dtype=float)
        m = float(self.m)
        with np.errstate(invalid="ignore"):
            out = gammaln(m + 1.0) - gammaln(n + 1.0) - gammaln(m - n + 1.0)
        return np.where(n <= m, out, -np.inf)

    def _c(self, y):
        return np.expm1(self.m * np.log1p(y))

    def _c_prime(self, y):
        return self.m * np.exp((self.m - 1.0) * np.log1p(y))

    def _c_double_prime(self, y):
        return self.m * (self.m - 1.0) * np.exp((self.m - 2.0) * np.log1p(y))

    def _c_triple_prime(self, y):
        m = float(self.m)
        return m * (m - 1.0) * (m - 2.0) * np.exp((m - 3.0) * np.log1p(y))

    def _c_inverse(self, u):
        return np.expm1(np.log1p(u) / self.m)

    def _log_c(self, y):
        t = self.m * np.log1p(y)
        with np.errstate(divide="ignore"):
            return t + log1mexp(t)

    def _log_c_prime(self, y):
        return math.log(self.m) + (self.m - 1.0) * np.log1p(y)

    def _ratio_21(self, y):
        return (self.m - 1.0) / (1.0 + y)

    def _dlog_lam_over_c(self, lam):
        return 1.0 / lam - self.m / ((1.0 + lam) * (-np.expm1(-self.m * np.log1p(lam))))


def power_series(spec: str) -> PowerSeries:
    """Look up a compounder by identifier.

    Accepted forms: "geometric", "poisson", "logarithmic", "binomial:<m>".
    """
    key = spec.strip().lower()
    if key == "geometric":
        return Geometric()
    if key == "poisson":
        return Poisson()
    if key == "logarithmic":
        return Logarithmic()
    if key.startswith("binomial"):
        _, _, arg = key.partition(":")
        if not arg:
            raise DomainError("binomial compounder needs a trial count, e.g. 'binomial:3'")
        try:
            m = int(arg)
        except ValueError:
            raise DomainError(f"invalid binomial trial count {arg!r}") from None
        return Binomial(m)
    raise DomainError(f"unknown compounder {spec!r}; expected geometric, poisson, "
                      "logarithmic or binomial:<m>")
