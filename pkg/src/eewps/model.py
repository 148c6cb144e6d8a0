"""The compound lifetime model and its exponentiated baseline.

`EewpsModel` is the distribution of max(X_1, ..., X_N): the X_i are i.i.d.
draws from the exponentiated baseline [1 - exp(-alpha H(x))]**beta and N
follows a zero-truncated power-series law with parameter lambda.  Throughout,
t(x) = 1 - exp(-alpha H(x)) is the beta = 1 baseline cdf; the compound cdf is
C(lambda t**beta) / C(lambda).

All evaluation happens in log space where exponent blow-up is possible: the
data regimes of interest push beta toward 1e7+, where t**(beta-1) underflows
long before the density itself degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .generators import Generator, LinearFailureRate, make_generator
from .numerics import as_positive_array, log1mexp
from .powerseries import PowerSeries, power_series


@dataclass(frozen=True)
class EewModel:
    """Exponentiated baseline: cdf [1 - exp(-alpha H(x))]**beta (the N = 1 case)."""

    generator: Generator
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive, got {self.beta!r}")

    def log_t(self, x):
        """log(1 - exp(-alpha H(x))), the log baseline cdf at beta = 1."""
        return log1mexp(self.alpha * self.generator.big_h(x))

    def log_pdf(self, x):
        x = as_positive_array(x)
        a, b, g = self.alpha, self.beta, self.generator
        big_h = g.big_h(x)
        out = (math.log(a) + math.log(b) + g.log_small_h(x) - a * big_h
               + (b - 1.0) * log1mexp(a * big_h))
        return out[()] if np.ndim(out) else out

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        pos = x > 0.0
        out = np.zeros_like(x)
        if np.any(pos):
            out[pos] = np.exp(self.beta * self.log_t(x[pos]))
        return out[()] if out.ndim == 0 else out

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            raise DomainError("quantile needs u in (0, 1)")
        # 1 - u**(1/beta) via expm1 keeps accuracy for large beta
        arg = -np.log(-np.expm1(np.log(u) / self.beta)) / self.alpha
        return self.generator.big_h_inverse(arg)

    def sample(self, count, seed):
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        u = np.clip(rng.random(int(count)), 1e-16, 1.0 - 1e-16)
        return self.quantile(u)


@dataclass(frozen=True)
class EewpsModel:
    """A bound (generator, compounder, alpha, beta, lambda) triple.

    Immutable; every method is a pure function of (self, argument), so
    instances can be shared freely across threads.
    """

    generator: Generator
    compounder: PowerSeries
    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if isinstance(self.generator, LinearFailureRate) and self.alpha != 1.0:
            raise DomainError("alpha is frozen to 1 for the linear-failure-rate "
                              "family (it is absorbed by a and b)")
        self.compounder.check_lambda(self.lam)
        if not math.isfinite(self.compounder._c(self.lam)):
            raise DomainError(f"C(lambda) overflows at lambda={self.lam!r}")

    @property
    def baseline(self) -> EewModel:
        """The N = 1 component with the same alpha, beta, generator."""
        return EewModel(self.generator, self.alpha, self.beta)

    # -- internals -----------------------------------------------------------

    def _log_t(self, x):
        return log1mexp(self.alpha * self.generator.big_h(x))

    def _y(self, log_t):
        """lambda * t**beta, the compounder argument."""
        return self.lam * np.exp(self.beta * log_t)

    # -- evaluation ----------------------------------------------------------

    def log_pdf(self, x):
        x = as_positive_array(x)
        a, b, lam = self.alpha, self.beta, self.lam
        g, ps = self.generator, self.compounder
        big_h = g.big_h(x)
        lt = log1mexp(a * big_h)
        out = (math.log(a) + math.log(b) + math.log(lam)
               + g.log_small_h(x) - a * big_h + (b - 1.0) * lt
               + ps._log_c_prime(self._y(lt)) - ps._log_c(lam))
        return out[()] if np.ndim(out) else out

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        pos = x > 0.0
        out = np.zeros_like(x)
        if np.any(pos):
            y = self._y(self._log_t(x[pos]))
            out[pos] = self.compounder._c(y) / self.compounder._c(self.lam)
        return out[()] if out.ndim == 0 else out

    def survival(self, x):
        return 1.0 - self.cdf(x)

    def hazard(self, x):
        """pdf / survival, guarded: +inf where the survival mass underflows."""
        x = as_positive_array(x)
        a, b, lam = self.alpha, self.beta, self.lam
        g, ps = self.generator, self.compounder
        big_h = g.big_h(x)
        lt = log1mexp(a * big_h)
        y = self._y(lt)
        log_num = (math.log(a) + math.log(b) + math.log(lam)
                   + g.log_small_h(x) - a * big_h + (b - 1.0) * lt
                   + ps._log_c_prime(y))
        denom = ps._c(lam) - ps._c(y)
        with np.errstate(divide="ignore", over="ignore"):
            out = np.where(denom > 0.0, np.exp(log_num - np.log(np.where(denom > 0.0, denom, 1.0))),
                           np.inf)
        return out[()] if np.ndim(out) else out

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0.0) or np.any(u >= 1.0) or not np.all(np.isfinite(u)):
            raise DomainError("quantile needs u in (0, 1)")
        ps = self.compounder
        w = ps._c_inverse(ps._c(self.lam) * u) / self.lam
        # x = H^{-1}( -log(1 - w**(1/beta)) / alpha ), all logs kept stable
        aa = -np.log(w) / self.beta
        with np.errstate(divide="ignore"):
            arg = -log1mexp(aa) / self.alpha
        return self.generator.big_h_inverse(arg)

    def sample(self, count, seed):
        """Inverse-transform draws; deterministic for a fixed integer seed."""
        count = int(count)
        if count < 1:
            raise DomainError("sample count must be >= 1")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        u = np.clip(rng.random(count), 1e-16, 1.0 - 1e-16)
        return self.quantile(u)

    # -- latent component count ----------------------------------------------

    def _conditional_log_weights(self, x, n_max):
        """Unnormalized log P(N = n | X = x) for n = 1..n_max (common factors dropped)."""
        lt = float(self._log_t(float(x)))
        n = np.arange(1, n_max + 1)
        with np.errstate(divide="ignore"):
            return (self.compounder.log_coefficient(n) + n * math.log(self.lam)
                    + np.log(n) + n * self.beta * lt)

    def _conditional_norm(self, x):
        """(weights, normalizer) with adaptive truncation to a 1e-16 tail."""
        n_max = 64
        while True:
            lw = self._conditional_log_weights(x, n_max)
            m = np.max(lw)
            if m == -np.inf:
                raise DomainError("conditional component-count weights vanish")
            w = np.exp(lw - m)
            total = w.sum()
            ratio = w[-1] / w[-2] if w[-2] > 0.0 else 0.0
            tail = w[-1] * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
            if tail <= 1e-16 * total or n_max >= (1 << 20):
                return w, total, m, n_max
            n_max *= 2

    def conditional_n_pmf(self, x, n):
        """P(N = n | X = x), the latent-count posterior at a single point."""
        x = float(as_positive_array(x, "x"))
        n_arr = np.asarray(n)
        if np.any(n_arr < 1):
            raise DomainError("component count n must be >= 1")
        w, total, m, n_max = self._conditional_norm(x)
        scalar = np.ndim(n) == 0
        idx = np.atleast_1d(n_arr).astype(int)
        out = np.empty(idx.shape, dtype=float)
        inside = idx <= n_max
        out[inside] = w[idx[inside] - 1] / total
        if np.any(~inside):
            lw_far = np.array([self._conditional_log_weights(x, i)[-1] for i in idx[~inside]])
            out[~inside] = np.exp(lw_far - m) / total
        return float(out[0]) if scalar else out

    def conditional_n_mean(self, x):
        """E[N | X = x] by direct truncated summation (the E-step oracle)."""
        x = float(as_positive_array(x, "x"))
        w, total, _, n_max = self._conditional_norm(x)
        return float(np.arange(1, n_max + 1) @ w / total)


@dataclass(frozen=True)
class Submodel:
    """A named preset: generator family, optional compounder, frozen parameters."""

    generator: str
    compounder: str | None
    fixed: dict


# Named special cases.  The first five are the concrete models fitted to the
# mechanical-components data; the class presets below them fix only the
# generator (any compounder may be attached).
SUBMODELS = {
    "ewg": Submodel("weibull", "geometric", {}),
    "cwg": Submodel("weibull", "geometric", {"beta": 1.0}),
    "geg": Submodel("exponential", "geometric", {}),
    "ecl": Submodel("chen", "logarithmic", {}),
    "ccl": Submodel("chen", "logarithmic", {"beta": 1.0}),
    "geps": Submodel("exponential", None, {}),
    "ewps": Submodel("weibull", None, {}),
    "gmwps": Submodel("modified-weibull", None, {}),
    "glfrps": Submodel("linear-failure-rate", None, {}),
    "ggps": Submodel("gompertz", None, {}),
    "cewps": Submodel("weibull", None, {"beta": 1.0}),
}


def submodel(name: str) -> Submodel:
    try:
        return SUBMODELS[name.strip().lower()]
    except KeyError:
        raise DomainError(f"unknown submodel {name!r}; known: {sorted(SUBMODELS)}") from None


def build_model(generator: str | Generator, compounder: str | PowerSeries,
                alpha: float, beta: float, lam: float,
                theta: dict | None = None) -> EewpsModel:
    """Convenience constructor from string identifiers and named parameters."""
    gen = make_generator(generator, theta) if isinstance(generator, str) else generator
    ps = power_series(compounder) if isinstance(compounder, str) else compounder
    return EewpsModel(gen, ps, float(alpha), float(beta), float(lam))
