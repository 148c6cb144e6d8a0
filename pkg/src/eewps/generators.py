"""Extended-Weibull baseline generators.

Each family supplies a cumulative generator H(x; theta) that is nonnegative,
strictly increasing, differentiable, with H -> 0 as x -> 0+ and H -> inf as
x -> inf, together with h = dH/dx, the functional inverse of H, and analytic
partial derivatives in the family parameters (used by the score equations and
the EM maximization steps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq

from .exceptions import DomainError
from .numerics import as_positive_array


@dataclass(frozen=True)
class Generator:
    """Base class; concrete families define the closed forms."""

    name: ClassVar[str] = ""
    param_names: ClassVar[tuple[str, ...]] = ()

    @property
    def theta(self) -> np.ndarray:
        return np.array([getattr(self, p) for p in self.param_names], dtype=float)

    def with_theta(self, theta) -> "Generator":
        """A copy of this generator with the parameter vector replaced."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if theta.size != len(self.param_names):
            raise DomainError(f"{self.name} expects {len(self.param_names)} "
                              f"parameter(s) {self.param_names}, got {theta.size}")
        return type(self)(*theta.tolist())

    def _check_k(self, k: int) -> int:
        if not 0 <= k < len(self.param_names):
            raise IndexError(f"{self.name} has no parameter index {k}")
        return k

    # Concrete families implement _H, _h, _log_h, _H_inv, _dH, _dh on
    # positive float arrays; the public methods validate.

    def big_h(self, x):
        return self._H(as_positive_array(x))[()]

    def small_h(self, x):
        return self._h(as_positive_array(x))[()]

    def log_small_h(self, x):
        return self._log_h(as_positive_array(x))[()]

    def big_h_inverse(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u < 0.0) or not np.all(np.isfinite(u)):
            raise DomainError("big_h_inverse needs u >= 0")
        return self._H_inv(u)[()]

    def d_big_h_d_theta(self, x, k: int):
        return self._dH(as_positive_array(x), self._check_k(k))[()]

    def d_small_h_d_theta(self, x, k: int):
        return self._dh(as_positive_array(x), self._check_k(k))[()]

    def _log_h(self, x):
        return np.log(self._h(x))


@dataclass(frozen=True)
class Exponential(Generator):
    """H(x) = x; the memoryless baseline, no shape parameters."""

    name: ClassVar[str] = "exponential"
    param_names: ClassVar[tuple[str, ...]] = ()

    def _H(self, x):
        return x

    def _h(self, x):
        return np.ones_like(x)

    def _log_h(self, x):
        return np.zeros_like(x)

    def _H_inv(self, u):
        return u

    def _dH(self, x, k):  # pragma: no cover - unreachable, no parameters
        raise IndexError("exponential has no parameters")

    _dh = _dH


@dataclass(frozen=True)
class Weibull(Generator):
    """H(x) = x**gamma, gamma > 0."""

    gamma: float = 1.0

    name: ClassVar[str] = "weibull"
    param_names: ClassVar[tuple[str, ...]] = ("gamma",)

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"weibull needs gamma > 0, got {self.gamma!r}")

    def _H(self, x):
        return x ** self.gamma

    def _h(self, x):
        return self.gamma * x ** (self.gamma - 1.0)

    def _log_h(self, x):
        return math.log(self.gamma) + (self.gamma - 1.0) * np.log(x)

    def _H_inv(self, u):
        return u ** (1.0 / self.gamma)

    def _dH(self, x, k):
        return x ** self.gamma * np.log(x)

    def _dh(self, x, k):
        return x ** (self.gamma - 1.0) * (1.0 + self.gamma * np.log(x))


@dataclass(frozen=True)
class ModifiedWeibull(Generator):
    """H(x) = x**gamma * exp(tau x), gamma > 0, tau >= 0.

    tau = 0 degenerates exactly to the Weibull generator.
    """

    gamma: float = 1.0
    tau: float = 0.0

    name: ClassVar[str] = "modified-weibull"
    param_names: ClassVar[tuple[str, ...]] = ("gamma", "tau")

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"modified-weibull needs gamma > 0, got {self.gamma!r}")
        if not (self.tau >= 0.0 and math.isfinite(self.tau)):
            raise DomainError(f"modified-weibull needs tau >= 0, got {self.tau!r}")

    def _H(self, x):
        return x ** self.gamma * np.exp(self.tau * x)

    def _h(self, x):
        return x ** (self.gamma - 1.0) * (self.gamma + self.tau * x) * np.exp(self.tau * x)

    def _log_h(self, x):
        return ((self.gamma - 1.0) * np.log(x) + np.log(self.gamma + self.tau * x)
                + self.tau * x)

    def _H_inv(self, u):
        # No closed form; monotone bracketing + Brent per element.
        out = np.empty_like(u)
        flat_u, flat_out = u.ravel(), out.ravel()
        for i, ui in enumerate(flat_u):
            if ui == 0.0:
                flat_out[i] = 0.0
                continue
            hi = 1.0
            for _ in range(2000):
                if float(self._H(np.asarray(hi))) >= ui:
                    break
                hi *= 2.0
            flat_out[i] = brentq(lambda s: float(self._H(np.asarray(s))) - ui,
                                 0.0, hi, xtol=1e-12, rtol=4e-16)
        return out

    def _dH(self, x, k):
        if k == 0:
            return x ** self.gamma * np.exp(self.tau * x) * np.log(x)
        return x ** (self.gamma + 1.0) * np.exp(self.tau * x)

    def _dh(self, x, k):
        h = self._h(x)
        if k == 0:
            return h * (np.log(x) + 1.0 / (self.gamma + self.tau * x))
        return h * x * (1.0 + 1.0 / (self.gamma + self.tau * x))


@dataclass(frozen=True)
class LinearFailureRate(Generator):
    """H(x) = a x + b x**2 / 2, a >= 0, b >= 0, a + b > 0.

    The overall exponent scale alpha is frozen to 1 for this family (the
    triple (alpha, a, b) is not identifiable otherwise); see EewpsModel.
    """

    a: float = 1.0
    b: float = 1.0

    name: ClassVar[str] = "linear-failure-rate"
    param_names: ClassVar[tuple[str, ...]] = ("a", "b")

    def __post_init__(self):
        ok = (self.a >= 0.0 and self.b >= 0.0 and self.a + self.b > 0.0
              and math.isfinite(self.a) and math.isfinite(self.b))
        if not ok:
            raise DomainError(f"linear-failure-rate needs a >= 0, b >= 0, a + b > 0, "
                              f"got a={self.a!r}, b={self.b!r}")

    def _H(self, x):
        return self.a * x + 0.5 * self.b * x * x

    def _h(self, x):
        return self.a + self.b * x

    def _H_inv(self, u):
        if self.b == 0.0:
            return u / self.a
        # positive quadratic root, written to avoid cancellation for small b
        disc = np.sqrt(self.a * self.a + 2.0 * self.b * u)
        return 2.0 * u / (self.a + disc)

    def _dH(self, x, k):
        return x if k == 0 else 0.5 * x * x

    def _dh(self, x, k):
        return np.ones_like(x) if k == 0 else x


@dataclass(frozen=True)
class Gompertz(Generator):
    """H(x) = (exp(gamma x) - 1) / gamma, gamma > 0."""

    gamma: float = 1.0

    name: ClassVar[str] = "gompertz"
    param_names: ClassVar[tuple[str, ...]] = ("gamma",)

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"gompertz needs gamma > 0, got {self.gamma!r}")

    def _H(self, x):
        return np.expm1(self.gamma * x) / self.gamma

    def _h(self, x):
        return np.exp(self.gamma * x)

    def _log_h(self, x):
        return self.gamma * x

    def _H_inv(self, u):
        return np.log1p(self.gamma * u) / self.gamma

    def _dH(self, x, k):
        g = self.gamma
        gx = g * x
        exact = (gx * np.exp(gx) - np.expm1(gx)) / (g * g)
        # series branch: the exact form cancels catastrophically for small gx
        series = x * x * (0.5 + gx / 3.0 + gx * gx / 8.0 + gx ** 3 / 30.0)
        return np.where(np.abs(gx) < 1e-3, series, exact)

    def _dh(self, x, k):
        return x * np.exp(self.gamma * x)


@dataclass(frozen=True)
class Chen(Generator):
    """H(x) = exp(x**gamma) - 1, gamma > 0.

    The -1 shift keeps H(0+) = 0, matching the family's own conditions.
    """

    gamma: float = 1.0

    name: ClassVar[str] = "chen"
    param_names: ClassVar[tuple[str, ...]] = ("gamma",)

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"chen needs gamma > 0, got {self.gamma!r}")

    def _H(self, x):
        return np.expm1(x ** self.gamma)

    def _h(self, x):
        xg = x ** self.gamma
        return self.gamma * x ** (self.gamma - 1.0) * np.exp(xg)

    def _log_h(self, x):
        return math.log(self.gamma) + (self.gamma - 1.0) * np.log(x) + x ** self.gamma

    def _H_inv(self, u):
        return np.log1p(u) ** (1.0 / self.gamma)

    def _dH(self, x, k):
        xg = x ** self.gamma
        return xg * np.log(x) * np.exp(xg)

    def _dh(self, x, k):
        xg = x ** self.gamma
        return self._h(x) * (1.0 / self.gamma + np.log(x) * (1.0 + xg))


_FAMILIES = {
    cls.name: cls
    for cls in (Exponential, Weibull, ModifiedWeibull, LinearFailureRate, Gompertz, Chen)
}


def generator_family(name: str) -> type[Generator]:
    """The generator class registered under `name`."""
    try:
        return _FAMILIES[name.strip().lower()]
    except KeyError:
        raise DomainError(f"unknown generator {name!r}; expected one of "
                          f"{sorted(_FAMILIES)}") from None


def make_generator(name: str, params: dict | None = None) -> Generator:
    """Instantiate a generator family, overriding defaults from `params`."""
    cls = generator_family(name)
    params = dict(params or {})
    kwargs = {}
    for f in fields(cls):
        if f.name in params:
            kwargs[f.name] = float(params.pop(f.name))
    if params:
        raise DomainError(f"{name} does not take parameter(s) {sorted(params)}")
    return cls(**kwargs)
