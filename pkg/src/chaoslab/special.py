"""Special functions evaluated by quadrature of integral representations."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .quadrature import integrate


def bessel_k1(z: float, *, epsrel: float = 1e-12) -> float:
    """Modified Bessel function of the third kind, index 1.

    Evaluates ``K_1(z) = (1/2) * int_0^oo exp(-z (y + 1/y) / 2) dy`` directly.
    The integrand peaks at ``y = 1``; each side of the peak is integrated with
    its own adaptive rule, the right side after the inversion ``y -> 1/y``
    which maps it back onto ``(0, 1]``.
    """
    if not z > 0.0:
        raise DomainError(f"bessel_k1 requires z > 0, got {z!r}")

    def left(y):
        # guard y=0: exponent -> -inf, integrand -> 0
        with np.errstate(divide="ignore"):
            expo = -0.5 * z * (y + 1.0 / y)
        return np.exp(expo)

    def right_inverted(u):
        # y = 1/u on (0, 1]; dy = du / u^2, folded into the exponent so the
        # underflow of exp(-z/(2u)) cannot meet the overflow of u^-2
        with np.errstate(divide="ignore", invalid="ignore"):
            expo = -0.5 * z * (u + 1.0 / u) - 2.0 * np.log(u)
            return np.where(u > 0.0, np.exp(expo), 0.0)

    lo = integrate(left, 0.0, 1.0, epsabs=0.0, epsrel=epsrel)
    hi = integrate(right_inverted, 0.0, 1.0, epsabs=0.0, epsrel=epsrel)
    return 0.5 * (lo.value + hi.value)
