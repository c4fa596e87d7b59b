"""Elementwise power helpers for the p(k)-Laplacian."""
import numpy as np

# Below this magnitude |x|^p is treated as exactly zero (p >= 2 everywhere).
TINY = 1e-300


def abs_power(x, p):
    """|x|^p, with |x| < TINY mapped to 0 (and x^0 = 1)."""
    x = np.abs(np.asarray(x, dtype=float))
    p = np.asarray(p, dtype=float)
    small = x < TINY
    safe = np.where(small, 1.0, x)
    out = np.exp(p * np.log(safe))
    return np.where(small, np.where(p == 0.0, 1.0, 0.0), out)


def phi_p(x, p):
    """|x|^{p-2} x, the continuous extension with value 0 at x = 0."""
    x = np.asarray(x, dtype=float)
    return np.sign(x) * abs_power(x, np.asarray(p, dtype=float) - 1.0)


def dphi_p(x, p):
    """Derivative (p-1)|x|^{p-2}; equals 1 at x = 0 when p = 2, else 0 there."""
    p = np.asarray(p, dtype=float)
    return (p - 1.0) * abs_power(x, p - 2.0)


def log_power(base: float, exponent: float) -> float:
    """base**exponent through logs; base must be positive."""
    return float(np.exp(exponent * np.log(base)))
