#!/usr/bin/env python3
"""Generate the embedded Chernoff-distribution quantile table.

Z = argmax_t (W(t) - t^2) has density f(z) = g(z) g(-z) / 2, where g is
recovered from its Fourier transform 2^(1/3) / Ai(i 2^(-1/3) lambda).
The CDF is integrated on a fine grid and inverted with a cubic spline.

Usage: python3 tools/chernoff_table.py > src/chernoff_table.inc
"""
import warnings

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad
from scipy.interpolate import CubicSpline
from scipy.special import airy

warnings.simplefilter("ignore")

SCALE = 2.0 ** (-1.0 / 3.0)


def g(t):
    def integrand(lam):
        return (np.exp(-1j * lam * t) * 2.0 ** (1.0 / 3.0) / airy(1j * SCALE * lam)[0]).real

    value, _ = quad(integrand, 0.0, 40.0, limit=400, epsabs=1e-14, epsrel=1e-12)
    return value / np.pi


def main():
    z = np.linspace(0.0, 3.0, 6001)
    gp = np.array([g(t) for t in z])
    gm = np.array([g(-t) for t in z])
    density = 0.5 * gp * gm
    cdf = 0.5 + cumulative_trapezoid(density, z, initial=0.0)
    # trapezoid error is O(h^2); refine with Richardson on the half grid
    coarse = 0.5 + cumulative_trapezoid(density[::2], z[::2], initial=0.0)
    cdf[::2] = cdf[::2] + (cdf[::2] - coarse) / 3.0
    keep = np.concatenate(([True], np.diff(cdf) > 0))
    inverse = CubicSpline(cdf[::2][keep[::2]], z[::2][keep[::2]])

    probs = [round(0.5 + 0.001 * i, 4) for i in range(500)] + [0.9995, 0.9999]
    print("// Generated by tools/chernoff_table.py. Do not edit.")
    print("// {upper-tail probability p >= 0.5, quantile q(p)}; q(1 - p) = -q(p).")
    for p in probs:
        q = 0.0 if p == 0.5 else float(inverse(p))
        print(f"{{{p:.4f}, {q:.9f}}},")


if __name__ == "__main__":
    main()
