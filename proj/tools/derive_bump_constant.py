#!/usr/bin/env python3
"""Constant of the maximal inequality for the cut-off u(x) = (1 - |x|^2)^4_+.

    c_d = 2 * int_{R^d} (1 + |xi|^2) |u_hat(xi)| dxi,
    u_hat(xi) = (2 pi)^-d int u(x) e^{-i xi.x} dx.

The factor 2 comes from |q(y, xi/r)| <= 2 sup_{|eta| <= 1/r} |q(y, eta)| (1 + |xi|^2).
For the radial bump, Sonine's integral gives
    u_hat(rho) = (2 pi)^{-d/2} 2^4 4! J_{d/2+4}(rho) / rho^{d/2+4}.
The radial integral is summed between consecutive zeros of J, and the tail
beyond R uses |J_nu(rho)| ~ sqrt(2 / (pi rho)) with mean |cos| = 2 / pi.

Prints the values embedded in src/feller_symbols.cpp.
"""
import numpy as np
from scipy import integrate, optimize, special


def sphere_area(d):
    return 2 * np.pi ** (d / 2) / special.gamma(d / 2)


def bump_constant(d, cutoff=8000.0):
    nu = d / 2 + 4
    pref = (2 * np.pi) ** (-d / 2) * 384

    def radial(rho):
        return (1 + rho**2) * abs(special.jv(nu, rho)) * rho ** (d - 1 - nu)

    # sign changes of J_nu split the integral into smooth pieces
    grid = np.arange(0.0, cutoff + 0.25, 0.25)
    vals = special.jv(nu, grid)
    cuts = [0.0]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if a > 0 and fa * fb < 0:
            cuts.append(optimize.brentq(lambda r: special.jv(nu, r), a, b, xtol=1e-14))
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += integrate.quad(radial, a, b, epsabs=0, epsrel=1e-12, limit=200)[0]
    last = cuts[-1]
    # tail: rho^2 sqrt(2 / (pi rho)) (2 / pi) rho^(d - 1 - nu)
    expo = 1.5 + d - 1 - nu
    tail = np.sqrt(2 / np.pi) * (2 / np.pi) * (-(last ** (expo + 1)) / (expo + 1))
    return 2 * sphere_area(d) * pref * (total + tail)


if __name__ == "__main__":
    for d in (1, 2, 3):
        print(f"d={d}: c = {bump_constant(d):.12g}")
