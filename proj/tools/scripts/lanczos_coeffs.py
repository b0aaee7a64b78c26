#!/usr/bin/env python3
"""Regenerate the Lanczos coefficients frozen in core/src/specfun.cpp.

Fits A(z) = c0 + sum_k c_k / (z + k) to Gamma(z+1) / (sqrt(2 pi) t^(z+1/2) e^-t),
t = z + g + 1/2, by exact interpolation at z = 0..n-1 in 60-digit arithmetic,
then reports the worst relative error of the resulting double-precision
approximation on a complex test grid with Re(z) >= 1/2.
"""
import mpmath as mp

mp.mp.dps = 60
G = mp.mpf(607) / 128
N = 15


def target(z):
    t = z + G + mp.mpf(1) / 2
    return mp.gamma(z + 1) / (mp.sqrt(2 * mp.pi) * t ** (z + mp.mpf(1) / 2) * mp.exp(-t))


def main():
    pts = [mp.mpf(j) for j in range(N)]
    rows = [[mp.mpf(1)] + [1 / (z + k) for k in range(1, N)] for z in pts]
    coeffs = mp.lu_solve(mp.matrix(rows), mp.matrix([target(z) for z in pts]))
    for c in coeffs:
        print(f"    {mp.nstr(c, 20, strip_zeros=False)},")

    worst = mp.mpf(0)
    for re in [0.5, 0.75, 1, 2, 5, 10, 30, 100]:
        for im in [0, 0.5, 3, 10, 40, 150]:
            z = mp.mpc(re, im) - 1
            a = coeffs[0] + sum(coeffs[k] / (z + k) for k in range(1, N))
            t = z + G + mp.mpf(1) / 2
            approx = mp.sqrt(2 * mp.pi) * t ** (z + mp.mpf(1) / 2) * mp.exp(-t) * a
            worst = max(worst, abs(approx / mp.gamma(z + 1) - 1))
    print(f"# g = 607/128, n = {N}, worst relative error = {mp.nstr(worst, 3)}")


if __name__ == "__main__":
    main()
