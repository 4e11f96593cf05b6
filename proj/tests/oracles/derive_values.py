"""Extended-precision reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/derive_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def poisson_pmf(mean, n):
    return mp.e ** (-mean) * mean ** n / mp.factorial(n)


def main():
    gamma0 = mp.mpf("0.127") / (2 * mp.pi)
    print("poisson(9) p8          ", mp.nstr(poisson_pmf(9, 8), 20))
    print("poisson(9) p9          ", mp.nstr(poisson_pmf(9, 9), 20))
    tail = 1 - mp.fsum(poisson_pmf(9, n) for n in range(11))
    print("poisson(9) tail n>10   ", mp.nstr(tail, 20))
    print("Omega_1/2pi kHz (g=94) ", mp.nstr(2 * 94 * mp.sqrt(2), 20))
    print("0.5 coth(1)            ", mp.nstr(mp.coth(1) / 2, 20))
    print("0.01 (2 sqrt2)^0.4     ", mp.nstr(mp.mpf("0.01") * (2 * mp.sqrt(2)) ** mp.mpf("0.4"), 20))
    print("gamma0                 ", mp.nstr(gamma0, 20))
    print("gamma0 2^0.7           ", mp.nstr(gamma0 * 2 ** mp.mpf("0.7"), 20))
    print("4^0.7                  ", mp.nstr(4 ** mp.mpf("0.7"), 20))
    hbar = mp.mpf("1.054571817e-34")
    mass = mp.mpf("1.496e-26")
    omega = 2 * mp.pi * mp.mpf("11.2e6")
    print("x0 Be+ 11.2 MHz (m)    ", mp.nstr(mp.sqrt(hbar / (2 * mass * omega)), 20))
    print("exp gamma0_tilde*2pi   ", mp.nstr(mp.mpf("11.9") / 94, 20))


if __name__ == "__main__":
    main()
