"""High-precision oracle for the coherent-state phase variance.

Integrates the double-sum phase density of a coherent state over
(theta - pi, theta + pi] with mpmath quadrature and, independently, sums the
reindexed (k, n) series. Both are printed at 20 digits; the C++ tests freeze
these numbers.
"""
import mpmath as mp

mp.mp.dps = 40


def density_double_sum(absg, u, nmax):
    # (2 pi)^-1 e^{-|g|^2} sum_{m,n} |g|^{m+n} e^{i (m-n) u} / sqrt(m! n!)
    # evaluated as the squared magnitude of the single sum over n
    amp = mp.mpc(0)
    for n in range(nmax + 1):
        amp += absg**n / mp.sqrt(mp.factorial(n)) * mp.expj(n * u)
    return abs(amp) ** 2 * mp.e ** (-absg**2) / (2 * mp.pi)


def variance_quad(gsq, nmax=60):
    absg = mp.sqrt(gsq)
    f = lambda u: u * u * density_double_sum(absg, u, nmax)
    return mp.quad(f, [-mp.pi, -1, 0, 1, mp.pi])


def variance_series(gsq, kmax=400):
    absg = mp.sqrt(gsq)
    s = mp.mpf(0)
    for k in range(1, kmax):
        for n in range(0, (k - 1) // 2 + 1):
            s += (-absg) ** k / ((k - 2 * n) ** 2 * mp.sqrt(mp.factorial(k - n) * mp.factorial(n)))
    return mp.pi**2 / 3 + 4 * mp.e ** (-absg**2) * s


if __name__ == "__main__":
    for gsq in ["0", "0.5", "1", "2", "5"]:
        q = variance_quad(mp.mpf(gsq))
        s = variance_series(mp.mpf(gsq))
        print(gsq, mp.nstr(q, 20), mp.nstr(s, 20), mp.nstr(q - s, 5))
