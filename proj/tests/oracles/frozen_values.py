"""Independent high-precision oracles for values frozen into the C++ tests.

Run with: python3 tests/oracles/frozen_values.py
Nothing here shares code with the library; it uses mpmath and exact
rational arithmetic only.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product

import mpmath as mp

mp.mp.dps = 40


def poisson_upper(m, x):
    """P[Poisson(x) >= m] by the complementary series."""
    x = mp.mpf(x)
    return mp.e ** (-x) * mp.nsum(lambda i: x ** i / mp.factorial(i), [m, mp.inf])


def harmonic(n):
    return sum(Fraction(1, j) for j in range(1, n + 1))


def markov_exact(weights, m):
    """Exact E[T] and E[T(T+1)] for the m-set collector by first-step analysis."""
    w = [Fraction(x) for x in weights]
    total = sum(w)
    p = [x / total for x in w]
    n = len(p)

    @lru_cache(maxsize=None)
    def solve(state):
        if all(c >= m for c in state):
            return Fraction(0), Fraction(0)
        active = [j for j in range(n) if state[j] < m]
        q_stay = 1 - sum(p[j] for j in active)
        acc_e = Fraction(1)
        acc_f = Fraction(2)
        nxt = []
        for j in active:
            s = list(state)
            s[j] += 1
            e, f = solve(tuple(s))
            nxt.append((p[j], e, f))
            acc_e += p[j] * e
        e_here = acc_e / (1 - q_stay)
        for pj, e, f in nxt:
            acc_f += pj * (f + 2 * e)
        acc_f += q_stay * 2 * e_here
        f_here = acc_f / (1 - q_stay)
        return e_here, f_here

    return solve(tuple([0] * n))


def l1_zipf(M, p=2, m=1):
    """L1 = int_0^inf [1 - prod_j P[Poisson(u j^-p) >= m]] du, direct mpmath quadrature."""
    d = [mp.mpf(j) ** -p for j in range(1, M + 1)]

    def g(u):
        prod = mp.mpf(1)
        for dj in d:
            prod *= 1 - mp.gammainc(m, 0, dj * u, regularized=True) if m > 1 else -mp.expm1(-dj * u)
        return 1 - prod

    hi = mp.mpf(60) * M ** p
    pts = [mp.mpf(0)] + [hi * mp.mpf(2) ** -k for k in range(40, -1, -1)]
    return mp.quad(g, pts)


if __name__ == "__main__":
    for m, x in [(3, "1e-6"), (1, "0.6931471805599453"), (2, "0.5"), (5, "3.0"),
                 (5, "6.0"), (5, "40.0"), (10, "1.0"), (3, "50.0")]:
        print(f"poisson_upper(m={m}, x={x}) = {mp.nstr(poisson_upper(m, x), 20)}")
    for n in (10, 50, 100):
        print(f"H_{n} = {mp.nstr(mp.mpf(harmonic(n).numerator) / harmonic(n).denominator, 20)}")
    for p in (1.5, 2, 3, 4, 1.1):
        print(f"zeta({p}) = {mp.nstr(mp.zeta(p), 20)}")
    cases = {
        "uniform2_m1": ([1, 1], 1),
        "twothirds_m1": ([2, 1], 1),
        "uniform1_m3": ([1], 3),
        "power3_m2": ([1, 2, 3], 2),
        "power4_m1": ([1, 2, 3, 4], 1),
        "uniform4_m3": ([1, 1, 1, 1], 3),
        "power4_m3": ([1, 2, 3, 4], 3),
        "uniform5_m1": ([1] * 5, 1),
    }
    for name, (w, m) in cases.items():
        e, f = markov_exact(w, m)
        print(f"markov {name}: E[T] = {float(e)!r}  E[T(T+1)] = {float(f)!r}")
    # Partial sums
    print("expdecay p=1 limit:", mp.nstr(1 / (1 - mp.e ** -1), 20))
    print("sum_{j<=400} j^-2:", mp.nstr(mp.fsum(mp.mpf(j) ** -2 for j in range(1, 401)), 20))
    print("e - 1:", mp.nstr(mp.e - 1, 20))
    print("e+e^2+e^3:", mp.nstr(mp.e + mp.e ** 2 + mp.e ** 3, 20))
    # Super-exponential ratio sum_{j<=M} (j+1)^{c j} / (M+1)^{c M}
    for M in (20, 40, 80):
        c = mp.mpf("0.5")
        s = mp.fsum(mp.e ** (j * c * mp.log(j + 1)) for j in range(1, M + 1))
        print(f"superexp M={M}: ratio = {mp.nstr(s / mp.e ** (M * c * mp.log(M + 1)), 20)}")
    # L1 for uniform weights equals H_M (m=1); the quadrature identity check.
    # Expected interarrival mean for {uniform, zipf p=1}, M=50
    h50 = mp.mpf(harmonic(50).numerator) / harmonic(50).denominator
    print("interarrival mean M=50:", mp.nstr((50 + h50) / h50, 20))
    # Uniform N=5 second rising moment: E[T(T+1)] exact
    e, f = markov_exact([1] * 5, 1)
    print("uniform5 E[T(T+1)]:", float(f))
    # L1 ratio against M^2 ln M for Zipf p=2, m=1: consecutive differences grow.
    mp.mp.dps = 20
    ratios = []
    for M in (50, 100, 200, 400):
        v = l1_zipf(M)
        ratios.append(v / (M * M * mp.log(M)))
        print(f"L1 zipf p=2 M={M}: {mp.nstr(v, 15)}  ratio {mp.nstr(ratios[-1], 10)}")
    print("ratio differences:", [mp.nstr(b - a, 6) for a, b in zip(ratios, ratios[1:])])
