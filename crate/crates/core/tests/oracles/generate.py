"""Reference values frozen into the integration tests (mpmath, 40 digits)."""
from mpmath import mp, hyp1f1, hyp2f2, hyp2f1, betainc, gammainc, exp, log, gamma, factorial, beta, mpf

mp.dps = 40


def psi2(a, g1, g2, x, y, n=200):
    s = mpf(0)
    for i in range(n):
        for j in range(n):
            s += mp.rf(a, i + j) / (mp.rf(g1, i) * mp.rf(g2, j)) * x**i * y**j / (factorial(i) * factorial(j))
    return s


def ncchisq_pdf(y, g, lam, n=300):
    h = mpf(g) / 2
    return sum(exp(-lam / 2) * (lam / 2) ** i / factorial(i)
               * y ** (h + i - 1) * exp(-y / 2) / (2 ** (h + i) * gamma(h + i)) for i in range(n))


def ncchisq_cdf(y, g, lam, n=300):
    h = mpf(g) / 2
    return sum(exp(-lam / 2) * (lam / 2) ** i / factorial(i) * gammainc(h + i, 0, y / 2, regularized=True)
               for i in range(n))


def pois(k, m):
    return exp(-m) * m**k / factorial(k)


def dncbeta_pdf(x, a1, a2, l1, l2, n=120):
    x = mpf(x)
    return sum(pois(j, mpf(l1) / 2) * pois(k, mpf(l2) / 2)
               * x ** (a1 + j - 1) * (1 - x) ** (a2 + k - 1) / beta(a1 + j, a2 + k)
               for j in range(n) for k in range(n))


def dncbeta_cdf(x, a1, a2, l1, l2, n=120):
    return sum(pois(j, mpf(l1) / 2) * pois(k, mpf(l2) / 2) * betainc(a1 + j, a2 + k, 0, x, regularized=True)
               for j in range(n) for k in range(n))


rows = [
    ("kummer_1f1(3, 5, 2.4)", hyp1f1(3, 5, mpf("2.4"))),
    ("kummer_1f1(2.5, 4, -30)", hyp1f1(mpf("2.5"), 4, -30)),
    ("ln_kummer_1f1(5, 9, 300)", log(hyp1f1(5, 9, 300))),
    ("generalized_2f2(3, 2, 1, 4, 1.7)", hyp2f2(3, 2, 1, 4, mpf("1.7"))),
    ("humbert_psi2(2, 1, 1, 0.6, 1.4)", psi2(2, 1, 1, mpf("0.6"), mpf("1.4"))),
    ("humbert_psi2(1.5, 0.5, 2.5, 3, 0.25)", psi2(mpf("1.5"), mpf("0.5"), mpf("2.5"), 3, mpf("0.25"))),
    ("gauss_2f1(2, 3, 4, -5)", hyp2f1(2, 3, 4, -5)),
    ("gauss_2f1(0.5, 1.5, 2.5, 0.95)", hyp2f1(mpf("0.5"), mpf("1.5"), mpf("2.5"), mpf("0.95"))),
    ("gauss_2f1(1, 2, 3.5, -0.5)", hyp2f1(1, 2, mpf("3.5"), mpf("-0.5"))),
    ("reg_inc_beta(0.3, 2, 5)", betainc(2, 5, 0, mpf("0.3"), regularized=True)),
    ("reg_inc_beta_upper(0.999, 0.5, 30)", betainc(30, mpf("0.5"), 0, mpf("0.001"), regularized=True)),
    ("upper_inc_gamma(2, 1.5)", gammainc(2, mpf("1.5"))),
    ("ncchisq_pdf(4.2, 5, 2.7)", ncchisq_pdf(mpf("4.2"), 5, mpf("2.7"))),
    ("ncchisq_cdf(6, 4, 5)", ncchisq_cdf(6, 4, 5)),
    ("dncbeta_pdf(0.3, 2, 5, 0.5, 7)", dncbeta_pdf("0.3", 2, 5, mpf("0.5"), 7)),
    ("dncbeta_pdf(0.8, 0.5, 0.5, 4, 7)", dncbeta_pdf("0.8", mpf("0.5"), mpf("0.5"), 4, 7)),
    ("dncbeta_cdf(0.4, 1, 1, 2, 4)", dncbeta_cdf(mpf("0.4"), 1, 1, 2, 4)),
]
for name, v in rows:
    print(f"{name:40s} {mp.nstr(v, 20)}")
