"""Independent brute-force oracles shared by the tests."""

from math import comb

from modpoly.fields import QuadraticField


def brute_supersingular_js(p):
    """Supersingular j's mod p from the Legendre-form Hasse invariant.

    y^2 = x(x-1)(x-lam) is supersingular iff sum_i C(m,i)^2 lam^i = 0 with
    m = (p-1)/2; all such lam lie in F_{p^2}.  Exhaustive over F_{p^2}.
    """
    F = QuadraticField(p)
    m = (p - 1) // 2
    hasse = [comb(m, i) ** 2 % p for i in range(m + 1)]
    js = set()
    for lam in F.elements():
        if lam.is_zero() or lam == 1:
            continue
        acc = F.zero
        for c in reversed(hasse):
            acc = acc * lam + c
        if acc.is_zero():
            t = lam * lam - lam + 1
            js.add(t * t * t * 256 / (lam * lam * (lam - 1) * (lam - 1)))
    return js
