#!/usr/bin/env python3
"""Independent reference computations used to pin expected values in the
Rust test suites. Pure Python with `fractions`; shares no code with the crate.

Usage: python3 tools/oracle.py
"""
from fractions import Fraction
from math import gcd, log


def fibonacci_word(length):
    w = [0]
    while len(w) < length:
        w = [c for a in w for c in ((0, 1) if a == 0 else (0,))]
    return w[:length]


def value(digits, base):
    v = Fraction(0)
    scale = Fraction(1)
    for d in digits:
        scale /= base
        v += d * scale
    return v


def cf(x):
    out = []
    p, q = x.numerator, x.denominator
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def certified_cf(lo, hi):
    a, b = cf(lo), cf(hi)
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    # boundary: drop the last agreeing quotient when an endpoint ends there
    # on the side where a perturbation changes it
    if k > 0:
        j = k - 1
        if (len(a) == k and j % 2 == 1) or (len(b) == k and j % 2 == 0):
            k -= 1
    return a[:k]


def convergents(quotients):
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def max_err(lo, hi, c):
    return max(abs(lo - c), abs(hi - c))


def shape(q, b, M):
    # brute force over r + s bounded by b^(r+s-1) <= q*M
    best = None
    s = 1
    while b ** (s - 1) <= q * M:
        r = 0
        while b ** (r + s - 1) <= q * M:
            num = b ** r * (b ** s - 1)
            if num % q == 0 and 1 <= num // q <= M:
                return (r, s, num // q)
            r += 1
        s += 1
    return best


def complexity(word, n):
    return len({tuple(word[i:i + n]) for i in range(len(word) - n + 1)})


def digits_of_interval(lo, hi, base, count):
    # longest common prefix of every real in [lo, hi)
    out = []
    for k in range(1, count + 1):
        a = (lo * base ** k).__floor__()
        h = hi * base ** k
        hc = -((-h).__floor__())
        if lo == hi:
            hc = a + 1
        if a != hc - 1:
            break
        out.append(a % base)
    return out


def main():
    L = 400
    w = fibonacci_word(L)
    lo = value(w, 2)
    hi = lo + Fraction(1, 2 ** L)
    a = certified_cf(lo, hi)
    conv = convergents(a)
    print("xi_fib 400 digits: certified quotients", len(a))
    print("  quotients head", a[:12])
    wit = [(p, q) for p, q in conv if max_err(lo, hi, Fraction(p, q)) ** 2 * q ** 5 < 1]
    print("  5/2 witnesses", len(wit), [q for _, q in wit][:8])
    M = 34
    cutoff = 100
    passing = []
    max_m = 0
    viol = 0
    small_unclassified = 0
    for p, q in conv:
        if max_err(lo, hi, Fraction(p, q)) < Fraction(1, M * q * q):
            sh = shape(q, 2, M)
            passing.append((q, sh))
            if sh is None:
                if q >= cutoff:
                    viol += 1
                else:
                    small_unclassified += 1
            else:
                max_m = max(max_m, sh[2])
    print("  passing Mq2", len(passing), "violations", viol, "small unclassified",
          small_unclassified, "max m", max_m)
    for q, sh in passing:
        print("    q bits", q.bit_length(), "shape", sh)

    # joint complexity checkpoints for bases 2 and 3 from 10^4 binary digits
    L = 10_000
    w = fibonacci_word(L)
    lo = value(w, 2)
    hi = lo + Fraction(1, 2 ** L)
    budget3 = int(L * log(2) / log(3)) - 4
    d3 = digits_of_interval(lo, hi, 3, budget3)
    print("base3 certified digits", len(d3), "budget", budget3)
    for n in (20, 50, 100, 150):
        p2 = complexity(w, n)
        p3 = complexity(d3, n)
        print("  n", n, "p2", p2, "p3", p3, "D", p2 + p3 - 2 * n)
    budget4 = int(L * log(2) / log(4)) - 4
    d4 = digits_of_interval(lo, hi, 4, budget4)
    print("base4 certified digits", len(d4))
    dmin = min(complexity(w, n) + complexity(d4, n) - 2 * n for n in range(20, 151))
    print("  min D(n) over [20,150] for (2,4):", dmin)

    # S-unit box search, m2 (r^z2 - r^z1) = m1 s^z4 (s^z3 - 1), z3 >= 1
    for zmax in (20, 25):
        m1, m2, r, s = 1, 1, 2, 3
        sols = [(z1, z2, z3, z4)
                for z1 in range(zmax + 1) for z2 in range(zmax + 1)
                for z3 in range(1, zmax + 1) for z4 in range(zmax + 1)
                if m2 * (r ** z2 - r ** z1) == m1 * s ** z4 * (s ** z3 - 1)]
        print("sunit (1,1,2,3) zmax", zmax, sols)


if __name__ == "__main__":
    main()
