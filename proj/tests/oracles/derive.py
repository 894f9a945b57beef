"""Independent reference computations for values frozen into the C++ tests.

Run: python3 tests/oracles/derive.py
Uses only sympy and the standard library; shares no code with the C++ build.
"""
from fractions import Fraction
from itertools import product

import sympy
from sympy import GF, Poly, symbols

X = symbols("x")


def choose_prime(n):
    return next(q for q in range(4 * n, 8 * n + 1) if sympy.isprime(q))


def interp(points, q):
    coeffs = reversed(Poly(sympy.interpolate(points, X), X).all_coeffs())
    out = [int(c.p) * pow(int(c.q), -1, q) % q for c in map(sympy.Rational, coeffs)]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mod(expr, q):
    return [int(c) % q for c in reversed(Poly(expr, X, domain=GF(q)).all_coeffs())]


def ev(coeffs, x, q):
    return sum(c * pow(x, i, q) for i, c in enumerate(coeffs)) % q


def indicator_polys(members, n, T, q):
    rows = n // T
    out = []
    for t in range(T):
        vals = [1 if t * rows + i in members else 0 for i in range(rows)]
        out.append(interp(list(zip(range(rows), vals)), q) if rows > 1 else [vals[0]])
    return out


def lcs(a, b):
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def perm(coeffs, f):
    return [j * f + (i + ev(coeffs, j, f)) % f for i in range(f) for j in range(f)]


def accept_count(sa, sb, phi, n, T, q):
    pa, pb = indicator_polys(sa, n, T, q), indicator_polys(sb, n, T, q)
    rows = n // T
    if any(ev(phi, i, q) for i in range(rows)):
        return 0
    return sum(
        1 for l in range(q) if ev(phi, l, q) == sum(ev(pa[t], l, q) * ev(pb[t], l, q) for t in range(T)) % q
    )


def main():
    print("choose_prime", {n: choose_prime(n) for n in (1, 3, 8, 16)})
    print("interp x^2 mod 37", interp([(0, 0), (1, 1), (2, 4)], 37))
    print("(x+1)(x-1) mod 37", poly_mod((X + 1) * (X - 1), 37))
    psi = indicator_polys({0}, 8, 2, 37)
    print("psi_0 for S={0}", psi[0], "psi_0(5)", ev(psi[0], 5, 37))
    bits = (37 - 1).bit_length()
    print("cost n=8 T=2 R=1 q=37", (2 * 4 - 1) * bits, 1 * bits, 1 * 2 * bits)
    print("lcs(pi_x, pi_2x) |F|=5", lcs(perm([0, 1], 5), perm([0, 2], 5)))
    print("zero-const polys |F|=5 d=2", sum(1 for a, b in product(range(5), repeat=2) if (a, b) != (0, 0)))
    # Zero polynomial against an intersecting pair: accepted points of F_37.
    print("accept(zero phi, A={1,5}, B={5,6})", accept_count({1, 5}, {5, 6}, [], 8, 2, 37))
    # RS over F_5 with 2 coefficients, Hadamard on 3 bits.
    words = []
    for m0, m1 in product(range(5), repeat=2):
        w = []
        for x in range(5):
            s = (m0 + m1 * x) % 5
            w += [bin(s & mask).count("1") & 1 for mask in range(8)]
        words.append(w)
    dmin = min(sum(a != b for a, b in zip(u, v)) for i, u in enumerate(words) for v in words[:i])
    print("rs-hadamard p=5 k=2 d_code", len(words[0]), "min distance", dmin)
    print("soundness n=8 T=2 q=37 R=2", Fraction(6, 37) ** 2)


if __name__ == "__main__":
    main()
