#!/usr/bin/env python3
"""Regenerate the classical modular polynomial tables in crates/core/data/modpoly.

Solves for the coefficients of Phi_l(X, Y) by requiring Phi_l(j(q), j(q^l)) = 0
as a Laurent series in q, using exact rational Gaussian elimination.
"""
import sys
from fractions import Fraction
from pathlib import Path


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(f, g, n):
    # f, g: lists of coefficients of q^0..q^(n-1)
    out = [0] * n
    for i, a in enumerate(f):
        if a == 0:
            continue
        for k in range(0, n - i):
            out[i + k] += a * g[k]
    return out


def j_series(n):
    """Coefficients of q*j(q) for q^0..q^(n-1)."""
    e4 = [1] + [240 * sigma3(k) for k in range(1, n)]
    e4_3 = mul(mul(e4, e4, n), e4, n)
    # prod (1-q^m)^24
    eta = [1] + [0] * (n - 1)
    for m in range(1, n):
        for _ in range(24):
            for k in range(n - 1, m - 1, -1):
                eta[k] -= eta[k - m]
    # q*j = e4^3 / eta
    inv = [0] * n
    inv[0] = 1
    for k in range(1, n):
        inv[k] = -sum(eta[t] * inv[k - t] for t in range(1, k + 1))
    return mul(e4_3, inv, n)


def modpoly(ell):
    top = ell * (ell + 1)  # maximal pole order
    extra = 40
    n = top + extra + 5
    qj = j_series(n * ell + 5)
    # X = j(q) = q^-1 * qj ; Y = j(q^ell) = q^-ell * qj(q^ell)
    # work with series shifted by q^top: store coefficients of q^(-top) .. q^(extra)
    width = top + extra + 1

    def x_pow(a):
        s = [1] + [0] * (n - 1)
        for _ in range(a):
            s = mul(s, qj, n)
        return s  # times q^-a

    def y_pow(b):
        base = [0] * n
        for k in range(0, n):
            if k * ell < n:
                base[k * ell] = qj[k]
        s = [1] + [0] * (n - 1)
        for _ in range(b):
            s = mul(s, base, n)
        return s  # times q^(-ell*b)

    xs = [x_pow(a) for a in range(ell + 2)]
    ys = [y_pow(b) for b in range(ell + 2)]

    def mono(a, b):
        s = mul(xs[a], ys[b], n)
        shift = top - a - ell * b  # leading exponent -a-ell*b -> index shift
        out = [0] * width
        for k in range(width):
            idx = k - shift
            if 0 <= idx < n:
                out[k] = s[idx]
        return out

    unknowns = [(a, b) for a in range(ell + 1) for b in range(a + 1) if (a, b) != (ell, ell)]
    cols = []
    for (a, b) in unknowns:
        v = mono(a, b)
        if a != b:
            w = mono(b, a)
            v = [x + y for x, y in zip(v, w)]
        cols.append(v)
    rhs = [0] * width
    for (a, b, c) in [(ell + 1, 0, 1), (0, ell + 1, 1), (ell, ell, -1)]:
        v = mono(a, b)
        rhs = [r - c * x for r, x in zip(rhs, v)]

    rows = [[Fraction(cols[u][k]) for u in range(len(unknowns))] + [Fraction(rhs[k])] for k in range(width)]
    m = len(unknowns)
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            raise SystemExit(f"singular system for ell={ell}")
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    for i in range(r, len(rows)):
        assert rows[i][m] == 0, "inconsistent system"
    coeffs = {(ell + 1, 0): 1, (ell, ell): -1}
    for u, (a, b) in enumerate(unknowns):
        v = rows[u][m]
        assert v.denominator == 1
        if v != 0:
            coeffs[(max(a, b), min(a, b))] = int(v)
    return coeffs


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "crates/core/data/modpoly"
    out_dir.mkdir(parents=True, exist_ok=True)
    for ell in (2, 3, 5, 7):
        coeffs = modpoly(ell)
        lines = [f"ell {ell}"]
        for (a, b) in sorted(coeffs, reverse=True):
            lines.append(f"{a} {b} {coeffs[(a, b)]}")
        (out_dir / f"phi_{ell}.txt").write_text("\n".join(lines) + "\n")
        print(f"ell={ell}: {len(coeffs)} coefficients")


if __name__ == "__main__":
    main()
