#!/usr/bin/env python3
"""Hand-evaluated bound tables, written independently of the C++ code.

Each row is evaluated with mpmath at 40 digits straight from the closed forms
and printed with 17 significant digits.
"""
import csv
import sys
from math import comb

import mpmath as mp

mp.mp.dps = 40
SQ2 = mp.sqrt(2)


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


def tol(u):
    return 2 / (1 + mp.mpf(u))


def first_min(terms):
    best = terms[0]
    for t in terms[1:]:
        if t[0] < best[0]:
            best = t
    return best


def generic_upper(d, n, s, meas):
    if s is None:
        return (mp.mpf(2 * d - 1) ** (n - 1), "(2d-1)^(N-1)")
    mixed = (mp.mpf(2 * min(d, s) - 1) ** (n - 1), "(2min(d,S)-1)^(N-1)")
    if meas == "generalized":
        return mixed
    if s == 2:
        return first_min([(mp.mpf(d) ** (mp.mpf(n - 1) / 2), "d^((N-1)/2)"),
                          (mp.mpf(3) ** (n - 1), "3^(N-1)")])
    return first_min([(mp.mpf(d) ** (mp.mpf(s * (n - 1)) / 2), "d^(S(N-1)/2)"), mixed])


def ghz_upper(d, n, s, meas):
    overall = (1 + mp.mpf(2) ** (n - 1) * (d - 1), "1+2^(N-1)(d-1)")
    if s is None:
        return overall
    sett = (mp.mpf(2 * s - 1) ** (n - 1), "(2S-1)^(N-1)")
    if meas == "generalized":
        return first_min([sett, overall])
    if s == 2:
        return first_min([(mp.mpf(d) ** (mp.mpf(n - 1) / 2), "d^((N-1)/2)"),
                          (mp.mpf(3) ** (n - 1), "3^(N-1)"), overall])
    return first_min([(mp.mpf(d) ** (mp.mpf(s * (n - 1)) / 2), "d^(S(N-1)/2)"), sett, overall])


def row(family, d, n, s, meas, ups_lo, ups_hi, tol_lo, tol_hi, noise_lo, noise_hi, term, k=""):
    return [family, d, n, "inf" if s is None else s, "any" if s is None else meas,
            fmt(ups_lo), fmt(ups_hi), fmt(tol_lo), fmt(tol_hi), fmt(noise_lo), fmt(noise_hi), term, k]


def main(path):
    rows = []
    for d in range(2, 6):
        for n in range(2, 6):
            for s in (2, 3, None):
                for meas in (("projective", "generalized") if s is not None else ("projective",)):
                    u, term = generic_upper(d, n, s, meas)
                    # tolerance >= 2/(1+U); max noise <= (U-1)/(U+1)
                    rows.append(row("generic", d, n, s, meas, 1, u, tol(u), 1, 0, (u - 1) / (u + 1), term))
                    u, term = ghz_upper(d, n, s, meas)
                    lo = mp.mpf(1)
                    if d == 2 and (s is None or (s == 2 and meas == "projective")):
                        lo = mp.mpf(2) ** (mp.mpf(n - 1) / 2)
                    if s is None:
                        # overall bound written as 1/(1+2^(N-2)(d-1)) and
                        # 2^(N-2)(d-1)/(2^(N-2)(d-1)+1)
                        q = mp.mpf(2) ** (n - 2) * (d - 1)
                        t_lo, m_hi = 1 / (1 + q), q / (q + 1)
                    elif s == 2 and meas == "projective":
                        # three-term min of noise fractions
                        a = mp.mpf(d) ** (mp.mpf(n - 1) / 2)
                        q = mp.mpf(2) ** (n - 2) * (d - 1)
                        m_hi = min((a - 1) / (a + 1), (mp.mpf(3) ** (n - 1) - 1) / (mp.mpf(3) ** (n - 1) + 1),
                                   q / (q + 1))
                        t_lo = 1 - m_hi
                    else:
                        t_lo, m_hi = tol(u), (u - 1) / (u + 1)
                    rows.append(row("ghz", d, n, s, meas, lo, u, t_lo, tol(lo), 1 - tol(lo), m_hi, term))
    for n in range(2, 9):
        a = mp.mpf(2) ** (mp.mpf(n - 1) / 2)
        rows.append(row("ghz-qubit", 2, n, 2, "projective", a, a, 2 / (1 + a), 2 / (1 + a),
                        (a - 1) / (a + 1), (a - 1) / (a + 1), "2^((N-1)/2)"))
        q = mp.mpf(2) ** (n - 2)
        rows.append(row("ghz-qubit", 2, n, None, "", a, 1 + 2 * q, 1 / (1 + q), 2 / (1 + a),
                        (a - 1) / (a + 1), q / (1 + q), "1+2^(N-1)(d-1)"))
    for n in range(2, 11):
        for k in range(1, n):
            c = comb(n, k)
            up = 1 / (1 + mp.mpf(2) ** (n - 2) * (SQ2 - 1) / c)
            lo = 2 / (1 + mp.mpf(3) ** (n - 1))
            ups_lo = 1 + mp.mpf(2) ** (n - 1) * (SQ2 - 1) / c
            rows.append(row("dicke", 2, n, None, "", ups_lo, mp.mpf(3) ** (n - 1), lo, up, 1 - up, 1 - lo,
                            "3^(N-1)", k))
        wup = mp.mpf(n) / (n + mp.mpf(2) ** (n - 2) * (SQ2 - 1))
        lo = 2 / (1 + mp.mpf(3) ** (n - 1))
        rows.append(row("w", 2, n, None, "", 1 + mp.mpf(2) ** (n - 1) * (SQ2 - 1) / n, mp.mpf(3) ** (n - 1),
                        lo, wup, 1 - wup, 1 - lo, "3^(N-1)", 1))
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["family", "d", "N", "S", "meas_type", "upsilon_lo", "upsilon_hi", "tol_lo", "tol_hi",
                    "noise_lo", "noise_hi", "active_term", "k"])
        w.writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "bounds_golden.csv")
