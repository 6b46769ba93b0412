#!/usr/bin/env python3
"""Regenerates the OEIS b-file fixtures under fixtures/oeis/.

Each sequence is computed from its OEIS definition, independently of the C++
library, so the fixtures act as an external cross-check.  Run from the repo
root:

    python3 tools/gen_oeis_fixtures.py
"""

import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "oeis"


def a001147(k):
    # Double factorial of odd numbers: (2k-1)!!.
    r = 1
    for i in range(1, 2 * k, 2):
        r *= i
    return r


def a001710(k):
    # Order of the alternating group: k!/2 for k >= 2; 1, 1 before that.
    return 1 if k < 2 else math.factorial(k) // 2


def a096351(k):
    # Tournament summation count: a(2m) = C(2m,m)/2 * a(m)^2,
    # a(2m+1) = C(2m+1,m) * a(m) * a(m+1); a(1) = 1.
    if k == 1:
        return 1
    m = k // 2
    if k % 2 == 0:
        return math.comb(k, m) * a096351(m) ** 2 // 2
    return math.comb(k, m) * a096351(m) * a096351(m + 1)


def a268289(k):
    # Partial sums of A037861(i) = (#ones - #zeros) in the binary expansion
    # of i, starting from a(0) = 0.
    total = 0
    for i in range(1, k + 1):
        bits = bin(i)[2:]
        total += bits.count("1") - bits.count("0")
    return total


def a000992(k):
    # Half-Catalan: a(1) = 1, a(n) = sum_{i=1..n//2} a(i) a(n-i).
    memo = {1: 1}

    def rec(n):
        if n not in memo:
            memo[n] = sum(rec(i) * rec(n - i) for i in range(1, n // 2 + 1))
        return memo[n]

    return rec(k)


def a002620(k):
    # Quarter-squares.
    return k * k // 4


def a011371(k):
    # n minus binary weight of n.
    return k - bin(k).count("1")


def a049606(k):
    # Odd part of k!.
    f = math.factorial(k)
    return f >> a011371(k)


SEQUENCES = {
    "A001147": (0, a001147),
    "A001710": (0, a001710),
    "A096351": (1, a096351),
    "A268289": (0, a268289),
    "A000992": (1, a000992),
    "A002620": (0, a002620),
    "A011371": (1, a011371),
    "A049606": (1, a049606),
}

TERMS = 40


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for seq, (offset, fn) in sorted(SEQUENCES.items()):
        path = OUT / f"{seq}.txt"
        with path.open("w") as fh:
            for k in range(offset, offset + TERMS):
                fh.write(f"{k} {fn(k)}\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
