#!/usr/bin/env python3
"""Writes the class group table of cyclic fields of prime degree n with
conductor^(n-1) <= X, labelled like `psieve fields-enumerate`.

Each field is cut out of Q(zeta_f) as the fixed field of the kernel of its
canonical character (first exponent 1), then PARI's bnfinit gives the class
group. bnfinit results assume GRH unless --certify is passed.

Requires cypari2.
"""

import argparse
import csv
import itertools
import random
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(n + 1) if sieve[p]]


def max_conductor(n, X):
    f = int(round(X ** (1.0 / (n - 1))))
    while f > 0 and f ** (n - 1) > X:
        f -= 1
    while (f + 1) ** (n - 1) <= X:
        f += 1
    return f


def conductors(n, fmax):
    """Ascending factor lists [(p, k)], the n^2 factor first when present."""
    ps = [p for p in primes_upto(fmax) if p % n == 1]
    out = []

    def rec(start, f, cur):
        if cur:
            out.append(list(cur))
        for i in range(start, len(ps)):
            if ps[i] > fmax // f:
                break
            cur.append((ps[i], 1))
            rec(i + 1, f * ps[i], cur)
            cur.pop()

    rec(0, 1, [])
    if n * n <= fmax:
        rec(0, n * n, [(n, 2)])
    return out


def primitive_root(p, k):
    """Smallest primitive root mod p^k, the same choice as the C++ side."""
    m = p**k
    order = (p - 1) * p ** (k - 1)
    qs = [int(q) for q in pari.factor(order)[0]]
    for g in range(2, m):
        if g % p and all(pow(g, order // q, m) != 1 for q in qs):
            return g
    raise ValueError("no primitive root")


def local_index(a, m, g, phi, n):
    """Exponent mod n of a against the generator g of (Z/m)^*."""
    e = phi // n
    target = pow(a % m, e, m)
    base = pow(g, e, m)
    acc = 1
    for j in range(n):
        if acc == target:
            return j
        acc = acc * base % m
    raise ValueError("not a unit")


def fields_of(n, factors):
    f = 1
    for p, k in factors:
        f *= p**k
    mods = [(p**k, primitive_root(p, k), (p - 1) * p ** (k - 1)) for p, k in factors]
    t = len(factors)
    for idx, tail in enumerate(itertools.product(range(1, n), repeat=t - 1), start=1):
        yield f, mods, (1,) + tail, idx


def kernel_polynomial(n, f, mods, exps, rng):
    def chi_index(a):
        return sum(c * local_index(a, m, g, phi, n) for (m, g, phi), c in zip(mods, exps)) % n

    def sample(count):
        out = []
        while len(out) < count:
            a = rng.randrange(1, f)
            if pari.gcd(a, f) == 1 and chi_index(a) == 0:
                out.append(a)
        return out

    gens = sample(8)
    while True:
        H = pari("[" + ",".join(f"Mod({a},{f})" for a in gens) + "]")
        pol = pari.galoissubcyclo(f, H)
        if pari.poldegree(pol) == n:
            return pari.polredabs(pol)
        gens += sample(4)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--X", type=float, default=1e8)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--certify", action="store_true", help="run bnfcertify on every field")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    n = args.degree
    rng = random.Random(args.seed)
    rows = []
    for factors in conductors(n, max_conductor(n, args.X)):
        for f, mods, exps, idx in fields_of(n, factors):
            pol = kernel_polynomial(n, f, mods, exps, rng)
            bnf = pari.bnfinit(pol, 1)
            disc = int(pari.nfdisc(pol))
            if disc != f ** (n - 1):
                raise SystemExit(f"conductor {f}: discriminant {disc} != f^(n-1)")
            if args.certify and int(pari.bnfcertify(bnf)) != 1:
                raise SystemExit(f"conductor {f}: bnfcertify failed")
            cyc = [int(c) for c in bnf.bnf_get_cyc()]
            rows.append((f"{n}.{f}.{idx}", n, f, disc, int(bnf.bnf_get_no()), "[" + ",".join(map(str, cyc)) + "]"))
    rows.sort(key=lambda r: (r[3], int(r[0].split(".")[2])))
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["label", "degree", "conductor", "discriminant", "class_number", "class_group"])
    w.writerows(rows)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
