"""Generate the S_2^+(Gamma_0(N)) fixture files consumed by `load_basis`.

Requires cypari2 (PARI/GP >= 2.11 for the mf package). For each prime level
the cuspidal space is computed with mfinit, the Fricke involution with
mfatkininit, and the +1 eigenspace is put in reduced row-echelon form over Q
with each row scaled to a primitive integer vector.

Usage: python3 tools/gen_fixtures.py [--prec 2000] [--out data] [--sign -1] [N ...]

With --sign -1 the Fricke -1 eigenspace is written instead (used as a
negative fixture by the test suite).
"""

import argparse
import json
from fractions import Fraction
from math import gcd
from pathlib import Path

import cypari2

LEVELS = [97, 109, 113, 127, 139, 149, 151, 179, 239, 137, 173, 199, 251, 311]


def rref(rows):
    rows = [list(r) for r in rows]
    pivot_row = 0
    ncols = len(rows[0])
    for col in range(ncols):
        pr = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows


def primitive(row):
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints


def eigen_basis(pari, n, prec, sign):
    mf = pari.mfinit([n, 2], 1)
    atk = pari.mfatkininit(mf, n)
    w = atk[1]
    dim = int(pari.matsize(w)[0])
    kernel = pari.matker(w - sign * pari.matid(dim))
    coefs = pari.mfcoefs(mf, prec)  # rows: n = 0..prec, columns: mfbasis
    plus = coefs * kernel
    forms = []
    for j in range(int(pari.matsize(plus)[1])):
        forms.append([Fraction(int(pari.numerator(plus[i, j])), int(pari.denominator(plus[i, j])))
                      for i in range(1, prec + 1)])
        assert plus[0, j] == 0
    return [primitive(r) for r in rref(forms)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prec", type=int, default=2000)
    ap.add_argument("--sign", type=int, default=1, choices=[1, -1])
    ap.add_argument("--out", default="data")
    ap.add_argument("levels", nargs="*", type=int)
    args = ap.parse_args()
    pari = cypari2.Pari()
    pari.allocatemem(2 * 10**9)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in args.levels or LEVELS:
        forms = eigen_basis(pari, n, args.prec, args.sign)
        record = {
            "level": n,
            "genus_plus": len(forms),  # dimension of the eigenspace
            "prec": args.prec,
            "provenance": f"PARI/GP {'.'.join(map(str, pari.version()))}: mfinit([{n},2],1), "
                          f"{args.sign:+d} eigenspace of mfatkininit(mf,{n}), rref over Q, primitive integer rows",
            "forms": forms,
        }
        stem = "x0plus" if args.sign == 1 else "x0minus"
        path = out / f"{stem}_{n}.json"
        with path.open("w") as fh:
            fh.write("{\n")
            for key in ("level", "genus_plus", "prec", "provenance"):
                fh.write(f"  {json.dumps(key)}: {json.dumps(record[key])},\n")
            fh.write('  "forms": [\n')
            fh.write(",\n".join("    " + json.dumps(f, separators=(",", ":")) for f in forms))
            fh.write("\n  ]\n}\n")
        print(n, len(forms), max(abs(x) for f in forms for x in f))


if __name__ == "__main__":
    main()
