"""Regenerate the shipped weight-2 cusp-form bases from PARI/GP.

Offline maintenance script; the library never imports it.  Requires the
``cypari`` wheel (``pip install cypari``).

For each prime level the script takes PARI's rational basis of S_2(Gamma0(N)),
saturates it to the lattice of forms with integer q-expansions, and writes the
Hermite-reduced generators in the plain-text basis format read by
``qtrace.ingest.parse_cusp_basis``.

    python tools/make_bases.py --bound 300 --out src/qtrace/data/bases
"""
import argparse
from pathlib import Path

from cypari import pari


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def integral_basis(level, bound):
    mf = pari(f"mfinit([{level},2],1)")
    dim = int(pari.mfdim(mf))
    if dim == 0:
        return []
    rows = [list(pari.mfcoefs(f, bound))[1:] for f in pari.mfbasis(mf)]
    A = pari.matrix(bound, dim, [rows[j][i] for i in range(bound) for j in range(dim)])
    A = A * pari.denominator(A)
    # matrixqz(A, 0) saturates the column span: Q-span(A) meets Z^bound exactly.
    S = pari.matrixqz(A, 0)
    # mathnf pivots on the last rows, so reverse the q-order to echelon on q^1..q^dim.
    R = pari.matrix(bound, dim, [S[bound - 1 - i, j] for i in range(bound) for j in range(dim)])
    Z = pari.mathnf(R)
    cols = [[int(Z[bound - 1 - i, j]) for i in range(bound)] for j in range(int(pari.matsize(Z)[1]))]
    cols.sort(key=lambda c: next(i for i, x in enumerate(c) if x), reverse=False)
    assert len(cols) == dim
    return cols


def write_basis(path, level, forms, bound):
    lines = [
        f"# S_2(Gamma0({level})) integral basis, generated by tools/make_bases.py",
        f"level {level} weight 2 dim {len(forms)} bound {bound}",
    ]
    for idx, form in enumerate(forms, start=1):
        lines.append(f"form {idx}")
        lines.extend(f"{n} {c}" for n, c in enumerate(form, start=1))
    path.write_text("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=300)
    ap.add_argument("--max-level", type=int, default=97)
    ap.add_argument("--out", type=Path, default=Path("src/qtrace/data/bases"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for N in primes_upto(args.max_level):
        forms = integral_basis(N, args.bound)
        write_basis(args.out / f"level_{N}.txt", N, forms, args.bound)
        print(N, len(forms))


if __name__ == "__main__":
    main()
