"""Compare the compiled lattice kernel with the pure-Python fallback.

    python3 benchmarks/bench_lattice.py [--p 5] [--levels 4 5 6 7] [--repeat 3]

Both kernels sum the integrand of E_{n,q}, q^a [a]_q^n, over a < p^N and must
return the same residue; the table reports the best of ``repeat`` runs.
"""

import argparse
import timeit

from carlitzq import kernels
from carlitzq.fermionic import Bracket, QPower, compile_integrand
from carlitzq.qcalc import QParam


def _workload(p: int, n: int, precision: int):
    qp = QParam(1 + p, p, precision)
    terms, _ = compile_integrand(QPower(qp, 1) * Bracket(qp, 0, n), p, precision)
    return terms


def _run(terms, hi, mod, force_python):
    total = 0
    for t in terms:
        total += t.lattice_sum(0, hi, mod, alternate=True, skip_p=0, force_python=force_python)
    return total % mod


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--precision", type=int, default=12)
    ap.add_argument("--levels", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if not kernels.HAVE_EXTENSION:
        print("compiled kernel not available; only the fallback is timed")
    terms = _workload(args.p, args.n, args.precision)
    mod = args.p ** args.precision
    print(f"{'level':>5} {'points':>9} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for level in args.levels:
        hi = args.p ** level
        py = min(timeit.repeat(lambda: _run(terms, hi, mod, True), number=1, repeat=args.repeat))
        ref = _run(terms, hi, mod, True)
        if kernels.HAVE_EXTENSION:
            cy = min(timeit.repeat(lambda: _run(terms, hi, mod, False), number=1,
                                   repeat=args.repeat))
            assert _run(terms, hi, mod, False) == ref, "kernels disagree"
            print(f"{level:>5} {hi:>9} {py:>10.4f} {cy:>10.4f} {py / cy:>7.1f}x")
        else:
            print(f"{level:>5} {hi:>9} {py:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
