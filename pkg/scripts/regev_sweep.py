"""Time the L_4 centrality and strongness sweeps for a range of worker counts."""
import argparse
import time

from gradedpi import fleet
from gradedpi.checker import star_falsifier, strong_falsifier, sweep
from gradedpi.config import RunConfig
from gradedpi.freepoly import check_product, regev


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--threads", type=int, nargs="+", default=[1, 2, 4])
    a = p.parse_args(argv)
    L4 = regev(2)
    fc = check_product(L4)
    for n in a.threads:
        RunConfig(threads=n).apply()
        t = time.perf_counter()
        res, _ = sweep(L4, fleet.m2_trivial(), "central")
        t1 = time.perf_counter() - t
        t = time.perf_counter()
        s1 = strong_falsifier(L4, fleet.sign_algebra())
        s2 = star_falsifier(fc, fleet.sign_algebra(), 8)
        t2 = time.perf_counter() - t
        print(f"threads {n}: central sweep {res.checked} tuples, {res.bad} bad, {t1:.2f} s; "
              f"strongness {s1.verdict}/{s2.verdict}, {t2:.2f} s")


if __name__ == "__main__":
    main()
