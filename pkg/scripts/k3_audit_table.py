"""Table of targets, budget counts and ledger totals over a range of (p, n)."""
import argparse

from triplepoint import lattice as L


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=12)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--m", type=int, default=5, help="largest A_{m-1} type allowed")
    args = ap.parse_args()

    print(f"{'p':>3} {'n':>2} {'kind':>4} {'dim|nH|':>8} {'target':>6} {'budgets':>7} "
          f"{'scroll':>6} {'ledger':>6} {'dim+1':>6} note")
    for p in range(3, args.pmax + 1):
        for n in range(1, args.nmax + 1):
            if (p, n) in ((3, 1), (4, 1)):
                continue
            dim = L.pa_dim_nH(p, n)["dim"]
            target = L.tuple_targets(p, n)
            budgets = L.enumerate_budgets(p, n, args.m)
            assert all(L.es_expected_dim(dim, b) == 0 for b in budgets)
            scroll = L.decomposition_check(p, n).ok and L.degree_on_E_check(p, n).ok
            led = L.proof_ledger(p, n)
            note = "" if led.total == dim + 1 or led.parity == "even" else "total != dim|nH|+1"
            print(f"{p:>3} {n:>2} {L.K3Polarization(p, n).kind:>4} {dim:>8} {target:>6} {len(budgets):>7} "
                  f"{'ok' if scroll else 'FAIL':>6} {led.total:>6} {dim + 1:>6} {note}")


if __name__ == "__main__":
    main()
