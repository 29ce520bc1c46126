"""Laplace asymptotics and both temperedness verdicts over a measure corpus."""
import argparse
import csv
import sys

from modcrown.errors import FitError
from modcrown.laplace import GridDensity, PowerTail, StretchedExp, laplace_asymptotics, temperedness_test

CORPUS = {
    "power:-1": PowerTail(-1.0),
    "power:0": PowerTail(0.0),
    "power:0.5": PowerTail(0.5),
    "power:1": PowerTail(1.0),
    "power:1.5": PowerTail(1.5),
    "power:2": PowerTail(2.0),
    "power:3": PowerTail(3.0),
    "stretched:0.5": StretchedExp(0.5),
    "stretched:1": StretchedExp(1.0),
    "grid:tent": GridDensity((0.0, 1.0, 2.0), (0.0, 1.0, 0.0)),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["measure", "regime", "constant", "residual", "moment", "growth", "n_star", "N_star"])
    for name, mu in CORPUS.items():
        try:
            rep = laplace_asymptotics(mu)
            regime, const, resid = repr(rep.regime), rep.fitted_constant, rep.residual
        except FitError:
            regime, const, resid = "super-polynomial", "", ""
        t = temperedness_test(mu)
        w.writerow([name, regime, const, resid, int(t.moment_verdict), int(t.growth_verdict), t.n_star, t.N_star])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
