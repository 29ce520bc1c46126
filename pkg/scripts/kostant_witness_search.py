"""Search for a negative Gram eigenvalue of phi_lambda restricted to A.

For real lambda between s0 and rho on u(1,2;H) the function is not positive
definite on the group.  This script tries hard to see that on the subgroup A
alone: random point sets, regular grids and a local optimiser that moves the
points to lower the smallest eigenvalue.
"""
import argparse

import numpy as np
from scipy.optimize import minimize

from modcrown.spherical import Sp1n, SphericalParam, min_gram_eigenvalue, root_data


def search(lam: float, rng: np.random.Generator, size: int, restarts: int) -> float:
    p = SphericalParam(lam, root_data(Sp1n(2)))
    best = np.inf
    for spacing in (0.1, 0.25, 0.5, 1.0, 2.0, 4.0):
        best = min(best, min_gram_eigenvalue(p, spacing * np.arange(size)))
    for _ in range(restarts):
        x0 = rng.uniform(-5, 5, size=size)
        res = minimize(lambda ts: min_gram_eigenvalue(p, ts), x0, method="Nelder-Mead",
                       options={"maxiter": 400, "xatol": 1e-6, "fatol": 1e-14})
        best = min(best, res.fun)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambdas", type=int, default=8)
    ap.add_argument("--size", type=int, default=6)
    ap.add_argument("--restarts", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    data = root_data(Sp1n(2))
    print(f"s0={float(data.s0)} rho={float(data.rho)}")
    print("lambda,lowest_eigenvalue")
    for lam in np.linspace(float(data.s0), float(data.rho), args.lambdas + 2)[1:-1]:
        print(f"{lam:.4f},{search(lam, rng, args.size, args.restarts):.3e}")


if __name__ == "__main__":
    main()
