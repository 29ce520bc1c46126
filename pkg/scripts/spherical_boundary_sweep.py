"""Approach t -> pi in phi_lambda(a_{it}) and print the prefactor ratios.

Both prefactor conventions are shown: cos(t/2)**(m_alpha - 1), whose limit is
what boundary_asymptotics returns, and (1 + cos t)**((m_alpha - 1)/2), which
differs from it by 2**((m_alpha - 1)/2).
"""
import argparse
import math

from modcrown.spherical import (
    LogRate,
    PowerPrefactor,
    SphericalParam,
    boundary_asymptotics,
    parse_algebra,
    root_data,
    spherical_imaginary_time,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebras", default="so:3,so:5,su:1,su:2,sp:2,f4")
    ap.add_argument("--lambdas", default="1j,2j,0.5,0.25")
    ap.add_argument("--kmax", type=int, default=10)
    args = ap.parse_args()
    lams = [complex(x.replace("i", "j")) for x in args.lambdas.split(",")]
    print("algebra,lambda,k,ratio_cos_prefactor,ratio_one_plus_cos_prefactor")
    for tag in args.algebras.split(","):
        data = root_data(parse_algebra(tag))
        for lam in lams:
            p = SphericalParam(lam, data)
            form = boundary_asymptotics(p)
            for k in range(2, args.kmax + 1, 2):
                t = math.pi - 10.0**-k
                phi = spherical_imaginary_time(p, t)
                if isinstance(form, PowerPrefactor):
                    b = (data.m_alpha - 1) / 2
                    r1 = math.cos(t / 2) ** form.power * phi / form.limit_value
                    r2 = (1 + math.cos(t)) ** b * phi / form.limit_value
                    print(f"{tag},{lam},{k},{abs(r1):.8f},{abs(r2):.8f}")
                elif isinstance(form, LogRate):
                    r = phi / -math.log(math.pi - t) / form.coefficient
                    print(f"{tag},{lam},{k},{abs(r):.8f},")
                else:
                    print(f"{tag},{lam},{k},1,1")


if __name__ == "__main__":
    main()
