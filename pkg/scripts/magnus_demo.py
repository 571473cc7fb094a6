"""Walk through the flow computation on one generator, order by order.

Run:  python scripts/magnus_demo.py [order]
"""

import sys

from postgroup_lab.magnus import (
    alpha_series,
    check_alpha_ode,
    check_primitivity_of_log,
    exp_dot_series,
    exp_star_series,
    magnus_gl,
    solve_right_flow,
)
from postgroup_lab.tensor_postlie import Leaf, format_poly, kmap_tensor


def main(order: int) -> None:
    x = Leaf(0)
    alpha = alpha_series(x, order - 1)
    flow = solve_right_flow(x, order)
    omega = magnus_gl(x, order)

    print(f"deformation series, d/dt alpha = -alpha |> alpha  (order {order - 1})")
    for k, c in enumerate(alpha.coeffs):
        print(f"  alpha[{k}] = {format_poly(c)}")
    print(f"\nsolution of Y' = Y.alpha  (order {order})")
    for k, c in enumerate(flow.coeffs):
        print(f"  Y[{k}] = {format_poly(c)}")
    print(f"\nMagnus series, exp^*(Omega) = exp^.  (order {order})")
    for k, c in enumerate(omega.coeffs):
        print(f"  Omega[{k}] = {format_poly(c)}")

    exp = exp_dot_series(x, order)
    print()
    print(f"alpha solves its ODE: {bool(check_alpha_ode(x, order))}")
    twisted = all(
        flow.coeff(k) == kmap_tensor(exp.coeff(k)) for k in range(order + 1)
    )
    print(f"Y equals the twist of exp: {twisted}")
    print(f"log Y is primitive throughout: {bool(check_primitivity_of_log(flow))}")
    print(f"exp^*(Omega) recovers exp: {exp_star_series(omega) == exp}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
