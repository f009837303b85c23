"""Hilbert series of a few quadratic algebras, computed by completion.

Run:  python3 demos/hilbert_series.py
"""

from qalg.catalog import build
from qalg.elements import dunkl_theta
from qalg.engine import complete, filtered_dims, gn_series, poly_product, subalgebra_dims
from qalg.freealg import NCPoly


def show(title, dims):
    print(f"{title:<42} {' '.join(map(str, dims))}  (total {sum(dims)})")


def main():
    # G_n is infinite dimensional; its series is 1 / prod (1 - j t).
    for n in (3, 4):
        rb = complete(build("Gn", n), 6)
        show(f"G_{n} through degree 6", rb.standard_counts(6))
        show(f"  1/prod(1-jt), j<{n}", gn_series(n, 6))

    # E0_4 is finite: 576 standard words, palindromic by degree.
    rb = complete(build("En0", 4), 13)
    show("E0_4", rb.standard_counts(13))
    show("  (1+t)^4 (1+t^2)^2 (1+t+t^2)^2", poly_product([[1, 1]] * 4 + [[1, 0, 1]] * 2 + [[1, 1, 1]] * 2))

    # The subalgebra generated by [1,4], [2,4], [3,4] inside E0_4.
    z = subalgebra_dims(rb, [NCPoly.bracket(i, 4, 4) for i in (1, 2, 3)], 9)
    show("subalgebra <[14],[24],[34]> of E0_4", z.dims)

    # The braid-type quotient agrees with E0_n for n = 3 but not for n = 4.
    for n in (3, 4):
        b = complete(build("Bn0", n), 13).standard_counts(13)
        e = complete(build("En0", n), 13).standard_counts(13)
        show(f"B0_{n}", b)
        print(f"  equal to E0_{n}: {b == e}")

    # Over Q(t_ij) the Dunkl elements generate a commutative algebra with
    # the q-factorial as Hilbert polynomial.
    rb = complete(build("Ent", 4), 7)
    th = [dunkl_theta(j, 4, rb.field) for j in range(1, 4)]
    show("theta-subalgebra of Et_4", subalgebra_dims(rb, th, 7).dims)

    # Inhomogeneous deformations: filtered dimensions.
    show("P_4,beta (filtered)", filtered_dims(complete(build("Pnbeta", 4), 4), 4).dims)
    show("L_3,beta (filtered)", filtered_dims(complete(build("Lnbeta", 3), 5), 5).dims)


if __name__ == "__main__":
    main()
