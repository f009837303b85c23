"""Hecke and Dunkl-Cherednik operators on polynomials, compared on all
monomials up to a given degree.

Run:  python3 demos/operators.py
"""

from qalg import qops


def main():
    n = 3
    T1, T2 = qops.build_T(1, n), qops.build_T(2, n)
    print("braid relation T1 T2 T1 = T2 T1 T2:", bool(qops.op_equal_on_slice(T1 * T2 * T1, T2 * T1 * T2, 3)))

    x = qops.XPoly.x(2, n, qops.QT)
    print("T1 applied to x2:", T1.apply(x))

    rep = qops.check_Y_commute(n, 3)
    print(f"Y_k commute on degree <= 3: {rep.passed} ({len(rep.items)} pairs)")

    for reading in ("composed", "multiplied"):
        rep = qops.check_classical_commute(n, 3, reading)
        print(f"classical D_j ({reading}) commute: {rep.passed}")
        for label, res in rep.items:
            if not res.equal:
                print(f"  {label}: witness {res.witness_str()}")
                break

    rep = qops.check_classical_limit(n, 2, "Yk", "multiplied", sign=-1)
    print("first-order term of Y_j vs classical D_j (multiplied, -beta):", rep.passed)


if __name__ == "__main__":
    main()
