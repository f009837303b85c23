"""Proving identities by reduction to normal form, and finding witnesses
when an identity fails.

Run:  python3 demos/identities.py
"""

from qalg import elements as E
from qalg.catalog import build
from qalg.engine import complete
from qalg.freealg import commutator, parse_element


def main():
    rb = complete(build("Gn", 4), 3)
    th = [E.dunkl_theta(j, 4) for j in range(1, 5)]
    print("theta_1 =", th[0])
    v = E.check_zero(rb, commutator(th[0], th[1]))
    print("[theta_1, theta_2] in G_4:", v.status)

    # The same commutator is not zero in the free algebra...
    print("... but as a free polynomial it has", len(commutator(th[0], th[1]).terms), "terms")

    # An element that is not zero comes back with its normal form as witness.
    e = parse_element("[1,2]*[2,3]", 3)
    v = E.check_zero(complete(build("Gn", 3), 3), e)
    print(f"[1,2]*[2,3] in G_3: {v.status}, normal form {v.normal_form}")

    for rep in (E.check_fn_zero(5), E.check_k30_relations(), E.check_fourteen_term(4), E.check_fourteen_term_variant(4)):
        print(f"\n{rep.check} (n={rep.n}): {rep.summary()}")
        for item in rep.items:
            print(f"  {item.label}: {item.status}")


if __name__ == "__main__":
    main()
