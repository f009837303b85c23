"""Jucys-Murphy elements in the braid group, the Hecke algebra and the
symmetric group.

Run:  python3 demos/braids_and_hecke.py
"""

from qalg import braid, hecke


def main():
    n = 4
    for k in range(2, n + 1):
        w = braid.build_Dk_word(k, n)
        print(f"D_{k} = {w}   Garside normal form: {braid.garside_nf(w)}")

    print("\nD_k commute (Garside):", all(ok for *_, ok in braid.check_dk_commute(n)))
    print("D_k commute (Hecke):  ", all(ok for *_, ok in hecke.check_dk_commute_hecke(n)))

    for k, ok, detail in hecke.check_hecke_limit(n):
        print(f"limit of D_{k} at q=1: {detail}   Jucys-Murphy: {ok}")

    print("\npure braid relations for n = 4:")
    for r in braid.verify_pure_relations(4):
        if not r.holds:
            print("  fails:", r.label())
    a = braid.gij_product([(1, 3), (2, 4)], 4)
    b = braid.gij_product([(2, 4), (1, 3)], 4)
    print("  g13 g24 normal form:", braid.garside_nf(a))
    print("  g24 g13 normal form:", braid.garside_nf(b))


if __name__ == "__main__":
    main()
