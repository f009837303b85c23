import random

import sympy
from sympy.polys.matrices import DomainMatrix

from qalg.linalg import Echelon, FractionFreeEchelon, make_echelon, rank_of_rows
from qalg.scalars import QQ, FractionField, PrimeField

SYMS = {"t": sympy.Symbol("t"), "beta": sympy.Symbol("beta")}


def _to_sympy(x):
    return sympy.sympify(str(x).replace("^", "**"), locals=SYMS)


def test_echelon_over_rationals():
    e = Echelon(QQ)
    assert e.add({3: 1, 1: 2})
    assert not e.add({3: 2, 1: 4})
    assert e.add({1: 1})
    assert e.rank == 2 and e.contains({3: 5})


def test_echelon_over_prime_field():
    F = PrimeField(7)
    assert rank_of_rows([{0: 1, 1: 2}, {0: 3, 1: 6}, {1: 1}], F) == 2
    assert rank_of_rows([{0: 1, 1: 7}], F) == 1


def test_make_echelon_dispatch():
    assert isinstance(make_echelon(QQ), Echelon)
    assert isinstance(make_echelon(FractionField(("t",))), FractionFreeEchelon)


def test_fraction_free_rank_matches_sympy():
    F = FractionField(("t", "beta"))
    a, b = F.gen("t"), F.gen("beta")
    rng = random.Random(1)
    pool = [0, 1, a, b, a * a - b, F.convert(1) / (a - b), a * b - 1]
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        base = [[F.convert(rng.choice(pool)) for _ in range(c)] for _ in range(2)]
        rows, mat = [], []
        for _ in range(r):
            if rng.random() < 0.5:
                row = [base[0][j] * a + base[1][j] * (b - a) for j in range(c)]
            else:
                row = [F.convert(rng.choice(pool)) for _ in range(c)]
            rows.append({j: x for j, x in enumerate(row)})
            mat.append([_to_sympy(x) for x in row])
        assert rank_of_rows(rows, F) == DomainMatrix.from_Matrix(sympy.Matrix(mat)).to_field().rank()
