"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Criteria whose failure is genuine (the claimed identity or dimension does not
hold as stated) are marked ``xfail(strict=True)``; their assertions are the
faithful ones.  A companion test pins down exactly which sub-checks fail, so
any change in that set (a regression or an unexpected success) is reported.
"""

import random
import time
import zlib
from functools import lru_cache
from itertools import combinations, product
from math import comb

import pytest

from qalg import braid, checks, hecke
from qalg import elements as E
from qalg.catalog import PRESETS, build
from qalg.engine import (
    complete,
    filtered_dims,
    gn_series,
    matrix_rank_dim,
    poly_product,
    replay,
    subalgebra_dims,
    torsion_probe,
)
from qalg.freealg import NCPoly, bracket_index
from qalg.linalg import rank_of_rows
from qalg.scalars import DEFAULT_PRIMES

Result = tuple[str, bool, str]


def _report(rep, prefix: str = "") -> list[Result]:
    """Flatten an element/check report into labelled results."""
    head = prefix or f"{rep.check} n={rep.n}"
    if not rep.items:
        return [(f"{head}: no items", False, "; ".join(rep.notes))]
    return [(f"{head}: {i.label}", i.ok, i.detail) for i in rep.items]


def _compare(label: str, got, want) -> Result:
    return (label, list(got) == list(want), f"got {list(got)} want {list(want)}")


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _run(k, criterion, results, elapsed):
    failed = criterion(k, results, elapsed)
    assert not failed, failed


# --- 1. Hilbert series of G_n and B_n ----------------------------------------

@lru_cache(maxsize=None)
def _c1():
    res = []
    for preset in ("Gn", "Bn"):
        for n in range(2, 6):
            got = complete(build(preset, n), 6).standard_counts(6)
            res.append(_compare(f"{preset} n={n}", got, gn_series(n, 6)))
    return res


def test_criterion_01_gn_bn_series(criterion):
    res, dt = _timed(_c1)
    res = res + [("runtime < 60 s", dt < 60, f"{dt:.1f}s")]
    _run(1, criterion, res, dt)


# --- 2. closed formulas for dim E0_{n,k} -------------------------------------

def en0_formula(n: int, k: int) -> int:
    C = lambda m: comb(n, m)
    table = {
        0: [(1, 0)],
        1: [(1, 2)],
        2: [(3, 4), (4, 3)],
        3: [(15, 6), (40, 5), (30, 4), (3, 3)],
        4: [(105, 8), (420, 7), (610, 6), (366, 5), (67, 4), (1, 3)],
        5: [(945, 10), (5040, 9), (10780, 8), (11571, 7), (6285, 6), (1480, 5), (96, 4)],
        6: [(10395, 12), (69300, 11), (195300, 10), (299908, 9), (268674, 8), (138545, 7), (37456, 6), (4231, 5), (106, 4)],
    }
    return sum(a * C(m) for a, m in table[k])


@lru_cache(maxsize=None)
def _c2():
    res = []
    for n in range(2, 7):
        K = 6 if n <= 4 else 5 if n == 5 else 4
        got = complete(build("En0", n), K).standard_counts(K)
        res.append(_compare(f"E0_{n} k<={K}", got, [en0_formula(n, k) for k in range(K + 1)]))
    return res


def test_criterion_02_en0_dimension_formulas(criterion):
    res, dt = _timed(_c2)
    res = res + [("runtime < 10 min", dt < 600, f"{dt:.1f}s")]
    _run(2, criterion, res, dt)


# --- 3. H(E0_4) -----------------------------------------------------------------

E4_SERIES = poly_product([[1, 1]] * 4 + [[1, 0, 1]] * 2 + [[1, 1, 1]] * 2)


@lru_cache(maxsize=None)
def _e0_4_counts():
    return complete(build("En0", 4), 13).standard_counts(13)


def test_criterion_03_e0_4_series(criterion):
    def run():
        got = _e0_4_counts()
        return [
            _compare("E0_4 degrees 0..12", got[:13], E4_SERIES),
            ("nothing in degree 13", got[13] == 0, f"dim={got[13]}"),
            ("total dimension 576", sum(got) == 576 == sum(E4_SERIES), f"total={sum(got)}"),
        ]

    res, dt = _timed(run)
    _run(3, criterion, res, dt)


# --- 4. H(B0_3) and H(B0_4) against E0_n -----------------------------------------

@lru_cache(maxsize=None)
def _c4():
    b3 = complete(build("Bn0", 3), 6).standard_counts(6)
    e3 = complete(build("En0", 3), 6).standard_counts(6)
    res = [
        _compare("B0_3 = 1+3t+4t^2+3t^3+t^4", b3, [1, 3, 4, 3, 1, 0, 0]),
        _compare("B0_3 = E0_3", b3, e3),
    ]
    b4 = complete(build("Bn0", 4), 13).standard_counts(13)
    e4 = _e0_4_counts()
    for k in range(14):
        res.append((f"B0_4 = E0_4 in degree {k}", b4[k] == e4[k], f"B0={b4[k]} E0={e4[k]}"))
    return res


@pytest.mark.xfail(strict=True, reason="B0_4 and E0_4 differ from degree 4 on; see the decisions ledger")
def test_criterion_04_b0_series(criterion):
    res, dt = _timed(_c4)
    _run(4, criterion, res, dt)


def test_criterion_04_parts():
    failed = [label for label, ok, _ in _c4() if not ok]
    assert failed and all(label.startswith("B0_4 = E0_4 in degree") for label in failed)
    assert all(ok for label, ok, _ in _c4() if label.startswith("B0_3"))


# --- 5. K0_3 ---------------------------------------------------------------------

def test_criterion_05_k0_3(criterion):
    def run():
        rb = complete(build("Bn0", 3), 6)
        rep = subalgebra_dims(rb, [E.jm_d(2, 3), E.jm_d(3, 3)], 6)
        want = poly_product([[1, 1], [1, 1], [1, 0, 1]])
        res = [
            _compare("H(K0_3) = (1+t)^2(1+t^2)", rep.dims[:5], want),
            ("nothing above degree 4", rep.dims[5:] == [0, 0], f"{rep.dims}"),
            ("dim K0_3 = 8", rep.total == 8, f"total={rep.total}"),
        ]
        return res + _report(E.check_k30_relations())

    res, dt = _timed(run)
    _run(5, criterion, res, dt)


# --- 6. identity suite ---------------------------------------------------------

@lru_cache(maxsize=None)
def _c6():
    res = []
    for n in range(3, 7):
        res += _report(E.check_fn_zero(n))
    for n in range(3, 6):
        res += _report(E.check_fn_t(n))
    res += _report(E.check_ten_term(5))
    res += _report(E.check_bn0_relations())
    res += _report(E.check_fourteen_term(4))
    res += _report(E.check_theta_identities())
    for n in range(2, 5):
        res += _report(E.check_pieri(n, max_m=3))
        res += _report(E.check_em_vanish(n))
    return res


KNOWN_6 = ["fourteen-term n=4: second fourteen-term relation"]


@pytest.mark.xfail(strict=True, reason="second fourteen-term relation does not hold in B0_4 as printed")
def test_criterion_06_identity_suite(criterion):
    res, dt = _timed(_c6)
    _run(6, criterion, res, dt)


def test_criterion_06_parts():
    assert [label for label, ok, _ in _c6() if not ok] == KNOWN_6
    assert E.check_fourteen_term_variant(4).passed


# --- 7. commutation suites --------------------------------------------------------

@lru_cache(maxsize=None)
def _c7():
    res = []
    for n in range(2, 6):
        res += _report(E.check_dunkl_commute(n, "Gn"), f"theta in G_{n}")
    for n in range(3, 6):
        res += _report(E.check_jm_commute(n, "Bn"), f"d in B_{n}")
    for n in range(2, 5):
        res += _report(E.check_tilde_commute(n), f"theta~ in TildeG0_{n}")
    for n in range(3, 6):
        res += _report(checks.dk_commute_garside(n), f"Garside n={n}")
    for n in range(2, 5):
        res += _report(checks.y_commute(n, deg=4), f"Y_k n={n}")
    for n in range(2, 5):
        res += _report(checks.classical_commute(n, deg=4, reading="composed"), f"classical D n={n}")
    return res


@pytest.mark.xfail(strict=True, reason="classical Dunkl operators as composed do not commute")
def test_criterion_07_commutation(criterion):
    res, dt = _timed(_c7)
    _run(7, criterion, res, dt)


def test_criterion_07_parts():
    failed = [label for label, ok, _ in _c7() if not ok]
    assert failed and all(label.startswith("classical D") for label in failed)
    for n in range(2, 5):
        assert checks.classical_commute(n, deg=4, reading="multiplied").passed


# --- 8. Hecke quasi-classical limit ----------------------------------------------

def test_criterion_08_hecke_limit(criterion):
    def run():
        res = []
        for n in range(2, 6):
            res += [(f"n={n} k={k}", ok, detail) for k, ok, detail in hecke.check_hecke_limit(n)]
        return res

    res, dt = _timed(run)
    res = res + [("runtime < 10 s", dt < 10, f"{dt:.2f}s")]
    _run(8, criterion, res, dt)


# --- 9. braid and pure-braid checks ---------------------------------------------

@lru_cache(maxsize=None)
def _c9():
    res = [(f"pure n=4: {r.label()}", r.holds, "") for r in braid.verify_pure_relations(4)]
    for n in range(2, 6):
        res += [(f"pi(Y*_{k}) n={n}", ok, "") for k, ok in braid.check_pi_ykstar(n)]
    res += [(f"eps^2 n=4: {label}", ok, "") for label, ok in braid.check_eps_deformation(4)]
    return res


@pytest.mark.xfail(strict=True, reason="g13 and g24 do not commute in the pure braid group")
def test_criterion_09_braids(criterion):
    res, dt = _timed(_c9)
    _run(9, criterion, res, dt)


def test_criterion_09_parts():
    assert [label for label, ok, _ in _c9() if not ok] == ["pure n=4: commute: g13g24=g24g13"]


# --- 10. operator relations -------------------------------------------------------

@lru_cache(maxsize=None)
def _c10():
    res = _report(checks.affine_hecke(3, deg=3), "affine n=3")
    res += _report(checks.affine_hecke(4, deg=2), "affine n=4")
    res += _report(E.check_coxeter_tij(4), "T_ij n=4")
    for n in range(2, 4):
        res += _report(checks.classical_limit(n, deg=3, reading="composed"), f"limit n={n}")
    return res


@pytest.mark.xfail(strict=True, reason="first-order term of Y_j is not the composed classical D_j")
def test_criterion_10_operators(criterion):
    res, dt = _timed(_c10)
    _run(10, criterion, res, dt)


def test_criterion_10_parts():
    failed = [label for label, ok, _ in _c10() if not ok]
    assert failed and all(label.startswith("limit") for label in failed)
    from qalg.qops import check_classical_limit

    for n in range(2, 4):
        assert check_classical_limit(n, 3, "Yk", "multiplied", sign=-1).passed


# --- 11. A0_n and its deformations ------------------------------------------------

def _an_basis_words(n: int) -> dict[int, list[tuple[int, ...]]]:
    """Monomials [j1 k1]...[jl kl] with k1 < ... < kl, grouped by degree."""
    out: dict[int, list[tuple[int, ...]]] = {}
    for ks in (c for l in range(n) for c in combinations(range(2, n + 1), l)):
        for js in product(*(range(1, k) for k in ks)):
            w = tuple(bracket_index(j, k) for j, k in zip(js, ks))
            out.setdefault(len(w), []).append(w)
    return out


def test_criterion_11_an0_and_deformations(criterion):
    def run():
        res = []
        for n in range(2, 7):
            want = poly_product([[1, j] for j in range(1, n)])
            got = complete(build("An0", n), n).standard_counts(n)
            res.append(_compare(f"A0_{n}", got, want + [0]))
        for n in range(2, 6):
            want = poly_product([[1, j] for j in range(1, n)])
            got = filtered_dims(complete(build("Pnbeta", n), n), n).dims
            res.append(_compare(f"P_{n},beta filtered", got, want + [0]))
        for n in range(2, 5):
            got = filtered_dims(complete(build("Lnbeta", n), 5), 5).dims
            res.append(_compare(f"L_{n},beta filtered", got, gn_series(n, 5)))
        for n in range(2, 6):
            rb = complete(build("An0", n), n)
            dims = rb.standard_counts(n)
            for k, words in sorted(_an_basis_words(n).items()):
                rows = [rb.to_codes(rb.normal_form(NCPoly.word(w, n))) for w in words]
                rank = rank_of_rows(rows, rb.field)
                ok = len(words) == rank == dims[k]
                res.append((f"monomial basis of A0_{n} degree {k}", ok, f"count={len(words)} rank={rank} dim={dims[k]}"))
        return res

    res, dt = _timed(run)
    _run(11, criterion, res, dt)


# --- 12. subalgebra series ----------------------------------------------------------

def test_criterion_12_subalgebras(criterion):
    def run():
        res = []
        for n, K in ((3, 4), (4, 7)):
            rb = complete(build("Ent", n), K)
            got = subalgebra_dims(rb, [E.dunkl_theta(j, n, rb.field) for j in range(1, n)], K).dims
            want = poly_product([[1] * j for j in range(1, n + 1)])
            res.append(_compare(f"theta-subalgebra of Et_{n} = [{n}]!_t", got, want + [0]))
        rb = complete(build("En0", 4), 9)
        got = subalgebra_dims(rb, [NCPoly.bracket(i, 4, 4) for i in (1, 2, 3)], 9).dims
        res.append(_compare("Z_4", got, [1, 3, 6, 9, 10, 9, 6, 3, 1, 0]))
        for n in range(2, 7):
            rb = complete(build("En0", n), 4)
            got = subalgebra_dims(rb, [NCPoly.bracket(i, n, n) for i in range(1, n)], 4).dims
            z3 = (n - 1) * (n - 2) * (2 * n - 5) // 2
            z4 = (n - 1) * (n - 2) * (n - 3) * (3 * n - 7) // 3
            res.append((f"Z_{n},3", got[3] == z3, f"got {got[3]} want {z3}"))
            res.append((f"Z_{n},4", got[4] == z4, f"got {got[4]} want {z4}"))
        return res

    res, dt = _timed(run)
    _run(12, criterion, res, dt)


# --- 13. property-based checks ------------------------------------------------------

ORACLE_PRESETS = ("Gn", "Bn", "En0", "Bn0", "An0", "GnComm")
ORACLE_WORDS = 10**5


def _oracle_instances():
    for preset in ORACLE_PRESETS:
        for n in range(2, 7):
            g = comb(n, 2)
            K = 6 if g == 1 else max(k for k in range(1, 20) if g**k <= ORACLE_WORDS)
            yield preset, n, K


def _random_element(rng, p, K, ring):
    g = p.num_gens
    params = list(getattr(ring, "params", ()))
    terms = {}
    for _ in range(rng.randint(1, 5)):
        w = tuple(rng.randrange(g) for _ in range(rng.randint(0, K)))
        c = ring.convert(rng.randint(-4, 4))
        if params and rng.random() < 0.5:
            c = c * ring.gen(rng.choice(params))
        terms[w] = c
    return NCPoly(p.n, terms, ring)


def test_criterion_13_properties(criterion):
    def run():
        res = []
        probe = torsion_probe(build("Bn0", 3), 5, (2,) + DEFAULT_PRIMES)
        primes = sorted({d[0] for d in probe["discrepancies"]})
        res.append(("B0_3 torsion reported at p=2", 2 in primes, f"discrepancies={probe['discrepancies']}"))
        res.append(("no discrepancy at the large primes", not set(primes) & set(DEFAULT_PRIMES), f"primes={primes}"))
        for preset, n, K in _oracle_instances():
            p = build(preset, n)
            auto = complete(p, K).standard_counts(K)
            oracle = [matrix_rank_dim(p, k) for k in range(K + 1)]
            res.append(_compare(f"oracle {preset} n={n} k<={K}", oracle, auto))
        for preset in PRESETS:
            p = build(preset, 3)
            rb = complete(p, 4)
            rng = random.Random(zlib.crc32(preset.encode()))
            bad = 0
            for _ in range(1000):
                e = _random_element(rng, p, 4, rb.field)
                log = []
                nf = rb.normal_form(e, log=log)
                if rb.normal_form(nf) != nf or replay(rb, e, log) != nf:
                    bad += 1
            res.append((f"idempotence and replay {preset} (1000 elements)", bad == 0, f"{bad} bad"))
        return res

    res, dt = _timed(run)
    _run(13, criterion, res, dt)
