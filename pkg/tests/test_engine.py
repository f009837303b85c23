import random
import zlib
from itertools import product
from math import comb

import pytest

from qalg.catalog import build
from qalg.elements import dunkl_theta, jm_d
from qalg.engine import (
    GuardError,
    complete,
    filtered_dims,
    gn_series,
    graded_dim,
    matrix_rank_dim,
    normal_form,
    poly_product,
    replay,
    span_dims,
    subalgebra_dims,
    torsion_probe,
)
from qalg.freealg import NCPoly, bracket_index, parse_element
from qalg.linalg import rank_of_rows
from qalg.scalars import QQ, FractionField, PrimeField


def test_gn3_counts():
    rb = complete(build("Gn", 3), 6)
    assert rb.standard_counts(6) == [1, 3, 7, 15, 31, 63, 127]


def test_an0_3_counts():
    rb = complete(build("An0", 3), 4)
    assert rb.standard_counts(4) == [1, 3, 2, 0, 0]


def test_bn0_3_counts():
    rb = complete(build("Bn0", 3), 6)
    assert rb.standard_counts(6) == [1, 3, 4, 3, 1, 0, 0]


def test_normal_form_examples():
    rb = complete(build("En0", 4), 3)
    e = parse_element("[1,4]*[2,4]*[1,4] + [2,4]*[1,4]*[2,4]", 4)
    assert not normal_form(rb, e)
    assert not normal_form(rb, NCPoly.zero(4))
    rb3 = complete(build("Gn", 3), 2)
    nf = normal_form(rb3, parse_element("[1,2]*[2,3]", 3))
    assert nf == parse_element("[2,3]*[1,3] + [1,3]*[1,2]", 3)


def test_graded_dim_examples():
    assert graded_dim(complete(build("Gn", 4), 2), 2) == 25
    assert graded_dim(complete(build("En0", 4), 2), 2) == 3 * comb(4, 4) + 4 * comb(4, 3)
    for n in range(3, 7):
        assert graded_dim(complete(build("Bn", n), 2), 1) == comb(n, 2)


def test_filtered_dims_of_deformations():
    assert filtered_dims(complete(build("Lnbeta", 3), 4), 4).dims == [1, 3, 7, 15, 31]
    assert filtered_dims(complete(build("Pnbeta", 3), 3), 3).dims == [1, 3, 2, 0]
    assert filtered_dims(complete(build("Ent", 3), 4), 4).dims == [1, 3, 4, 3, 1]


@pytest.mark.parametrize("preset,n,K", [("Lnbeta", 3, 4), ("Pnbeta", 3, 3), ("Ent", 3, 4), ("TildeGn0", 3, 3), ("Pnbeta", 4, 3)])
def test_filtered_dims_agree_with_span_growth(preset, n, K):
    rb = complete(build(preset, n), K)
    assert filtered_dims(rb, K).dims == span_dims(rb, K).dims


def test_subalgebra_dims_examples():
    rb = complete(build("Bn0", 3), 4)
    rep = subalgebra_dims(rb, [jm_d(2, 3), jm_d(3, 3)], 4)
    assert rep.dims == [1, 2, 2, 2, 1] and rep.total == 8
    rb = complete(build("En0", 4), 8)
    gens = [NCPoly.bracket(i, 4, 4) for i in (1, 2, 3)]
    assert subalgebra_dims(rb, gens, 8).dims == [1, 3, 6, 9, 10, 9, 6, 3, 1]
    rb = complete(build("Gn", 3), 3)
    assert subalgebra_dims(rb, [dunkl_theta(1, 3), dunkl_theta(2, 3)], 3).dims == [1, 2, 3, 4]


def test_subalgebra_generators_must_be_linear():
    rb = complete(build("Gn", 3), 3)
    with pytest.raises(Exception):
        subalgebra_dims(rb, [dunkl_theta(1, 3) * dunkl_theta(2, 3)], 2)


def test_torsion_probe_bn0_3():
    rep = torsion_probe(build("Bn0", 3), 5, [2, 2147483629])
    primes = {d[0] for d in rep["discrepancies"]}
    assert primes == {2}
    assert all(d[1] >= 3 for d in rep["discrepancies"])


@pytest.mark.parametrize("preset, n, K, primes", [("Gn", 3, 5, [2, 3]), ("An0", 4, 4, [2])])
def test_torsion_probe_clean(preset, n, K, primes):
    assert torsion_probe(build(preset, n), K, primes)["discrepancies"] == []


def test_degree_guard():
    rb = complete(build("Gn", 3), 2)
    e = parse_element("[1,2]*[2,3]*[1,3]", 3)
    with pytest.raises(GuardError):
        rb.normal_form(e)


@pytest.mark.parametrize("preset", ["Gn", "Bn"])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_series_of_gn_and_bn(preset, n):
    K = 6 if n < 5 else 5
    assert complete(build(preset, n), K).standard_counts(K) == gn_series(n, K)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gncomm_is_free_commutative(n):
    m = comb(n, 2)
    counts = complete(build("GnComm", n), 4).standard_counts(4)
    assert counts == [comb(m + k - 1, k) for k in range(5)]


def _normal_form_set(n, k):
    """Words w_2 w_3 ... w_n with w_j a word in the letters [i,j], i < j."""
    out = set()
    for word in product(range(comb(n, 2)), repeat=k):
        cols = []
        for a in word:
            for j in range(2, n + 1):
                if a < comb(j, 2):
                    cols.append(j)
                    break
        if cols == sorted(cols):
            out.add(word)
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_low_degree_normal_form_set(n):
    rb = complete(build("Gn", n), 2)
    for k in (1, 2):
        words = _normal_form_set(n, k)
        assert len(words) == graded_dim(rb, k)
        rows = [rb.to_codes(rb.normal_form(NCPoly.word(w, n))) for w in sorted(words)]
        assert rank_of_rows(rows, QQ) == len(words)


@pytest.mark.parametrize(
    "preset, n, K",
    [("Gn", 3, 6), ("Bn", 3, 6), ("En0", 3, 7), ("Bn0", 3, 7), ("An0", 4, 4), ("GnComm", 3, 5), ("En0", 4, 4)],
)
def test_oracle_agrees_with_automaton(preset, n, K):
    p = build(preset, n)
    counts = complete(p, K).standard_counts(K)
    assert [matrix_rank_dim(p, k) for k in range(K + 1)] == counts


def test_oracle_over_prime_field():
    p = build("Bn0", 3)
    F = PrimeField(2)
    counts = complete(p, 5, F).standard_counts(5)
    assert [matrix_rank_dim(p, k, F) for k in range(6)] == counts
    assert counts != complete(p, 5).standard_counts(5)


def _random_element(rng, n, K, ring=QQ):
    g = comb(n, 2)
    terms = {}
    for _ in range(rng.randint(1, 5)):
        w = tuple(rng.randrange(g) for _ in range(rng.randint(0, K)))
        terms[w] = rng.randint(-4, 4)
    return NCPoly(n, terms, ring)


@pytest.mark.parametrize("preset, n", [("Gn", 3), ("En0", 4), ("Bn0", 3), ("An0", 3)])
def test_normal_form_idempotent_and_replayable(preset, n):
    rb = complete(build(preset, n), 5)
    rng = random.Random(zlib.crc32(preset.encode()))
    for _ in range(100):
        e = _random_element(rng, n, 5)
        log = []
        nf = rb.normal_form(e, log=log)
        assert rb.normal_form(nf) == nf
        assert replay(rb, e, log) == nf
        assert all(rb.is_standard(w) for w in nf.terms)


def test_replay_detects_tampering():
    rb = complete(build("Gn", 3), 3)
    e = parse_element("[1,2]*[2,3]", 3)
    log = []
    nf = rb.normal_form(e, log=log)
    assert log
    assert replay(rb, e + parse_element("[1,3]*[1,3]", 3), log) != nf


def test_inhomogeneous_zero_reduction_over_parameters():
    p = build("Ent", 3)
    assert isinstance(p.ring, FractionField)
    rb = complete(p, 3)
    t12 = p.ring.gen("t_12")
    e = parse_element("[1,2]^2", 3, p.ring) - NCPoly.scalar(t12, 3, p.ring)
    assert not rb.normal_form(e)
    # [1,2]^3 = t_12 [1,2] needs the parameter in the coefficient
    cube = parse_element("[1,2]^3", 3, p.ring)
    assert rb.normal_form(cube) == NCPoly.bracket(1, 2, 3, p.ring).scale(t12)


def test_completion_is_deterministic():
    a = complete(build("Bn0", 4), 4)
    b = complete(build("Bn0", 4), 4)
    assert [r.terms for r in a.rules] == [r.terms for r in b.rules]


def test_series_helpers():
    assert gn_series(3, 4) == [1, 3, 7, 15, 31]
    assert poly_product([[1, 1], [1, 2]]) == [1, 3, 2]
