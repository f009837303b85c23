"""Braid words, the Garside left normal form, and pure braid checks.

A positive permutation braid is stored as its permutation; braid word
``g_{a_1} ... g_{a_k}`` corresponds to the permutation ``s_{a_1} o ... o s_{a_k}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .hecke import Permutation, compose, identity, inverse, length, perm_str, reduced_word


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators; letter ``i`` is g_i and ``-i`` is g_i^-1."""

    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) >= self.n:
                raise BraidError(f"generator {a} out of range for n={self.n}")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise BraidError("rank mismatch")
        return BraidWord(self.letters + other.letters, self.n)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(-a for a in reversed(self.letters)), self.n)

    def __str__(self):
        return " ".join(map(str, self.letters)) or "e"

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        try:
            return cls(tuple(int(tok) for tok in text.split()), n)
        except ValueError as exc:
            raise BraidError(f"cannot parse braid word {text!r}") from exc


@dataclass(frozen=True)
class GarsideNF:
    """Delta^inf followed by a left-weighted sequence of permutation braids."""

    n: int
    inf: int
    factors: tuple[Permutation, ...]

    def __str__(self):
        body = " ; ".join(perm_str(p) for p in self.factors)
        return f"D^{self.inf} | {body}" if body else f"D^{self.inf} |"

    @property
    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors


def _s(i: int, n: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _delta(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def _tau(p: Permutation, k: int = 1) -> Permutation:
    """Conjugation by Delta^k, i.e. s_i -> s_{n-i} applied k times."""
    if k % 2 == 0:
        return p
    d = _delta(len(p))
    return compose(compose(d, p), d)


def right_descents(p: Permutation) -> set[int]:
    return {i for i in range(1, len(p)) if p[i - 1] > p[i]}


def left_descents(p: Permutation) -> set[int]:
    return right_descents(inverse(p))


def _left_weight(a: Permutation, b: Permutation) -> tuple[Permutation, Permutation, bool]:
    changed = False
    n = len(a)
    while True:
        move = left_descents(b) - right_descents(a)
        if not move:
            return a, b, changed
        i = min(move)
        si = _s(i, n)
        a = compose(a, si)
        b = compose(si, b)
        changed = True


def garside_nf(w: BraidWord) -> GarsideNF:
    """Left greedy normal form of a braid word."""
    n = w.n
    delta = _delta(n)
    inf = 0
    factors: list[Permutation] = []
    # rewrite as Delta^inf * (positive simple factors)
    for a in w.letters:
        if a > 0:
            factors.append(_s(a, n))
        else:
            # g^-1 = Delta^-1 (Delta g^-1); push Delta^-1 left through the factors
            factors = [_tau(p) for p in factors]
            inf -= 1
            factors.append(compose(delta, _s(-a, n)))
    return _normalize(n, inf, factors)


def _normalize(n: int, inf: int, factors: list[Permutation]) -> GarsideNF:
    e = identity(n)
    delta = _delta(n)
    factors = [p for p in factors if p != e]
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 2, -1, -1):
            a, b, ch = _left_weight(factors[k], factors[k + 1])
            if ch:
                factors[k], factors[k + 1] = a, b
                changed = True
        # absorb leading Deltas and drop trailing identities
        while factors and factors[0] == delta:
            factors.pop(0)
            inf += 1
        factors = [p for p in factors if p != e]
    return GarsideNF(n, inf, tuple(factors))


def braid_equal(a: BraidWord, b: BraidWord) -> bool:
    return garside_nf(a) == garside_nf(b)


def word(letters: Iterable[int], n: int) -> BraidWord:
    return BraidWord(tuple(letters), n)


def build_Dk_word(k: int, n: int) -> BraidWord:
    """D_k = g_{k-1} ... g_2 g_1^2 g_2 ... g_{k-1}."""
    if not 2 <= k <= n:
        raise BraidError(f"D_{k} needs 2 <= k <= n={n}")
    return word(list(range(k - 1, 1, -1)) + [1, 1] + list(range(2, k)), n)


def build_gij_word(i: int, j: int, n: int) -> BraidWord:
    """g_ij = (g_{j-1} ... g_{i+1}) g_i^2 (g_{j-1} ... g_{i+1})^-1."""
    if not 1 <= i < j <= n:
        raise BraidError(f"g_{i}{j} needs 1 <= i < j <= n={n}")
    conj = list(range(j - 1, i, -1))
    return word(conj + [i, i] + [-a for a in reversed(conj)], n)


def gij_product(pairs: Sequence[tuple[int, int]], n: int) -> BraidWord:
    out = word((), n)
    for i, j in pairs:
        out = out * build_gij_word(i, j, n)
    return out


def pi_w_word(n: int) -> BraidWord:
    return word(range(n - 1, 0, -1), n)


def pi_Ykstar_word(k: int, n: int) -> BraidWord:
    """g_k^-1 ... g_{n-1}^-1 pi(w) g_1 ... g_{k-1}."""
    if not 1 <= k <= n:
        raise BraidError(f"Y*_{k} needs 1 <= k <= n={n}")
    return word([-a for a in range(k, n)], n) * pi_w_word(n) * word(range(1, k), n)


def pure_relation_instances(n: int) -> list[tuple[str, list[tuple[int, int]], list[tuple[int, int]]]]:
    """Every instance of the pure braid relations as (family, lhs, rhs)."""
    out = []
    pairs = list(combinations(range(1, n + 1), 2))
    for a, b in combinations(pairs, 2):
        if len(set(a) | set(b)) == 4:
            out.append(("commute", [a, b], [b, a]))
    for i, j, k in combinations(range(1, n + 1), 3):
        lhs = [(i, j), (i, k), (j, k)]
        out.append(("triple", lhs, [(i, k), (j, k), (i, j)]))
        out.append(("triple", lhs, [(j, k), (i, j), (i, k)]))
    for i, j, k, l in combinations(range(1, n + 1), 4):
        out.append(("quadruple", [(i, k), (j, k), (j, l), (i, j)], [(j, k), (j, l), (i, j), (i, k)]))
    return out


@dataclass
class RelationResult:
    family: str
    lhs: list[tuple[int, int]]
    rhs: list[tuple[int, int]]
    holds: bool

    def label(self) -> str:
        f = lambda ws: "".join(f"g{i}{j}" for i, j in ws)
        return f"{self.family}: {f(self.lhs)}={f(self.rhs)}"


def verify_pure_relations(n: int) -> list[RelationResult]:
    out = []
    for fam, lhs, rhs in pure_relation_instances(n):
        ok = braid_equal(gij_product(lhs, n), gij_product(rhs, n))
        out.append(RelationResult(fam, lhs, rhs, ok))
    return out


def check_dk_product(n: int) -> list[tuple[int, bool]]:
    """D_k = g_{1k} g_{2k} ... g_{k-1,k} for 2 <= k <= n."""
    return [
        (k, braid_equal(build_Dk_word(k, n), gij_product([(i, k) for i in range(1, k)], n)))
        for k in range(2, n + 1)
    ]


def check_dk_commute(n: int) -> list[tuple[int, int, bool]]:
    D = {k: build_Dk_word(k, n) for k in range(2, n + 1)}
    return [
        (k, l, braid_equal(D[k] * D[l], D[l] * D[k]))
        for k in range(2, n + 1)
        for l in range(k + 1, n + 1)
    ]


def check_pi_ykstar(n: int) -> list[tuple[int, bool]]:
    out = []
    for k in range(1, n + 1):
        nf = garside_nf(pi_Ykstar_word(k, n))
        if k == 1:
            out.append((k, nf.is_identity))
        else:
            out.append((k, nf == garside_nf(build_Dk_word(k, n))))
    return out


def random_word(n: int, length_: int, rng: random.Random) -> BraidWord:
    return word([rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length_)], n)


def perm_word(p: Permutation, n: int) -> BraidWord:
    """Positive braid word of a permutation braid."""
    return word(reduced_word(p), n)


def nf_to_word(nf: GarsideNF) -> BraidWord:
    d = reduced_word(_delta(nf.n))
    letters: list[int] = []
    if nf.inf >= 0:
        letters = d * nf.inf
    else:
        letters = [-a for a in reversed(d)] * (-nf.inf)
    for p in nf.factors:
        letters += reduced_word(p)
    return word(letters, nf.n)


# ---------------------------------------------------------------------
# infinitesimal deformation g_ij -> 1 + eps X_ij over Q[eps]/(eps^3)


def eps_expand(pairs: Sequence[tuple[int, int]], n: int, ring=None) -> list:
    """Coefficients [c0, c1, c2] of prod (1 + eps X_ij) truncated at eps^3."""
    from .freealg import NCPoly
    from .scalars import QQ

    ring = ring or QQ
    coeffs = [NCPoly.one(n, ring), NCPoly.zero(n, ring), NCPoly.zero(n, ring)]
    for i, j in pairs:
        x = NCPoly.bracket(i, j, n, ring)
        # (c0 + c1 e + c2 e^2)(1 + x e)
        coeffs = [coeffs[0], coeffs[1] + coeffs[0] * x, coeffs[2] + coeffs[1] * x]
    return coeffs


def check_eps_deformation(n: int, rb=None) -> list[tuple[str, bool]]:
    """The eps^2 coefficient of lhs - rhs of every pure relation vanishes in B_n."""
    from .catalog import build
    from .engine import complete

    rb = rb or complete(build("Bn", n), 2)
    out = []
    for fam, lhs, rhs in pure_relation_instances(n):
        a, b = eps_expand(lhs, n), eps_expand(rhs, n)
        ok = not (a[1] - b[1]) and not rb.normal_form(a[2] - b[2])
        res = RelationResult(fam, lhs, rhs, ok)
        out.append((res.label(), ok))
    return out
