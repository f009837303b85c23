"""Iwahori–Hecke algebra of S_n in the T_w basis, over Laurent polynomials in v.

The quadratic relation is T_s^2 = (v - v^-1) T_s + 1, with v playing the
role of q^(1/2).  Permutations are tuples in one-line notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations as _perms
from typing import Mapping

from gmpy2 import mpq

from .scalars import LaurentPoly

Permutation = tuple[int, ...]

VARS = ("v",)
V = LaurentPoly.var("v")
ONE = LaurentPoly.const(1, VARS)
QUAD = V - V ** -1  # v - v^-1


class HeckeError(ValueError):
    pass


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def transposition(i: int, j: int, n: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return tuple(p)


def check_perm(p: Permutation) -> Permutation:
    p = tuple(int(a) for a in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise HeckeError(f"{p} is not a permutation")
    return p


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a*b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(a)))


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, a in enumerate(p, 1):
        out[a - 1] = i
    return tuple(out)


def length(p: Permutation) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def right_mul_s(p: Permutation, i: int) -> Permutation:
    """p * s_i: swap the entries in positions i and i+1."""
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def reduced_word(p: Permutation) -> list[int]:
    """A reduced word s_{a_1} ... s_{a_l} = p, found by peeling right descents."""
    word = []
    p = list(p)
    while True:
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]


def perm_str(p: Permutation) -> str:
    return "".join(map(str, p)) if len(p) < 10 else ",".join(map(str, p))


@dataclass(frozen=True)
class HeckeElement:
    """Finite combination sum c_w T_w with Laurent coefficients in v."""

    n: int
    terms: Mapping[Permutation, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c, VARS)
            if c:
                if len(w) != self.n:
                    raise HeckeError("permutation of the wrong rank")
                clean[tuple(w)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def T(cls, w: Permutation) -> "HeckeElement":
        w = check_perm(w)
        return cls(len(w), {w: ONE})

    @classmethod
    def Ts(cls, i: int, n: int) -> "HeckeElement":
        if not 1 <= i < n:
            raise HeckeError(f"s_{i} out of range for n={n}")
        return cls.T(transposition(i, i + 1, n))

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls.T(identity(n))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        _same(self, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.n, out)

    def __neg__(self):
        return HeckeElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.n, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return hecke_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def evaluate(self, v) -> dict[Permutation, mpq]:
        return {w: c.evaluate({"v": v}) for w, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda p: (length(p), p)):
            parts.append(f"({self.terms[w]})*T[{perm_str(w)}]")
        return " + ".join(parts)


def _same(a: HeckeElement, b: HeckeElement):
    if a.n != b.n:
        raise HeckeError(f"rank mismatch: {a.n} vs {b.n}")


def _times_s(a: dict, i: int) -> dict:
    out: dict = {}

    def acc(w, c):
        if w in out:
            s = out[w] + c
            if s:
                out[w] = s
            else:
                del out[w]
        elif c:
            out[w] = c

    for w, c in a.items():
        ws = right_mul_s(w, i)
        if w[i - 1] < w[i]:  # length goes up
            acc(ws, c)
        else:
            acc(w, c * QUAD)
            acc(ws, c)
    return out


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the T_w basis using T_w T_s = T_ws or (v - v^-1) T_w + T_ws."""
    _same(a, b)
    out: dict = {}
    for u, cu in b.terms.items():
        cur = dict(a.terms)
        for i in reduced_word(u):
            cur = _times_s(cur, i)
        for w, c in cur.items():
            s = out[w] + c * cu if w in out else c * cu
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return HeckeElement(a.n, out)


def build_Dk_hecke(k: int, n: int) -> HeckeElement:
    """D_k = g_{k-1} ... g_2 g_1^2 g_2 ... g_{k-1} in H_n(q)."""
    if not 2 <= k <= n:
        raise HeckeError(f"D_{k} needs 2 <= k <= n={n}")
    letters = list(range(k - 1, 1, -1)) + [1, 1] + list(range(2, k))
    out = HeckeElement.one(n)
    for i in letters:
        out = out * HeckeElement.Ts(i, n)
    return out


def quasiclassical_limit(h: HeckeElement) -> dict[Permutation, int]:
    """lim_{v -> 1} (h - 1)/(v - v^-1) as an element of Z[S_n].

    Each coefficient of h - T_e must vanish at v = 1; the limit of a
    coefficient c is c'(1)/2 by L'Hopital, since (v - v^-1)' = 2 at v = 1.
    """
    e = identity(h.n)
    out = {}
    terms = dict(h.terms)
    terms[e] = terms.get(e, LaurentPoly.const(0, VARS)) - ONE
    for w, c in terms.items():
        if not c:
            continue
        if c.evaluate({"v": 1}) != 0:
            raise HeckeError(f"coefficient of T[{perm_str(w)}] does not vanish at v=1")
        lim = c.derivative("v").evaluate({"v": 1}) / 2
        if lim.denominator != 1:
            raise HeckeError(f"non-integral limit {lim} at T[{perm_str(w)}]")
        if lim:
            out[w] = int(lim)
    return out


def jucys_murphy_group_ring(k: int, n: int) -> dict[Permutation, int]:
    """p(d_k) = sum_{i<k} (i,k) in Z[S_n]."""
    return {transposition(i, k, n): 1 for i in range(1, k)}


def group_ring_mul(a: Mapping[Permutation, int], b: Mapping[Permutation, int]) -> dict[Permutation, int]:
    out: dict = {}
    for u, x in a.items():
        for w, y in b.items():
            p = compose(u, w)
            out[p] = out.get(p, 0) + x * y
    return {p: c for p, c in out.items() if c}


def specialize_one(h: HeckeElement) -> dict[Permutation, int]:
    out = {}
    for w, c in h.terms.items():
        val = c.evaluate({"v": 1})
        if val:
            out[w] = int(val)
    return out


def all_perms(n: int) -> list[Permutation]:
    return list(_perms(range(1, n + 1)))


def check_hecke_limit(n: int) -> list[tuple[int, bool, str]]:
    """Compare quasiclassical_limit(D_k) with p(d_k) for 2 <= k <= n."""
    out = []
    for k in range(2, n + 1):
        lim = quasiclassical_limit(build_Dk_hecke(k, n))
        want = jucys_murphy_group_ring(k, n)
        detail = " + ".join(f"{c}*({perm_str(w)})" for w, c in sorted(lim.items()))
        out.append((k, lim == want, detail))
    return out


def check_dk_commute_hecke(n: int) -> list[tuple[int, int, bool]]:
    Ds = {k: build_Dk_hecke(k, n) for k in range(2, n + 1)}
    out = []
    for k in range(2, n + 1):
        for l in range(k + 1, n + 1):
            out.append((k, l, Ds[k] * Ds[l] == Ds[l] * Ds[k]))
    return out
