"""Operators on polynomials: Hecke operators, the shift w, Dunkl–Cherednik
operators and classical Dunkl operators, with equality checks on graded slices.

Polynomials in x_1..x_n carry Laurent coefficients in (q, t), or in beta for
the classical operators.  Every division by a binomial is exact and checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Mapping, Sequence

from .scalars import InexactDivision, LaurentPoly

QT = ("q", "t")
BETA = ("beta",)


class OperatorError(ValueError):
    pass


# ---------------------------------------------------------------------
# polynomials


class XPoly:
    """Polynomial in x_1..x_n with Laurent coefficients over ``cvars``."""

    __slots__ = ("n", "cvars", "terms")

    def __init__(self, n: int, cvars: tuple[str, ...], terms: Mapping[tuple[int, ...], LaurentPoly] | None = None):
        self.n = n
        self.cvars = cvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, LaurentPoly):
                    c = LaurentPoly.const(c, cvars)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exps: Sequence[int], cvars, coeff=1) -> "XPoly":
        return cls(len(exps), cvars, {tuple(exps): coeff})

    @classmethod
    def x(cls, i: int, n: int, cvars) -> "XPoly":
        e = [0] * n
        e[i - 1] = 1
        return cls(n, cvars, {tuple(e): 1})

    @classmethod
    def const(cls, c, n: int, cvars) -> "XPoly":
        return cls(n, cvars, {(0,) * n: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def _acc(self, out, e, c):
        if e in out:
            s = out[e] + c
            if s:
                out[e] = s
            else:
                del out[e]
        elif c:
            out[e] = c

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            self._acc(out, e, c)
        return XPoly(self.n, self.cvars, out)

    def __neg__(self):
        return XPoly(self.n, self.cvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "XPoly":
        return XPoly(self.n, self.cvars, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other: "XPoly") -> "XPoly":
        if not isinstance(other, XPoly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                self._acc(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return XPoly(self.n, self.cvars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def substitute(self, images: Sequence[tuple[int, LaurentPoly]]) -> "XPoly":
        """x_i -> images[i-1][1] * x_{images[i-1][0]} (a monomial substitution)."""
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * self.n
            coef = c
            for i, k in enumerate(e):
                if k:
                    tgt, m = images[i]
                    new[tgt - 1] += k
                    if m is not None:
                        coef = coef * m ** k
            self._acc(out, tuple(new), coef)
        return XPoly(self.n, self.cvars, out)

    def div_binomial(self, a: int, b: int, c: LaurentPoly | None = None) -> "XPoly":
        """Exact quotient by (x_a - c x_b); raises InexactDivision otherwise.

        Synthetic division in x_a: writing f = sum_k F_k x_a^k, the quotient
        coefficients satisfy G_{k-1} = F_k + c x_b G_k and the remainder
        F_0 + c x_b G_0 must vanish.
        """
        ia, ib = a - 1, b - 1
        one = LaurentPoly.const(1, self.cvars)
        c = one if c is None else c
        groups: dict[int, dict] = {}
        for e, coef in self.terms.items():
            k = e[ia]
            rest = list(e)
            rest[ia] = 0
            groups.setdefault(k, {})[tuple(rest)] = coef
        if not groups:
            return self
        top = max(groups)
        quotient: dict = {}
        carry: dict = {}  # c x_b G_k
        for k in range(top, 0, -1):
            gk: dict = dict(groups.get(k, {}))
            for e, v in carry.items():
                self._acc(gk, e, v)
            # G_{k-1} = gk
            for e, v in gk.items():
                ee = list(e)
                ee[ia] = k - 1
                quotient[tuple(ee)] = v
            carry = {}
            for e, v in gk.items():
                ee = list(e)
                ee[ib] += 1
                carry[tuple(ee)] = v * c
        rem: dict = dict(groups.get(0, {}))
        for e, v in carry.items():
            self._acc(rem, e, v)
        if rem:
            raise InexactDivision(f"remainder in division by x_{a} - c*x_{b}")
        return XPoly(self.n, self.cvars, quotient)

    def map_coeffs(self, fn: Callable[[LaurentPoly], LaurentPoly], cvars=None) -> "XPoly":
        return XPoly(self.n, cvars or self.cvars, {e: fn(c) for e, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-a for a in e))):
            mono = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            c = self.terms[e]
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def monomials_up_to(n: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(n), k):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


# ---------------------------------------------------------------------
# operators


class Op:
    """Linear operator on XPoly; subclasses implement ``_mono``.

    ``shift`` bounds the change of total degree (None when unbounded).
    """

    shift: int = 0

    def __init__(self, n: int, cvars: tuple[str, ...]):
        self.n = n
        self.cvars = cvars
        self._cache: dict = {}

    def _mono(self, e: tuple[int, ...]) -> XPoly:
        raise NotImplementedError

    def apply(self, f: XPoly) -> XPoly:
        if f.cvars != self.cvars or f.n != self.n:
            raise OperatorError("polynomial and operator live over different rings")
        out: dict = {}
        for e, c in f.terms.items():
            img = self._cache.get(e)
            if img is None:
                img = self._mono(e)
                self._cache[e] = img
            for e2, c2 in img.terms.items():
                v = c * c2
                if e2 in out:
                    s = out[e2] + v
                    if s:
                        out[e2] = s
                    else:
                        del out[e2]
                elif v:
                    out[e2] = v
        return XPoly(self.n, self.cvars, out)

    __call__ = apply

    def __mul__(self, other: "Op") -> "Op":
        if isinstance(other, Op):
            return Compose([self, other])
        return Scale(_coef(other, self.cvars), self)

    def __rmul__(self, other):
        return Scale(_coef(other, self.cvars), self)

    def __add__(self, other: "Op") -> "Op":
        return Sum([self, other])

    def __sub__(self, other: "Op") -> "Op":
        return Sum([self, Scale(LaurentPoly.const(-1, self.cvars), other)])

    def __neg__(self):
        return Scale(LaurentPoly.const(-1, self.cvars), self)


def _coef(c, cvars) -> LaurentPoly:
    if isinstance(c, LaurentPoly):
        return c
    return LaurentPoly.const(c, cvars)


class Identity(Op):
    name = "Id"

    def _mono(self, e):
        return XPoly.monomial(e, self.cvars)


class MulBy(Op):
    def __init__(self, p: XPoly):
        super().__init__(p.n, p.cvars)
        self.p = p
        self.shift = max(p.degree(), 0)

    def _mono(self, e):
        return self.p * XPoly.monomial(e, self.cvars)


class Subst(Op):
    """Monomial substitution x_i -> m_i x_{sigma(i)}."""

    def __init__(self, n, cvars, images, label=""):
        super().__init__(n, cvars)
        self.images = images
        self.label = label

    def _mono(self, e):
        return XPoly.monomial(e, self.cvars).substitute(self.images)


class Compose(Op):
    """Composition; the rightmost operator acts first."""

    def __init__(self, ops: Sequence[Op]):
        flat: list[Op] = []
        for o in ops:
            flat.extend(o.ops if isinstance(o, Compose) else [o])
        super().__init__(flat[0].n, flat[0].cvars)
        self.ops = flat
        self.shift = sum(o.shift for o in flat) if all(o.shift is not None for o in flat) else None

    def _mono(self, e):
        f = XPoly.monomial(e, self.cvars)
        for o in reversed(self.ops):
            f = o.apply(f)
        return f


class Sum(Op):
    def __init__(self, ops: Sequence[Op]):
        super().__init__(ops[0].n, ops[0].cvars)
        self.ops = list(ops)
        shifts = [o.shift for o in ops]
        self.shift = None if None in shifts else max(shifts)

    def _mono(self, e):
        f = XPoly.monomial(e, self.cvars)
        out = XPoly(self.n, self.cvars)
        for o in self.ops:
            out = out + o.apply(f)
        return out


class Scale(Op):
    def __init__(self, c: LaurentPoly, op: Op):
        super().__init__(op.n, op.cvars)
        self.c = c
        self.op = op
        self.shift = op.shift

    def _mono(self, e):
        return self.op.apply(XPoly.monomial(e, self.cvars)).scale(self.c)


class HeckeT(Op):
    """f -> t f + (x_b - t m x_a')/(x_b - m x_a') * (s f - f).

    For T_i (1 <= i < n): s = s_i, x_b = x_{i+1}, m x_a' = x_i.
    For T_0: s = s_0, x_b = x_1, m x_a' = q x_n.
    For T_ij: s = s_ij, x_b = x_j, m x_a' = x_i.
    """

    def __init__(self, n, cvars, s: Subst, b: int, a: int, m: LaurentPoly, label: str):
        super().__init__(n, cvars)
        self.s, self.b, self.a, self.m, self.label = s, b, a, m, label
        self.t = LaurentPoly.var("t", cvars)

    def _mono(self, e):
        f = XPoly.monomial(e, self.cvars)
        diff = self.s.apply(f) - f
        quo = diff.div_binomial(self.b, self.a, self.m)
        num = XPoly.x(self.b, self.n, self.cvars) - XPoly.x(self.a, self.n, self.cvars).scale(self.t * self.m)
        return f.scale(self.t) + num * quo


class DividedDifference(Op):
    """f -> (f - s_ij f)/(x_i - x_j)."""

    shift = -1

    def __init__(self, n, cvars, i, j):
        super().__init__(n, cvars)
        self.i, self.j = i, j
        self.s = transposition_op(i, j, n, cvars)

    def _mono(self, e):
        f = XPoly.monomial(e, self.cvars)
        return (f - self.s.apply(f)).div_binomial(self.i, self.j)


class Euler(Op):
    """f -> x_j df/dx_j."""

    def __init__(self, n, cvars, j):
        super().__init__(n, cvars)
        self.j = j

    def _mono(self, e):
        return XPoly.monomial(e, self.cvars, e[self.j - 1])


class TBar(Op):
    """f -> f + (1 - t^-1) x_j (f - s_ij f)/(x_i - x_j)."""

    def __init__(self, n, cvars, i, j):
        super().__init__(n, cvars)
        self.i, self.j = i, j
        self.s = transposition_op(i, j, n, cvars)
        t = LaurentPoly.var("t", cvars)
        self.c = 1 - t ** -1

    def _mono(self, e):
        f = XPoly.monomial(e, self.cvars)
        dd = (f - self.s.apply(f)).div_binomial(self.i, self.j)
        return f + (XPoly.x(self.j, self.n, self.cvars) * dd).scale(self.c)


# ---------------------------------------------------------------------
# builders


def _check_rank(n):
    if n < 2:
        raise OperatorError("operators need n >= 2")


def _q(cvars):
    return LaurentPoly.var("q", cvars)


def _t(cvars):
    return LaurentPoly.var("t", cvars)


def transposition_op(i: int, j: int, n: int, cvars=QT) -> Subst:
    images = [(k, None) for k in range(1, n + 1)]
    images[i - 1] = (j, None)
    images[j - 1] = (i, None)
    return Subst(n, cvars, images, f"s({i},{j})")


def s_op(i: int, n: int, cvars=QT) -> Subst:
    if i == 0:
        return s0_op(n, cvars)
    if not 1 <= i < n:
        raise OperatorError(f"s_{i} out of range")
    return transposition_op(i, i + 1, n, cvars)


def s0_op(n: int, cvars=QT) -> Subst:
    """s_0 = w s_1 w^-1: f(x) -> f(q x_n, x_2, ..., x_{n-1}, q^-1 x_1)."""
    q = _q(cvars)
    images = [(k, None) for k in range(1, n + 1)]
    images[0] = (n, q)
    images[n - 1] = (1, q ** -1)
    return Subst(n, cvars, images, "s0")


def tau_op(i: int, n: int, cvars=QT) -> Subst:
    """q-shift in x_i."""
    images = [(k, None) for k in range(1, n + 1)]
    images[i - 1] = (i, _q(cvars))
    return Subst(n, cvars, images, f"tau({i})")


def w_op(n: int, cvars=QT) -> Subst:
    """w = s_{n-1} ... s_1 tau_1: f(x) -> f(q x_n, x_1, ..., x_{n-1})."""
    images = [(n, _q(cvars))] + [(k - 1, None) for k in range(2, n + 1)]
    return Subst(n, cvars, images, "w")


def w_inv_op(n: int, cvars=QT) -> Subst:
    images = [(k + 1, None) for k in range(1, n)] + [(1, _q(cvars) ** -1)]
    return Subst(n, cvars, images, "winv")


def w_composed(n: int, cvars=QT) -> Op:
    """The literal composition s_{n-1} ... s_1 tau_1."""
    return Compose([s_op(i, n, cvars) for i in range(n - 1, 0, -1)] + [tau_op(1, n, cvars)])


def build_T(i: int, n: int, cvars=QT) -> HeckeT:
    _check_rank(n)
    one = LaurentPoly.const(1, cvars)
    if i == 0:
        return HeckeT(n, cvars, s0_op(n, cvars), 1, n, _q(cvars), "T0")
    if not 1 <= i < n:
        raise OperatorError(f"T_{i} out of range for n={n}")
    return HeckeT(n, cvars, s_op(i, n, cvars), i + 1, i, one, f"T{i}")


def build_Tij(i: int, j: int, n: int, cvars=QT) -> HeckeT:
    one = LaurentPoly.const(1, cvars)
    return HeckeT(n, cvars, transposition_op(i, j, n, cvars), j, i, one, f"T({i},{j})")


def build_T_inverse(i: int, n: int, cvars=QT) -> Op:
    """T^-1 = t^-1 (T - (t - 1)), from T^2 = (t-1)T + t."""
    t = _t(cvars)
    T = build_T(i, n, cvars)
    return Scale(t ** -1, Sum([T, Scale(1 - t, Identity(n, cvars))]))


def build_Tbar(i: int, j: int, n: int, cvars=QT) -> Op:
    return TBar(n, cvars, i, j)


def build_Tbar_inverse(i: int, j: int, n: int, cvars=QT) -> Op:
    """Inverse of t^-1 T_ij s_ij, namely s_ij (T_ij - (t - 1))."""
    t = _t(cvars)
    inner = Sum([build_Tij(i, j, n, cvars), Scale(1 - t, Identity(n, cvars))])
    return Compose([transposition_op(i, j, n, cvars), inner])


def build_Y_element(k: int, n: int, cvars=QT) -> Op:
    """T_k ... T_{n-1} w T_1^-1 ... T_{k-1}^-1 (no t-power prefactor)."""
    if not 1 <= k <= n:
        raise OperatorError(f"Y_{k} out of range for n={n}")
    ops = [build_T(i, n, cvars) for i in range(k, n)] + [w_op(n, cvars)]
    ops += [build_T_inverse(i, n, cvars) for i in range(1, k)]
    return Compose(ops)


def build_Ystar_element(k: int, n: int, cvars=QT) -> Op:
    """T_k^-1 ... T_{n-1}^-1 w T_1 ... T_{k-1} (no t-power prefactor)."""
    if not 1 <= k <= n:
        raise OperatorError(f"Y*_{k} out of range for n={n}")
    ops = [build_T_inverse(i, n, cvars) for i in range(k, n)] + [w_op(n, cvars)]
    ops += [build_T(i, n, cvars) for i in range(1, k)]
    return Compose(ops)


def build_Yk(k: int, n: int, cvars=QT) -> Op:
    """Dunkl–Cherednik operator t^(-n+2k-1) T_k ... T_{n-1} w T_1^-1 ... T_{k-1}^-1."""
    return Scale(_t(cvars) ** (-n + 2 * k - 1), build_Y_element(k, n, cvars))


def build_Ykstar(k: int, n: int, cvars=QT) -> Op:
    return Scale(_t(cvars) ** (n - 2 * k + 1), build_Ystar_element(k, n, cvars))


def build_Yi_product_form(i: int, n: int, cvars=QT) -> Op:
    """Tbar_{i,i+1} ... Tbar_{i,n} tau_i Tbar_{1,i}^-1 ... Tbar_{i-1,i}^-1."""
    if not 1 <= i <= n:
        raise OperatorError(f"Y_{i} out of range for n={n}")
    ops: list[Op] = [build_Tbar(i, j, n, cvars) for j in range(i + 1, n + 1)]
    ops.append(tau_op(i, n, cvars))
    ops += [build_Tbar_inverse(j, i, n, cvars) for j in range(1, i)]
    return Compose(ops)


def build_classical_Dj(j: int, n: int, cvars=BETA, reading: str = "composed", sign: int = 1) -> Op:
    """x_j d/dx_j + beta sum_{i<j} x_j dd_ij - beta sum_{k>j} dd_jk x_k.

    ``reading="composed"`` applies dd_jk to x_k f; ``reading="multiplied"``
    multiplies dd_jk f by x_k instead.  ``sign=-1`` replaces beta by -beta.
    """
    if not 1 <= j <= n:
        raise OperatorError(f"D_{j} out of range for n={n}")
    if reading not in ("composed", "multiplied"):
        raise OperatorError(f"unknown reading {reading!r}")
    beta = LaurentPoly.var("beta", cvars) * sign
    parts: list[Op] = [Euler(n, cvars, j)]
    xj = MulBy(XPoly.x(j, n, cvars))
    for i in range(1, j):
        parts.append(Scale(beta, Compose([xj, DividedDifference(n, cvars, i, j)])))
    for k in range(j + 1, n + 1):
        xk = MulBy(XPoly.x(k, n, cvars))
        dd = DividedDifference(n, cvars, j, k)
        pair = [dd, xk] if reading == "composed" else [xk, dd]
        parts.append(Scale(-beta, Compose(pair)))
    return Sum(parts)


# ---------------------------------------------------------------------
# slice equality


@dataclass
class SliceResult:
    equal: bool
    degree: int
    checked: int
    witness: tuple[int, ...] | None = None
    lhs: XPoly | None = None
    rhs: XPoly | None = None

    def __bool__(self):
        return self.equal

    def witness_str(self) -> str:
        return "" if self.witness is None else mono_str(self.witness)


def op_equal_on_slice(a: Op, b: Op, d: int) -> SliceResult:
    """Compare two operators on every monomial of degree <= d.

    Agreement on this finite set certifies agreement on all polynomials of
    degree <= d by linearity, and nothing beyond.
    """
    if a.n != b.n or a.cvars != b.cvars:
        raise OperatorError("operators act on different rings")
    if a.shift is None or b.shift is None:
        raise OperatorError("degree shift cannot be bounded")
    if a.shift > 0 or b.shift > 0:
        raise OperatorError("operators raise the degree; slice check would not be closed")
    monos = monomials_up_to(a.n, d)
    for e in monos:
        f = XPoly.monomial(e, a.cvars)
        fa, fb = a.apply(f), b.apply(f)
        if fa != fb:
            return SliceResult(False, d, len(monos), e, fa, fb)
    return SliceResult(True, d, len(monos))


def mono_str(e: tuple[int, ...]) -> str:
    s = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
    return s or "1"


def commute_on_slice(a: Op, b: Op, d: int) -> SliceResult:
    return op_equal_on_slice(Compose([a, b]), Compose([b, a]), d)


# ---------------------------------------------------------------------
# relation suites


@dataclass
class OpReport:
    name: str
    n: int
    d: int
    items: list[tuple[str, SliceResult]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.items) and all(r.equal for _, r in self.items)

    def add(self, label: str, res: SliceResult):
        self.items.append((label, res))


def check_affine_hecke_relations(n: int, d: int, cvars=QT) -> OpReport:
    """Relations of the extended affine Hecke algebra on the degree <= d slice."""
    if n < 3:
        raise OperatorError("affine relation suite needs n >= 3")
    rep = OpReport("affine-hecke", n, d)
    t = _t(cvars)
    one = Identity(n, cvars)
    T = {i: build_T(i, n, cvars) for i in range(n)}
    w = w_op(n, cvars)
    rep.add("w = s_{n-1}...s_1 tau_1", op_equal_on_slice(w, w_composed(n, cvars), d))
    for i in range(n):
        rep.add(f"T{i}^2=(t-1)T{i}+t", op_equal_on_slice(T[i] * T[i], Sum([Scale(t - 1, T[i]), Scale(t, one)]), d))
    for i in range(n):
        j = (i + 1) % n
        rep.add(f"T{i}T{j}T{i}=T{j}T{i}T{j}", op_equal_on_slice(T[i] * T[j] * T[i], T[j] * T[i] * T[j], d))
    for i in range(n):
        for j in range(i + 1, n):
            if (j - i) % n in (1, n - 1):
                continue
            rep.add(f"T{i}T{j}=T{j}T{i}", commute_on_slice(T[i], T[j], d))
    for i in range(n):
        rep.add(f"wT{i}=T{(i - 1) % n}w", op_equal_on_slice(w * T[i], T[(i - 1) % n] * w, d))
    Y = {k: build_Y_element(k, n, cvars) for k in range(1, n + 1)}
    Ys = {k: build_Ystar_element(k, n, cvars) for k in range(1, n + 1)}
    for i in range(1, n):
        rep.add(f"T{i}Y{i+1}T{i}=Y{i}", op_equal_on_slice(T[i] * Y[i + 1] * T[i], Y[i], d))
        rep.add(f"T{i}Y*{i}T{i}=Y*{i+1}", op_equal_on_slice(T[i] * Ys[i] * T[i], Ys[i + 1], d))
        for j in range(1, n + 1):
            if j in (i, i + 1):
                continue
            rep.add(f"T{i}Y{j}=Y{j}T{i}", commute_on_slice(T[i], Y[j], d))
            rep.add(f"T{i}Y*{j}=Y*{j}T{i}", commute_on_slice(T[i], Ys[j], d))
    return rep


def check_Y_commute(n: int, d: int, dual: bool = False) -> OpReport:
    rep = OpReport("Ystar-commute" if dual else "Y-commute", n, d)
    build = build_Ykstar if dual else build_Yk
    Y = {k: build(k, n) for k in range(1, n + 1)}
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            rep.add(f"[Y{k},Y{l}]", commute_on_slice(Y[k], Y[l], d))
    return rep


def check_classical_commute(n: int, d: int, reading: str = "composed") -> OpReport:
    rep = OpReport(f"classical-dunkl-commute[{reading}]", n, d)
    D = {j: build_classical_Dj(j, n, reading=reading) for j in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rep.add(f"[D{i},D{j}]", commute_on_slice(D[i], D[j], d))
    return rep


def measure_product_form_power(i: int, n: int, d: int) -> tuple[int | None, SliceResult | None]:
    """Find c with Y_i = t^c * (product form) on the degree <= d slice.

    The exponent is read off the action on the constant 1 and then checked
    on the whole slice.  Returns (None, None) if no single power works.
    """
    Y = build_Yk(i, n)
    P = build_Yi_product_form(i, n)
    one = XPoly.const(1, n, QT)
    y1, p1 = Y.apply(one), P.apply(one)
    if not y1 or not p1 or len(y1.terms) != 1 or len(p1.terms) != 1:
        return None, None
    (e1, c1), = y1.terms.items()
    (e2, c2), = p1.terms.items()
    if e1 != e2:
        return None, None
    try:
        ratio = c1.div_exact(c2)
    except InexactDivision:
        return None, None
    if not ratio.is_monomial():
        return None, None
    (exps, coeff), = ratio.terms.items()
    if coeff != 1 or exps[0] != 0:
        return None, None
    c = exps[1]
    res = op_equal_on_slice(Y, Scale(_t(QT) ** c, P), d)
    return (c if res.equal else None), res


def first_order_at_one(c: LaurentPoly) -> LaurentPoly:
    """d/dq c(q, 1 + beta (q - 1)) at q = 1, as a polynomial in beta."""
    beta = LaurentPoly.var("beta", BETA)
    dq = c.derivative("q").evaluate({"q": 1, "t": 1})
    dt = c.derivative("t").evaluate({"q": 1, "t": 1})
    return LaurentPoly.const(dq, BETA) + beta * dt


def classical_limit_of(op: Op, e: tuple[int, ...]) -> tuple[XPoly, XPoly]:
    """(value at q=t=1, first-order coefficient) of op applied to x^e."""
    g = op.apply(XPoly.monomial(e, QT))
    zero = XPoly(g.n, BETA, {k: LaurentPoly.const(c.evaluate({"q": 1, "t": 1}), BETA) for k, c in g.terms.items()})
    first = XPoly(g.n, BETA, {k: first_order_at_one(c) for k, c in g.terms.items()})
    return zero, first


def check_classical_limit(n: int, d: int = 3, form: str = "Yk", reading: str = "composed", sign: int = 1) -> OpReport:
    """lim (1 - Y_j)/(1 - q) with t = 1 + beta (q - 1) versus the classical D_j.

    Since Y_j f -> f at q = t = 1, the limit equals the first-order coefficient
    of Y_j f.  ``form`` selects the operator: ``Yk`` or ``product``.
    """
    rep = OpReport(f"classical-limit[{form},{reading},{'+' if sign > 0 else '-'}beta]", n, d)
    for j in range(1, n + 1):
        Y = build_Yk(j, n) if form == "Yk" else build_Yi_product_form(j, n)
        D = build_classical_Dj(j, n, reading=reading, sign=sign)
        ok, witness = True, None
        lhs = rhs = None
        monos = monomials_up_to(n, d)
        for e in monos:
            zero, first = classical_limit_of(Y, e)
            target = D.apply(XPoly.monomial(e, BETA))
            if zero != XPoly.monomial(e, BETA) or first != target:
                ok, witness, lhs, rhs = False, e, first, target
                break
        rep.add(f"D{j}", SliceResult(ok, d, len(monos), witness, lhs, rhs))
    return rep


# ---------------------------------------------------------------------
# parsing operator expressions


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*()^,]))")

_ARITY = {
    "T": 1, "Tinv": 1, "Y": 1, "Ystar": 1, "Yp": 1, "Yel": 1, "Ystarel": 1,
    "Dcl": 1, "x": 1, "tau": 1, "E": 1, "s": 2, "dd": 2, "Tbar": 2, "Tbarinv": 2, "Tij": 2,
}


def parse_operator(text: str, n: int, cvars: tuple[str, ...] | None = None) -> Op:
    """Parse ``T(1) * T(2) * w``, ``Y(2)``, ``Dcl(3)``, ``x(1)``, ``s(1,3)``,
    ``dd(1,2)`` and friends; ``+``, ``-``, ``*`` and integer or parameter
    scalars (q, t, beta) are allowed.  Products are compositions."""
    if cvars is None:
        cvars = BETA if re.search(r"Dcl|beta", text) else QT
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise OperatorError(f"unexpected character at column {pos + 1}: {text[pos:pos+10]!r}")
        toks.append((m.lastgroup, m.group(m.lastgroup), pos + 1))
        pos = m.end()
    p = _Parser(toks, n, cvars)
    op = p.expr()
    if p.i != len(toks):
        raise OperatorError(f"trailing input at column {toks[p.i][2]}")
    return op


class _Parser:
    def __init__(self, toks, n, cvars):
        self.toks, self.i, self.n, self.cvars = toks, 0, n, cvars

    def peek(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self, want=None):
        if self.i >= len(self.toks):
            raise OperatorError("unexpected end of expression")
        kind, val, col = self.toks[self.i]
        if want is not None and val != want:
            raise OperatorError(f"expected {want!r} at column {col}")
        self.i += 1
        return kind, val, col

    def expr(self):
        sign = 1
        if self.peek() in "+-" if self.peek() else False:
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek() in ("+", "-"):
            s = self.take()[1]
            t = self.term()
            out = out + t if s == "+" else out - t
        return out

    def term(self):
        items = [self.factor()]
        while self.peek() == "*" or (self.peek() not in (None, "+", "-", ")", ",")):
            if self.peek() == "*":
                self.take()
            items.append(self.factor())
        scal = LaurentPoly.const(1, self.cvars)
        ops = []
        for it in items:
            if isinstance(it, LaurentPoly):
                scal = scal * it
            else:
                ops.append(it)
        if not ops:
            return Scale(scal, Identity(self.n, self.cvars))
        op = ops[0] if len(ops) == 1 else Compose(ops)
        return op if scal == 1 else Scale(scal, op)

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            _, k, col = self.take()
            k = int(k)
            if isinstance(base, LaurentPoly):
                return base ** k
            if k < 0:
                raise OperatorError(f"negative operator power at column {col}")
            if k == 0:
                return Identity(self.n, self.cvars)
            return Compose([base] * k)
        return base

    def atom(self):
        kind, val, col = self.take()
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if kind == "num":
            return LaurentPoly.const(int(val), self.cvars)
        if kind != "name":
            raise OperatorError(f"unexpected {val!r} at column {col}")
        if val in self.cvars:
            return LaurentPoly.var(val, self.cvars)
        if val in ("w", "winv", "Id", "wc"):
            return {"w": w_op, "winv": w_inv_op, "wc": w_composed}.get(val, lambda n, c: Identity(n, c))(self.n, self.cvars)
        if val in _ARITY:
            self.take("(")
            args = [int(self.take()[1])]
            for _ in range(_ARITY[val] - 1):
                self.take(",")
                args.append(int(self.take()[1]))
            self.take(")")
            return self.build(val, args, col)
        raise OperatorError(f"unknown operator {val!r} at column {col}")

    def build(self, name, a, col):
        n, cv = self.n, self.cvars
        try:
            if name == "x":
                return MulBy(XPoly.x(a[0], n, cv))
            if name == "s":
                return transposition_op(a[0], a[1], n, cv) if a[0] else s0_op(n, cv)
            if name == "dd":
                return DividedDifference(n, cv, *a)
            if name == "E":
                return Euler(n, cv, a[0])
            if name == "Dcl":
                return build_classical_Dj(a[0], n, cv)
            if name == "tau":
                return tau_op(a[0], n, cv)
            fn = {
                "T": build_T, "Tinv": build_T_inverse, "Y": build_Yk, "Ystar": build_Ykstar,
                "Yp": build_Yi_product_form, "Yel": build_Y_element, "Ystarel": build_Ystar_element,
                "Tbar": build_Tbar, "Tbarinv": build_Tbar_inverse, "Tij": build_Tij,
            }[name]
            return fn(*a, n, cv)
        except (OperatorError, IndexError, ValueError) as exc:
            raise OperatorError(f"{name}{tuple(a)} at column {col}: {exc}") from exc
