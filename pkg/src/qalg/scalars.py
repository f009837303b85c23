"""Exact coefficient tower: rationals, prime fields, Laurent polynomials in
named parameters, and rational functions over them.

Rationals are ``gmpy2.mpq`` values throughout.  Laurent polynomials are
immutable dictionaries from integer exponent tuples to rationals; the
variable tuple is part of the ring, so arithmetic between polynomials over
different variable tuples is an error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

DEFAULT_PRIMES = (2147483629, 2147483587, 2147483579)


class ScalarError(ValueError):
    pass


class RingMismatch(ScalarError):
    pass


class InexactDivision(ScalarError):
    pass


def to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _is_param_name(name: str) -> bool:
    return re.fullmatch(r"q|v|t|beta|eps|t_\d+|x\d+|[A-Za-z]\w*", name) is not None


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients.

    >>> v = LaurentPoly.var("v")
    >>> (v - v**-1) * v
    v^2 - 1
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[tuple[int, ...], object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            nv = len(self.vars)
            for e, c in terms.items():
                c = to_mpq(c)
                if c:
                    if len(e) != nv:
                        raise RingMismatch("exponent length does not match variables")
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def var(cls, name: str, vars: tuple[str, ...] | None = None) -> "LaurentPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise ScalarError(f"{name} not among {vars}")
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: 1})

    @classmethod
    def const(cls, c, vars: tuple[str, ...] = ()) -> "LaurentPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars, exps, c=1) -> "LaurentPoly":
        return cls(vars, {tuple(exps): c})

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                if not other.terms or other.is_constant():
                    return LaurentPoly.const(other.constant_value(), self.vars)
                raise RingMismatch(f"ring {other.vars} vs {self.vars}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return LaurentPoly.const(other, self.vars)
        return NotImplemented

    # -- predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        z = (0,) * len(self.vars)
        return all(e == z for e in self.terms)

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ScalarError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), mpq(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return all(min(e, default=0) >= 0 for e in self.terms)

    def occurring_vars(self) -> set[str]:
        out = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    out.add(v)
        return out

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RatFunc) else NotImplemented
        if o is NotImplemented:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise InexactDivision(f"cannot invert non-monomial {self}")
            (e, c), = self.terms.items()
            return LaurentPoly(self.vars, {tuple(-a * -k for a in e): mpq(1) / c ** -k})
        out = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.div_exact(o)

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises :class:`InexactDivision` on a remainder."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return self
        if other.is_monomial():
            (e, c), = other.terms.items()
            return LaurentPoly(
                self.vars,
                {tuple(a - b for a, b in zip(k, e)): v / c for k, v in self.terms.items()},
            )
        nv = len(self.vars)
        sa = [min(e[i] for e in self.terms) for i in range(nv)]
        sb = [min(e[i] for e in other.terms) for i in range(nv)]
        a = {tuple(x - s for x, s in zip(e, sa)): c for e, c in self.terms.items()}
        b = {tuple(x - s for x, s in zip(e, sb)): c for e, c in other.terms.items()}
        lb = max(b)
        lcb = b[lb]
        quot: dict = {}
        while a:
            la = max(a)
            m = tuple(x - y for x, y in zip(la, lb))
            if min(m) < 0:
                raise InexactDivision(f"{self} is not divisible by {other}")
            c = a[la] / lcb
            quot[m] = c
            for e, cb in b.items():
                k = tuple(x + y for x, y in zip(e, m))
                s = a.get(k, 0) - c * cb
                if s:
                    a[k] = s
                else:
                    a.pop(k, None)
        shift = tuple(x - y for x, y in zip(sa, sb))
        return LaurentPoly(self.vars, {tuple(x + y for x, y in zip(e, shift)): c for e, c in quot.items()})

    # -- substitution and calculus -----------------------------------
    def evaluate(self, bindings: Mapping[str, object], retain: Iterable[str] = ()):
        """Substitute values for variables.

        Every variable occurring in the polynomial must be bound or listed in
        ``retain``.  Values may be rationals or Laurent polynomials over the
        retained variables.
        """
        retain = tuple(retain)
        for name in bindings:
            if name not in self.vars:
                raise ScalarError(f"unbound symbol {name!r} is not a parameter of {self.vars}")
        missing = self.occurring_vars() - set(bindings) - set(retain)
        if missing:
            raise ScalarError(f"parameters {sorted(missing)} are neither bound nor retained")
        out_vars = tuple(v for v in self.vars if v not in bindings)
        result = LaurentPoly(out_vars)
        for e, c in self.terms.items():
            term = LaurentPoly.const(c, out_vars)
            rest = []
            for v, k in zip(self.vars, e):
                if v in bindings:
                    if k:
                        val = bindings[v]
                        if isinstance(val, LaurentPoly):
                            val = _rebase(val, out_vars)
                            term = term * val ** k
                        else:
                            val = to_mpq(val)
                            if k < 0 and val == 0:
                                raise ZeroDivisionError(f"{v}=0 in a negative power")
                            term = term * (val ** k)
                else:
                    rest.append(k)
            if rest and any(rest):
                term = term * LaurentPoly(out_vars, {tuple(rest): 1})
            result = result + term
        if not out_vars:
            return result.terms.get((), mpq(0))
        return result

    def derivative(self, name: str) -> "LaurentPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                k = list(e)
                k[i] -= 1
                out[tuple(k)] = c * e[i]
        return LaurentPoly(self.vars, out)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.vars.index(n) for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    # -- rendering ----------------------------------------------------
    def __str__(self):
        return render_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _rebase(p: LaurentPoly, vars: tuple[str, ...]) -> LaurentPoly:
    if p.vars == vars:
        return p
    out = {}
    for e, c in p.terms.items():
        k = [0] * len(vars)
        for v, x in zip(p.vars, e):
            if x:
                if v not in vars:
                    raise RingMismatch(f"{v} not in {vars}")
                k[vars.index(v)] = x
        out[tuple(k)] = c
    return LaurentPoly(vars, out)


def render_rational(c) -> str:
    c = to_mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _monomial_str(vars, e) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def render_laurent(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    # highest total degree first, then reverse lexicographic on exponents
    order = sorted(p.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    out = []
    for i, e in enumerate(order):
        c = p.terms[e]
        mono = _monomial_str(p.vars, e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{render_rational(a)}*{mono}"
        else:
            body = render_rational(a)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------
# rational functions


def _to_sympy(p: LaurentPoly):
    import sympy

    gens = sympy.symbols(p.vars)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        m = sympy.Rational(int(c.numerator), int(c.denominator))
        for g, k in zip(gens, e):
            m *= g ** k
        expr += m
    return sympy.Poly(expr, *gens, domain="QQ")


def _from_sympy(poly, vars) -> LaurentPoly:
    out = {}
    for e, c in poly.terms():
        out[tuple(int(x) for x in e)] = mpq(int(c.p), int(c.q))
    return LaurentPoly(vars, out)


class RatFunc:
    """Quotient of two Laurent polynomials, kept reduced.

    Denominators that are monomials are folded into the numerator, so in the
    common case a RatFunc is just a Laurent polynomial.  A non-monomial
    denominator is made coprime to the numerator (via a polynomial gcd) and
    normalised to leading coefficient one.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, _reduced=False):
        if den is None:
            den = LaurentPoly.const(1, num.vars)
        if den.vars != num.vars:
            raise RingMismatch("numerator and denominator over different rings")
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = self._canon(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _canon(num, den):
        if den.is_monomial():
            return num.div_exact(den), LaurentPoly.const(1, num.vars)
        if not num:
            return num, LaurentPoly.const(1, num.vars)
        try:
            q = num.div_exact(den)
            return q, LaurentPoly.const(1, num.vars)
        except InexactDivision:
            pass
        nv = len(num.vars)
        # shift both into honest polynomials before taking a gcd
        sn = tuple(min(e[i] for e in num.terms) for i in range(nv))
        sd = tuple(min(e[i] for e in den.terms) for i in range(nv))
        n0 = num * LaurentPoly(num.vars, {tuple(-x for x in sn): 1})
        d0 = den * LaurentPoly(num.vars, {tuple(-x for x in sd): 1})
        g = _from_sympy(_to_sympy(n0).gcd(_to_sympy(d0)), num.vars)
        n0 = n0.div_exact(g)
        d0 = d0.div_exact(g)
        shift = LaurentPoly(num.vars, {tuple(a - b for a, b in zip(sn, sd)): 1})
        n0 = n0 * shift
        lc = d0.terms[max(d0.terms)]
        return n0 * (mpq(1) / lc), d0 * (mpq(1) / lc)

    @property
    def vars(self):
        return self.num.vars

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                if other.is_constant():
                    return RatFunc(LaurentPoly.const(other.num.constant_value(), self.vars))
                raise RingMismatch(f"ring {other.vars} vs {self.vars}")
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(self.num._lift(other))
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return RatFunc(LaurentPoly.const(other, self.vars), _reduced=True)
        return NotImplemented

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.is_constant():
            return hash(self.num)
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.num + o.num, self.den, _reduced=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.num * o.num, self.den, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def evaluate(self, bindings, retain=()):
        n = self.num.evaluate(bindings, retain)
        d = self.den.evaluate(bindings, retain)
        if isinstance(d, LaurentPoly):
            if not d:
                raise ZeroDivisionError("substitution makes the denominator vanish")
            return RatFunc(n, d)
        if d == 0:
            raise ZeroDivisionError("substitution makes the denominator vanish")
        return n / d

    def __str__(self):
        if self.den.is_constant():
            return render_laurent(self.num)
        return f"({render_laurent(self.num)})/({render_laurent(self.den)})"

    __repr__ = __str__


# ---------------------------------------------------------------------
# fields used by the rewriting engine


class Field:
    """Coefficient field descriptor.

    Elements are plain Python values; the field supplies arithmetic so the
    same engine code runs over Q, F_p and rational-function fields.
    """

    name = "field"
    char = 0

    def convert(self, x):
        raise NotImplementedError

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def render(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.name,)

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "Q"

    def convert(self, x):
        if isinstance(x, RatFunc):
            if not x.is_constant():
                raise RingMismatch(f"{x} is not a rational number")
            return x.num.constant_value()
        if isinstance(x, LaurentPoly):
            return x.constant_value()
        return to_mpq(x)

    def inv(self, a):
        return mpq(1) / a

    def render(self, a):
        return render_rational(a)


QQ = Rationals()


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ScalarError(f"{p} is not prime")
        self.p = int(p)
        self.char = self.p
        self.name = f"Fp:{self.p}"

    def key(self):
        return ("Fp", self.p)

    def convert(self, x):
        if isinstance(x, (LaurentPoly, RatFunc)):
            x = QQ.convert(x)
        x = to_mpq(x)
        num = int(x.numerator) % self.p
        den = int(x.denominator) % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def render(self, a):
        return str(a)


class FractionField(Field):
    """Q(params): rational functions in the named parameters."""

    def __init__(self, params: Iterable[str]):
        params = tuple(params)
        if len(set(params)) != len(params):
            raise ScalarError("duplicate parameter names")
        for name in params:
            check_param_name(name)
        self.params = params
        self.name = f"Q({','.join(params)})"

    def key(self):
        return ("Qfrac", self.params)

    def convert(self, x):
        if isinstance(x, RatFunc):
            if x.vars == self.params:
                return x
            return RatFunc(_rebase(x.num, self.params), _rebase(x.den, self.params))
        if isinstance(x, LaurentPoly):
            return RatFunc(_rebase(x, self.params), _reduced=x.vars == self.params)
        return RatFunc(LaurentPoly.const(x, self.params), _reduced=True)

    def gen(self, name: str) -> RatFunc:
        return RatFunc(LaurentPoly.var(name, self.params), _reduced=True)

    def inv(self, a):
        return a.inverse()

    def render(self, a):
        return str(a)


def check_param_name(name: str) -> None:
    m = re.fullmatch(r"t_(\d)(\d)", name)
    if m:
        if not int(m.group(1)) < int(m.group(2)):
            raise ScalarError(f"parameter {name} requires i<j")
        return
    if name in ("q", "v", "t", "beta", "eps") or re.fullmatch(r"x\d+", name):
        return
    raise ScalarError(f"unknown parameter name {name!r}")


def tparam(i: int, j: int) -> str:
    if not i < j:
        raise ScalarError(f"t_{{{i}{j}}} requires i<j")
    if j > 9:
        raise ScalarError("parameter names support indices up to 9")
    return f"t_{i}{j}"


def field_from_descriptor(desc: str, params: Iterable[str] = ()) -> Field:
    """Map a ring descriptor (``Q``, ``Z``, ``Fp:<p>``, ``Q(t)``, ...) to a field."""
    desc = desc.strip()
    if desc in ("Q", "Z"):
        return QQ
    if desc.startswith("Fp:"):
        return PrimeField(int(desc[3:]))
    m = re.fullmatch(r"Q\((.*)\)", desc)
    if m:
        params = tuple(params)
        if not params:
            params = tuple(p.strip() for p in m.group(1).split(",") if p.strip())
        return FractionField(params)
    raise ScalarError(f"unknown ring descriptor {desc!r}")


# ---------------------------------------------------------------------
# the scalar operations of the public contract


def _common(a, b):
    if isinstance(a, RatFunc) or isinstance(b, RatFunc):
        ra = a if isinstance(a, RatFunc) else RatFunc(a) if isinstance(a, LaurentPoly) else None
        rb = b if isinstance(b, RatFunc) else RatFunc(b) if isinstance(b, LaurentPoly) else None
        if ra is not None and rb is not None and ra.vars != rb.vars:
            raise RingMismatch(f"ring {ra.vars} vs {rb.vars}")
    elif isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly) and a.vars != b.vars:
        raise RingMismatch(f"ring {a.vars} vs {b.vars}")


def arith(a, b, op: str):
    """``op`` is one of ``add``, ``sub``, ``mul``, ``div-exact``."""
    _common(a, b)
    if op == "add":
        return _canon_scalar(a + b)
    if op == "sub":
        return _canon_scalar(a - b)
    if op == "mul":
        return _canon_scalar(a * b)
    if op == "div-exact":
        if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
            if not isinstance(a, LaurentPoly):
                a = LaurentPoly.const(a, b.vars)
            return a.div_exact(b)
        if isinstance(a, RatFunc) or isinstance(b, RatFunc):
            return a / b
        a, b = to_mpq(a), to_mpq(b)
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ScalarError(f"unknown op {op!r}")


def _canon_scalar(x):
    if isinstance(x, (int, Fraction)):
        return to_mpq(x)
    return x


def evaluate(a, bindings: Mapping[str, object], retain: Iterable[str] = ()):
    if isinstance(a, (LaurentPoly, RatFunc)):
        return a.evaluate(bindings, retain)
    for name in bindings:
        check_param_name(name) if not isinstance(name, str) else None
    return to_mpq(a)


def derivative_at_one(f, var: str = "v") -> mpq:
    """(d/dv f)(1) for a Laurent polynomial in ``v`` alone."""
    if not isinstance(f, LaurentPoly):
        return mpq(0)
    extra = f.occurring_vars() - {var}
    if extra:
        raise ScalarError(f"depends on parameters other than {var}: {sorted(extra)}")
    if var not in f.vars:
        return mpq(0)
    d = f.derivative(var)
    val = d.evaluate({v: 1 for v in d.vars})
    return to_mpq(val)


def render(a) -> str:
    if isinstance(a, (LaurentPoly, RatFunc)):
        return str(a)
    return render_rational(a)
