"""Free associative algebra on indexed generators.

Generators of rank ``n`` are the brackets ``[i,j]`` (``1 <= i < j <= n``)
followed by the variables ``x_1..x_n``.  Internally every generator is an
integer index: brackets are numbered in ascending order of ``(j, i)`` and the
variables come after all brackets, so ``x_i`` is larger than every bracket.

Words are tuples of generator indices.  The monomial order is degree first;
words of equal length are compared letter by letter starting from the
*right-most* letter.  With this order the leading word of
``[1,2][2,3] - [2,3][1,3] - [1,3][1,2]`` is ``[1,2][2,3]`` and the leading word
of ``x_2[1,2] - [1,2]x_1 - 1`` is ``[1,2]x_1``, i.e. rewriting moves variables
to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import QQ, Field, FractionField, LaurentPoly, RatFunc, ScalarError, check_param_name, to_mpq


class FreeAlgebraError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GenSym:
    """A generator: ``Bracket(i, j)`` when ``kind == "B"`` or ``Var(i)`` when ``kind == "x"``."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind == "B":
            if not 1 <= self.i < self.j:
                raise FreeAlgebraError(f"bracket [{self.i},{self.j}] requires 1 <= i < j")
        elif self.kind == "x":
            if self.i < 1:
                raise FreeAlgebraError("variable index must be positive")
        else:
            raise FreeAlgebraError(f"unknown generator kind {self.kind!r}")

    def __str__(self):
        return f"[{self.i},{self.j}]" if self.kind == "B" else f"x_{self.i}"


def Bracket(i: int, j: int) -> GenSym:
    return GenSym("B", i, j)


def Var(i: int) -> GenSym:
    return GenSym("x", i)


def num_brackets(n: int) -> int:
    return n * (n - 1) // 2


def bracket_index(i: int, j: int) -> int:
    """Index of ``[i,j]``; brackets are sorted ascending by ``(j, i)``."""
    if not 1 <= i < j:
        raise FreeAlgebraError(f"bracket [{i},{j}] requires 1 <= i < j")
    return (j - 1) * (j - 2) // 2 + (i - 1)


def var_index(i: int, n: int) -> int:
    if not 1 <= i <= n:
        raise FreeAlgebraError(f"x_{i} out of range for n={n}")
    return num_brackets(n) + i - 1


def gen_index(g: GenSym, n: int) -> int:
    if g.kind == "B":
        if g.j > n:
            raise FreeAlgebraError(f"{g} out of range for n={n}")
        return bracket_index(g.i, g.j)
    return var_index(g.i, n)


def gen_from_index(a: int, n: int) -> GenSym:
    nb = num_brackets(n)
    if 0 <= a < nb:
        j = 2
        while (j - 1) * j // 2 <= a:
            j += 1
        i = a - (j - 1) * (j - 2) // 2 + 1
        return Bracket(i, j)
    if nb <= a < nb + n:
        return Var(a - nb + 1)
    raise FreeAlgebraError(f"generator index {a} out of range for n={n}")


def bracket_pairs(n: int) -> list[tuple[int, int]]:
    """All ``(i, j)`` with ``i < j <= n`` in generator order."""
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


def word_key(w: Sequence[int]) -> tuple:
    """Sort key realising the monomial order (larger key = larger word)."""
    return (len(w), tuple(reversed(w)))


def word_str(w: Sequence[int], n: int) -> str:
    if not w:
        return "1"
    return "*".join(str(gen_from_index(a, n)) for a in w)


# ---------------------------------------------------------------------


class NCPoly:
    """Finitely supported linear combination of words with field coefficients.

    >>> a = NCPoly.gen(Bracket(1, 2), 3)
    >>> b = NCPoly.gen(Bracket(2, 3), 3)
    >>> str(a * b - b * a)
    '-[2,3]*[1,2] + [1,2]*[2,3]'
    """

    __slots__ = ("n", "ring", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, object] | None = None, ring: Field = QQ, _clean=False):
        self.n = n
        self.ring = ring
        if _clean:
            self.terms = dict(terms) if terms else {}
            return
        out = {}
        if terms:
            for w, c in terms.items():
                c = ring.convert(c)
                if c:
                    w = tuple(w)
                    if w in out:
                        s = out[w] + c
                        if s:
                            out[w] = s
                        else:
                            del out[w]
                    else:
                        out[w] = c
        self.terms = out

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, n: int, ring: Field = QQ) -> "NCPoly":
        return cls(n, {}, ring, _clean=True)

    @classmethod
    def scalar(cls, c, n: int, ring: Field = QQ) -> "NCPoly":
        return cls(n, {(): c}, ring)

    @classmethod
    def one(cls, n: int, ring: Field = QQ) -> "NCPoly":
        return cls.scalar(1, n, ring)

    @classmethod
    def gen(cls, g: GenSym, n: int, ring: Field = QQ) -> "NCPoly":
        return cls(n, {(gen_index(g, n),): 1}, ring)

    @classmethod
    def bracket(cls, i: int, j: int, n: int, ring: Field = QQ) -> "NCPoly":
        """``[i,j]``; with ``i > j`` this is ``-[j,i]`` (antisymmetric convention)."""
        if i < j:
            return cls(n, {(bracket_index(i, j),): 1}, ring)
        if i > j:
            return cls(n, {(bracket_index(j, i),): -1}, ring)
        raise FreeAlgebraError("bracket needs distinct indices")

    @classmethod
    def var(cls, i: int, n: int, ring: Field = QQ) -> "NCPoly":
        return cls(n, {(var_index(i, n),): 1}, ring)

    @classmethod
    def word(cls, letters: Iterable[int], n: int, c=1, ring: Field = QQ) -> "NCPoly":
        return cls(n, {tuple(letters): c}, ring)

    # -- basic protocol -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple, object]]:
        for w in sorted(self.terms, key=word_key, reverse=True):
            yield w, self.terms[w]

    def copy(self) -> "NCPoly":
        return NCPoly(self.n, self.terms, self.ring, _clean=True)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def leading_word(self) -> tuple:
        if not self.terms:
            raise FreeAlgebraError("zero polynomial has no leading word")
        return max(self.terms, key=word_key)

    def coeff(self, w) -> object:
        return self.terms.get(tuple(w), self.ring.zero())

    def letters(self) -> set[int]:
        return {a for w in self.terms for a in w}

    def has_vars(self) -> bool:
        nb = num_brackets(self.n)
        return any(a >= nb for w in self.terms for a in w)

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly(self.n, {w: c for w, c in self.terms.items() if len(w) == d}, self.ring, _clean=True)

    def _check(self, other: "NCPoly"):
        if self.n != other.n:
            raise FreeAlgebraError(f"rank mismatch: {self.n} vs {other.n}")
        if self.ring != other.ring:
            raise FreeAlgebraError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.ring != self.ring and other.n == self.n:
                other = other.to_ring(self.ring) if _embeds(other.ring, self.ring) else other
            self._check(other)
            return other
        return NCPoly.scalar(other, self.n, self.ring)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return NCPoly(self.n, out, self.ring, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.n, {w: -c for w, c in self.terms.items()}, self.ring, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = self.ring.convert(c)
        if not c:
            return NCPoly.zero(self.n, self.ring)
        return NCPoly(self.n, {w: v * c for w, v in self.terms.items()}, self.ring, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return nc_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise FreeAlgebraError("negative powers are not defined")
        out = NCPoly.one(self.n, self.ring)
        for _ in range(k):
            out = out * self
        return out

    def to_ring(self, ring: Field) -> "NCPoly":
        return NCPoly(self.n, {w: ring.convert(c) for w, c in self.terms.items()}, ring)

    def map_coeffs(self, fn) -> "NCPoly":
        return NCPoly(self.n, {w: fn(c) for w, c in self.terms.items()}, self.ring)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NCPoly(n={self.n}, {render(self)!r})"


def _embeds(src: Field, dst: Field) -> bool:
    if src == QQ:
        return True
    if isinstance(src, FractionField) and isinstance(dst, FractionField):
        return set(src.params) <= set(dst.params)
    return False


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Bilinear concatenation product."""
    b = a._coerce(b)
    out: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w = u + v
            c = cu * cv
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            elif c:
                out[w] = c
    return NCPoly(a.n, out, a.ring, _clean=True)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return nc_mul(a, b) - nc_mul(b, a)


def lift_ring(*polys: NCPoly) -> list[NCPoly]:
    """Bring polynomials to a common coefficient field (Q embeds in Q(params))."""
    params: list[str] = []
    ring = QQ
    for p in polys:
        if isinstance(p.ring, FractionField):
            for name in p.ring.params:
                if name not in params:
                    params.append(name)
        elif p.ring != QQ:
            ring = p.ring
    if params:
        if ring != QQ:
            raise FreeAlgebraError("cannot mix prime fields and parameters")
        ring = FractionField(params)
    return [p if p.ring == ring else p.to_ring(ring) for p in polys]


def relabel(p: NCPoly, w: Sequence[int], antisymmetric: bool = False) -> NCPoly:
    """Apply a permutation of ``1..n`` (one-line notation) to bracket indices.

    ``[i,j]`` becomes ``[min, max]`` of ``(w(i), w(j))``.  With
    ``antisymmetric=True`` a bracket whose image is reversed also picks up a
    sign, matching algebras where ``[j,i] = -[i,j]``.
    """
    n = p.n
    if sorted(w) != list(range(1, n + 1)):
        raise FreeAlgebraError(f"{list(w)} is not a permutation of 1..{n}")
    nb = num_brackets(n)
    table = []
    signs = []
    for a in range(nb):
        g = gen_from_index(a, n)
        wi, wj = w[g.i - 1], w[g.j - 1]
        table.append(bracket_index(min(wi, wj), max(wi, wj)))
        signs.append(-1 if (antisymmetric and wi > wj) else 1)
    out: dict = {}
    for word, c in p.terms.items():
        if any(a >= nb for a in word):
            raise FreeAlgebraError("relabel is defined only on bracket words")
        nw = tuple(table[a] for a in word)
        s = 1
        for a in word:
            s *= signs[a]
        out[nw] = out.get(nw, 0) + (c if s == 1 else -c)
    return NCPoly(n, out, p.ring)


# ---------------------------------------------------------------------
# rendering


def render_coeff(c, ring: Field) -> tuple[bool, str]:
    """Return ``(negative, magnitude_text)`` for a coefficient."""
    if isinstance(c, RatFunc):
        if c.den.is_constant() and c.num.is_monomial():
            (e, v), = c.num.terms.items()
            neg = v < 0
            mag = LaurentPoly(c.num.vars, {e: -v if neg else v})
            return neg, str(RatFunc(mag) * (1 / c.den.constant_value()))
        if c.is_constant():
            v = c.num.constant_value() / c.den.constant_value()
            return v < 0, ring.render(abs(v)) if hasattr(ring, "render") else str(abs(v))
        return False, f"({c})"
    if ring.char:
        return False, str(c)
    v = to_mpq(c)
    return v < 0, QQ.render(abs(v))


def render(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for idx, (w, c) in enumerate(p):
        neg, mag = render_coeff(c, p.ring)
        ws = word_str(w, p.n) if w else ""
        if ws:
            body = ws if mag == "1" else f"{mag}*{ws}"
        else:
            body = mag
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<br>\[\s*\d+\s*,\s*\d+\s*\])|(?P<var>x_?\d+)|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<param>t_\d\d|t|q|v|beta|eps)|(?P<op>[-+*^()]))"
)


class ParseError(FreeAlgebraError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _tokenize(text: str, line: int):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", line, pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind).replace(" ", ""), m.start(kind) + 1))
        pos = m.end()
    return toks


def parse_element(text: str, n: int, ring: Field = QQ, line: int = 1) -> NCPoly:
    """Parse ``[1,2]*[2,3] - 2*t_12*x_1 + (t-1)*[1,3]^2`` style text."""
    toks = _tokenize(text, line)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None, len(text) + 1)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr():
        kind, val, col = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, col = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        acc = power()
        while True:
            kind, val, col = peek()
            if kind == "op" and val == "*":
                take()
                acc = nc_mul(acc, power())
            elif kind in ("br", "var", "num", "param") or (kind == "op" and val == "("):
                acc = nc_mul(acc, power())  # implicit juxtaposition
            else:
                return acc

    def power():
        base = atom()
        kind, val, col = peek()
        if kind == "op" and val == "^":
            take()
            k2, v2, c2 = take()
            if k2 != "num" or "/" in v2:
                raise ParseError("exponent must be a nonnegative integer", line, c2)
            return base ** int(v2)
        return base

    def atom():
        kind, val, col = take()
        if kind is None:
            raise ParseError("unexpected end of input", line, col)
        if kind == "br":
            i, j = (int(s) for s in val[1:-1].split(","))
            if not i < j:
                raise ParseError(f"bracket {val} requires i < j", line, col)
            if j > n:
                raise ParseError(f"bracket {val} out of range for n={n}", line, col)
            return NCPoly.bracket(i, j, n, ring)
        if kind == "var":
            i = int(val.lstrip("x_"))
            if not 1 <= i <= n:
                raise ParseError(f"variable {val} out of range for n={n}", line, col)
            return NCPoly.var(i, n, ring)
        if kind == "num":
            return NCPoly.scalar(to_mpq(Fraction(val)), n, ring)
        if kind == "param":
            if not isinstance(ring, FractionField) or val not in ring.params:
                raise ParseError(f"parameter {val} is not in the coefficient ring {ring}", line, col)
            return NCPoly.scalar(ring.gen(val), n, ring)
        if val == "(":
            e = expr()
            k2, v2, c2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", line, c2)
            return e
        raise ParseError(f"unexpected {val!r}", line, col)

    if not text.strip():
        raise ParseError("empty expression", line, 1)
    result = expr()
    if pos != len(toks):
        raise ParseError(f"unexpected {toks[pos][1]!r}", line, toks[pos][2])
    return result


def params_in_text(text: str) -> list[str]:
    seen = []
    for m in re.finditer(r"\b(t_\d\d|t|q|v|beta|eps)\b", text):
        name = m.group(1)
        check_param_name(name)
        if name not in seen:
            seen.append(name)
    return seen
