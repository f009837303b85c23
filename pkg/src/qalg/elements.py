"""Distinguished elements and the reduction-based verifiers built from them."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

from .catalog import Presentation, build
from .engine import RewriteBasis, complete
from .freealg import NCPoly, commutator, gen_from_index, lift_ring, num_brackets, relabel
from .scalars import QQ, Field, FractionField, tparam


class RecipeError(ValueError):
    pass


# ---------------------------------------------------------------------
# recipes


def _ring_for(n: int, ring: Field | None) -> Field:
    return ring or QQ


def bracket(i: int, j: int, n: int, ring: Field = QQ) -> NCPoly:
    return NCPoly.bracket(i, j, n, ring)


def dunkl_theta(j: int, n: int, ring: Field = QQ) -> NCPoly:
    """theta_j = -sum_{i<j} [ij] + sum_{k>j} [jk]."""
    if not 1 <= j <= n:
        raise RecipeError(f"theta_{j} needs 1 <= j <= {n}")
    out = NCPoly.zero(n, ring)
    for i in range(1, j):
        out = out - bracket(i, j, n, ring)
    for k in range(j + 1, n + 1):
        out = out + bracket(j, k, n, ring)
    return out


def jm_d(j: int, n: int, ring: Field = QQ) -> NCPoly:
    """d_j = sum_{i<j} X_ij (brackets play the role of X_ij)."""
    if not 2 <= j <= n:
        raise RecipeError(f"d_{j} needs 2 <= j <= {n}")
    out = NCPoly.zero(n, ring)
    for i in range(1, j):
        out = out + bracket(i, j, n, ring)
    return out


def tilde_theta(j: int, n: int, ring: Field = QQ) -> NCPoly:
    return NCPoly.var(j, n, ring) + dunkl_theta(j, n, ring)


def word_in_col(indices: Sequence[int], col: int, n: int, ring: Field = QQ) -> NCPoly:
    """Product [a_1,col][a_2,col]... of brackets sharing the column ``col``."""
    out = NCPoly.one(n, ring)
    for a in indices:
        out = out * bracket(a, col, n, ring)
    return out


def cyclic_sum(indices: Sequence[int], col: int, n: int, ring: Field = QQ) -> NCPoly:
    """sum over rotations r of a_r a_{r+1} ... a_{r+m-1} a_r with a = [a, col]."""
    m = len(indices)
    out = NCPoly.zero(n, ring)
    for r in range(m):
        rot = [indices[(r + s) % m] for s in range(m)] + [indices[r]]
        out = out + word_in_col(rot, col, n, ring)
    return out


def fn_element(n: int, ring: Field = QQ) -> NCPoly:
    """F_n = sum_i [i,n]...[n-1,n][1,n]...[i,n]."""
    if n < 3:
        raise RecipeError("F_n needs n >= 3")
    out = NCPoly.zero(n, ring)
    for i in range(1, n):
        idx = list(range(i, n)) + list(range(1, i + 1))
        out = out + word_in_col(idx, n, n, ring)
    return out


def phi_element(n: int, ring: Field = QQ) -> NCPoly:
    """Phi_n = sum_{i=2}^{n-1} [i,n]...[n-1,n][2,n]...[i,n]."""
    if n < 3:
        raise RecipeError("Phi_n needs n >= 3")
    out = NCPoly.zero(n, ring)
    for i in range(2, n):
        idx = list(range(i, n)) + list(range(2, i + 1))
        out = out + word_in_col(idx, n, n, ring)
    return out


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Sequences of ``parts`` positive integers summing to ``total`` (lex order)."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def lambda_monomial(A: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Bracket sequence of the ordered product [A] for A in Lambda_{n,k}."""
    k = len(A)
    if sum(A) != n - 2 or any(a <= 0 for a in A):
        raise RecipeError(f"{tuple(A)} is not in Lambda_{{{n},{k}}}")
    out = []
    partial = 0
    for j in range(1, k + 1):
        partial += A[j - 1] - 1
        for l in range(1, A[j - 1] + 1):
            a = n - k + l - 2 - partial
            b = n - k + j - 1
            if not 1 <= a < b <= n:
                raise RecipeError(f"[A] produced an invalid bracket [{a},{b}]")
            out.append((a, b))
    return out


def fn_rhs(n: int, ring: FractionField) -> NCPoly:
    """sum_{k=2}^{n-1} (-1)^(n-k-1) (t_kn - t_{k-1,n}) sum_{A in Lambda_{n,n-k}} [A]."""
    out = NCPoly.zero(n, ring)
    for k in range(2, n):
        coeff = ring.gen(tparam(k, n)) - ring.gen(tparam(k - 1, n))
        if (n - k - 1) % 2:
            coeff = -coeff
        inner = NCPoly.zero(n, ring)
        for A in compositions(n - 2, n - k):
            w = NCPoly.one(n, ring)
            for a, b in lambda_monomial(A, n):
                w = w * bracket(a, b, n, ring)
            inner = inner + w
        out = out + inner.scale(coeff)
    return out


def t_ring(n: int) -> FractionField:
    return FractionField(tuple(tparam(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def _tpair(ring: FractionField, a: int, b: int):
    i, j = min(a, b), max(a, b)
    return ring.gen(tparam(i, j))


def elementary(elems: Sequence[NCPoly], m: int, n: int, ring: Field) -> NCPoly:
    """e_m of (pairwise commuting) elements, products taken in index order."""
    out = NCPoly.zero(n, ring)
    if m < 0:
        return out
    for sub in combinations(range(len(elems)), m):
        p = NCPoly.one(n, ring)
        for s in sub:
            p = p * elems[s]
        out = out + p
    return out


def generalized_elementary(m: int, vars_idx: Sequence[int], n: int, ring: FractionField, values=None) -> NCPoly:
    """e_m(X_S | t) evaluated at X_a = values[a] (default theta_a).

    Sum over l >= 0, increasing i_1 < ... < i_l and j_k > i_k, all 2l indices
    distinct elements of S, of e_{m-2l}(X_{S minus I, J}) * prod t_{i_k j_k}.
    """
    S = list(vars_idx)
    if values is None:
        values = {a: dunkl_theta(a, n, ring) for a in S}
    out = NCPoly.zero(n, ring)
    for l in range(0, m // 2 + 1):
        for I in combinations(S, l):
            choices = [[j for j in S if j > i and j not in I] for i in I]
            for J in product(*choices):
                if len(set(J)) != l:
                    continue
                used = set(I) | set(J)
                rest = [values[a] for a in S if a not in used]
                coeff = ring.one()
                for i, j in zip(I, J):
                    coeff = coeff * _tpair(ring, i, j)
                out = out + elementary(rest, m - 2 * l, n, ring).scale(coeff)
    return out


def pieri_rhs(A: Sequence[int], m: int, n: int, ring: Field) -> NCPoly:
    """Sum of [i_1 j_1]...[i_m j_m]: distinct i's in A (ordered), weakly
    increasing j's outside A, with [i,j] = -[j,i] for i > j."""
    A = list(A)
    comp = [j for j in range(1, n + 1) if j not in A]
    out = NCPoly.zero(n, ring)
    if m == 0:
        return NCPoly.one(n, ring)
    for I in permutations(A, m):
        for J in _weakly_increasing(comp, m):
            w = NCPoly.one(n, ring)
            for i, j in zip(I, J):
                w = w * bracket(i, j, n, ring)
            out = out + w
    return out


def _weakly_increasing(pool, m):
    if m == 0:
        yield ()
        return
    for idx, j in enumerate(pool):
        for rest in _weakly_increasing(pool[idx:], m - 1):
            yield (j,) + rest


def pieri_lhs(A: Sequence[int], m: int, n: int, ring: FractionField) -> NCPoly:
    return generalized_elementary(m, sorted(A), n, ring)


def t_ij(i: int, j: int, n: int, ring: FractionField) -> NCPoly:
    """T_ij = t - (x_j - t x_i)[ij] in the affine algebra (ring contains t)."""
    t = ring.gen("t")
    one = NCPoly.one(n, ring)
    xi, xj = NCPoly.var(i, n, ring), NCPoly.var(j, n, ring)
    return one.scale(t) - (xj - xi.scale(t)) * bracket(i, j, n, ring)


@dataclass(frozen=True)
class ElementRecipe:
    """Named constructor of a distinguished element.

    ``kind`` is one of DunklTheta, JMd, TildeTheta, Fn, PhiN, EmGeneral,
    PieriLHS, PieriRHS, Tij, Custom.
    """

    kind: str
    n: int
    args: tuple = ()
    text: str = ""


def realize(r: ElementRecipe, ring: Field | None = None) -> NCPoly:
    n = r.n
    k = r.kind
    if k == "DunklTheta":
        return dunkl_theta(r.args[0], n, ring or QQ)
    if k == "JMd":
        return jm_d(r.args[0], n, ring or QQ)
    if k == "TildeTheta":
        return tilde_theta(r.args[0], n, ring or QQ)
    if k == "Fn":
        return fn_element(n, ring or QQ)
    if k == "PhiN":
        return phi_element(n, ring or QQ)
    if k == "EmGeneral":
        m = r.args[0]
        S = r.args[1] if len(r.args) > 1 else tuple(range(1, n + 1))
        if any(not 1 <= a <= n for a in S):
            raise RecipeError("variable subset out of range")
        return generalized_elementary(m, S, n, ring or t_ring(n))
    if k == "PieriLHS":
        A, m = r.args
        _check_subset(A, n)
        return pieri_lhs(A, m, n, ring or t_ring(n))
    if k == "PieriRHS":
        A, m = r.args
        _check_subset(A, n)
        return pieri_rhs(A, m, n, ring or QQ)
    if k == "Tij":
        i, j = r.args
        if not 1 <= i < j <= n:
            raise RecipeError(f"T_{i}{j} needs 1 <= i < j <= n")
        return t_ij(i, j, n, ring or FractionField(("t",)))
    if k == "Custom":
        from .freealg import parse_element

        return parse_element(r.text, n, ring or QQ)
    raise RecipeError(f"unknown recipe kind {k!r}")


def _check_subset(A, n):
    if len(set(A)) != len(A) or any(not 1 <= a <= n for a in A):
        raise RecipeError(f"{A} is not a subset of [1,{n}]")


# ---------------------------------------------------------------------
# verdicts


PROVED_ZERO = "proved-zero"
NONZERO = "nonzero-with-witness"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    status: str
    normal_form: NCPoly | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PROVED_ZERO


def check_zero(rb: RewriteBasis, e: NCPoly) -> Verdict:
    """Decide ``e == 0`` in the algebra presented by ``rb``.

    A zero normal form is a membership certificate regardless of the
    completion degree; a nonzero one is a witness only when every degree
    involved is within the completion degree.
    """
    e = _to_basis_ring(rb, e)
    within = e.degree() <= rb.complete_to
    try:
        nf = rb.normal_form(e, allow_incomplete=True)
    except Exception as exc:  # guard trips are verdicts, not crashes
        return Verdict(INCONCLUSIVE, None, f"{type(exc).__name__}: {exc}")
    if not nf:
        return Verdict(PROVED_ZERO, nf)
    if within:
        return Verdict(NONZERO, nf)
    return Verdict(INCONCLUSIVE, nf, "degree beyond completion")


def _to_basis_ring(rb: RewriteBasis, e: NCPoly) -> NCPoly:
    if e.ring == rb.field:
        return e
    return e.to_ring(rb.field)


def check_commuting_family(rb: RewriteBasis, elems: Sequence[NCPoly]) -> dict[tuple[int, int], Verdict]:
    out = {}
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            out[(a, b)] = check_zero(rb, commutator(elems[a], elems[b]))
    return out


# ---------------------------------------------------------------------
# straightening in the affine algebra


def straighten(e: NCPoly) -> NCPoly:
    """Move every variable x_i to the left of every bracket.

    Uses ``[ij]x_i = x_j[ij] - 1``, ``[ij]x_j = x_i[ij] + 1``,
    ``[ab]x_i = x_i[ab]`` (i not in {a,b}) and sorts commuting variables.
    """
    n = e.n
    nb = num_brackets(n)
    info = {a: gen_from_index(a, n) for a in range(nb)}
    cache: dict[tuple, dict] = {}

    def st(w: tuple) -> dict:
        if w in cache:
            return cache[w]
        # find the first bracket immediately followed by a variable
        pos = None
        for p in range(len(w) - 1):
            if w[p] < nb <= w[p + 1]:
                pos = p
                break
        if pos is None:
            xs = sorted(a for a in w if a >= nb)
            rest = tuple(a for a in w if a < nb)
            # variables only appear in a prefix here; sort them
            res = {tuple(xs) + rest: 1}
            cache[w] = res
            return res
        b, x = w[pos], w[pos + 1]
        g = info[b]
        xi = x - nb + 1
        pre, post = w[:pos], w[pos + 2 :]
        res: dict = {}
        if xi == g.i:
            _acc(res, st(pre + (nb + g.j - 1, b) + post), 1)
            _acc(res, st(pre + post), -1)
        elif xi == g.j:
            _acc(res, st(pre + (nb + g.i - 1, b) + post), 1)
            _acc(res, st(pre + post), 1)
        else:
            _acc(res, st(pre + (x, b) + post), 1)
        cache[w] = res
        return res

    out: dict = {}
    for w, c in e.terms.items():
        for w2, k in st(w).items():
            out[w2] = out.get(w2, 0) + c * k if w2 in out else c * k
    return NCPoly(n, out, e.ring)


def _acc(res, d, sign):
    for w, c in d.items():
        v = res.get(w, 0) + sign * c
        if v:
            res[w] = v
        else:
            res.pop(w, None)


def split_straight(e: NCPoly) -> dict[tuple, NCPoly]:
    """Group a straightened element by its variable prefix."""
    nb = num_brackets(e.n)
    groups: dict[tuple, dict] = {}
    for w, c in e.terms.items():
        k = 0
        while k < len(w) and w[k] >= nb:
            k += 1
        if any(a >= nb for a in w[k:]):
            raise RecipeError("element is not straightened")
        groups.setdefault(w[:k], {})[w[k:]] = c
    return {x: NCPoly(e.n, d, e.ring, _clean=True) for x, d in groups.items()}


def check_zero_affine(rb_brackets: RewriteBasis, e: NCPoly) -> Verdict:
    """Straighten ``e`` and reduce each bracket part with a bracket-only basis.

    Zero is a certificate (every step is a defining relation of the affine
    algebra).  A nonzero result is reported as inconclusive.
    """
    s = straighten(e)
    nf_total = NCPoly.zero(e.n, rb_brackets.field)
    for xs, part in split_straight(s).items():
        v = check_zero(rb_brackets, part)
        if v.status == INCONCLUSIVE and v.normal_form is None:
            return v
        if v.normal_form:
            nf_total = nf_total + NCPoly.word(xs, e.n, 1, rb_brackets.field) * v.normal_form
    if not nf_total:
        return Verdict(PROVED_ZERO, nf_total)
    return Verdict(INCONCLUSIVE, nf_total, "bracket parts did not all vanish")


# ---------------------------------------------------------------------
# named checks


@dataclass
class CheckItem:
    label: str
    status: str
    seconds: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in (PROVED_ZERO, "pass")


@dataclass
class Report:
    check: str
    n: int
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.items) and all(i.ok for i in self.items)

    def add(self, label: str, fn: Callable[[], object]):
        t0 = time.perf_counter()
        try:
            res = fn()
        except Exception as exc:  # recorded, not raised: reports cover failures
            self.items.append(CheckItem(label, "error", time.perf_counter() - t0, f"{type(exc).__name__}: {exc}"))
            return
        dt = time.perf_counter() - t0
        if isinstance(res, Verdict):
            detail = res.note
            if res.status == NONZERO and res.normal_form is not None:
                detail = f"nf={_short(res.normal_form)}"
            self.items.append(CheckItem(label, res.status, dt, detail))
        elif isinstance(res, tuple):
            ok, detail = res
            self.items.append(CheckItem(label, "pass" if ok else "fail", dt, detail))
        else:
            self.items.append(CheckItem(label, "pass" if res else "fail", dt))

    def summary(self) -> str:
        good = sum(1 for i in self.items if i.ok)
        return f"{good}/{len(self.items)}"


def _short(p: NCPoly, limit: int = 160) -> str:
    s = str(p)
    return s if len(s) <= limit else s[:limit] + "..."


@lru_cache(maxsize=None)
def cached_basis(preset: str, n: int, D: int, mode: str = "default") -> RewriteBasis:
    """Memoized completion for the presets used by named checks."""
    if mode == "t-single":
        p = build(preset, n, params="single")
    elif mode == "t-field":
        p = build(preset, n, ring=FractionField(("t",)))
    else:
        p = build(preset, n)
    return complete(p, D)


def _bn_rb(n, D):
    return cached_basis("Bn", n, D)


def check_fn_zero(n: int, D: int | None = None) -> Report:
    rep = Report("fn-zero", n)
    rb = cached_basis("En0", n, D or n)
    rep.add(f"F_{n}=0 in E0_{n}", lambda: check_zero(rb, fn_element(n)))
    return rep


def check_fn_t(n: int, D: int | None = None) -> Report:
    rep = Report("fn-t", n)
    rb = cached_basis("Ent", n, D or n)
    R = rb.field
    rep.add(f"F_{n}-RHS=0 in Et_{n}", lambda: check_zero(rb, fn_element(n, R) - fn_rhs(n, R)))
    return rep


def check_fn_t_displayed(n: int = 4) -> Report:
    """The n=4 special case with its left side exactly as displayed, and the
    same right side against F_4 itself."""
    rep = Report("fn-t-displayed", 4)
    rb = cached_basis("Ent", 4, 4)
    R = rb.field
    b = lambda i, j: bracket(i, j, 4, R)
    t = lambda i, j: R.gen(tparam(i, j))
    shown = b(1, 2) * b(1, 3) * b(1, 4) * b(1, 2) + b(1, 3) * b(1, 4) * b(1, 2) * b(1, 3) + b(1, 4) * b(1, 2) * b(1, 3) * b(1, 4)
    rhs = (b(1, 3) * b(2, 3)).scale(t(3, 4) - t(2, 4)) - (b(1, 2) * b(1, 3)).scale(t(2, 4) - t(1, 4))
    rep.add("displayed left side = displayed right side", lambda: check_zero(rb, shown - rhs))
    rep.add("F_4 = displayed right side", lambda: check_zero(rb, fn_element(4, R) - rhs))
    return rep


def check_em_vanish(n: int, D: int | None = None) -> Report:
    rep = Report("em-vanish", n)
    rb = cached_basis("Ent", n, D or max(n, 3))
    R = rb.field
    for m in range(1, n + 1):
        rep.add(f"e_{m}(theta|t)=0", lambda m=m: check_zero(rb, generalized_elementary(m, range(1, n + 1), n, R)))
    return rep


def check_pieri(n: int, D: int | None = None, max_m: int = 3) -> Report:
    rep = Report("pieri", n)
    rb = cached_basis("Ent", n, D or max(4, max_m + 1))
    R = rb.field
    for size in range(1, n + 1):
        for A in combinations(range(1, n + 1), size):
            for m in range(1, min(max_m, size) + 1):
                rep.add(
                    f"A={''.join(map(str, A))} m={m}",
                    lambda A=A, m=m: check_zero(rb, pieri_lhs(A, m, n, R) - pieri_rhs(A, m, n, R)),
                )
    return rep


def theta_identity_elements(ring: Field = QQ) -> list[tuple[str, NCPoly]]:
    n = 3
    th = [None] + [dunkl_theta(j, n, ring) for j in range(1, 4)]
    sq = lambda i, j: bracket(i, j, n, ring) * bracket(i, j, n, ring)
    e1 = th[1] + th[2] + th[3]
    e2 = th[1] * th[2] + th[1] * th[3] + th[2] * th[3] + sq(1, 2) + sq(1, 3) + sq(2, 3)
    e3 = th[1] * th[2] * th[3] + sq(1, 2) * th[3] + th[1] * sq(2, 3) - sq(1, 3) * th[1] - th[3] * sq(1, 3)
    e4 = commutator(th[2], sq(2, 3)) - commutator(th[1], sq(1, 3))
    return [("sum of thetas", e1), ("degree-2 identity", e2), ("degree-3 identity", e3), ("commutator identity", e4)]


def check_theta_identities(n: int = 3, preset: str = "Gn") -> Report:
    rep = Report("theta-identities-g3", 3)
    rb = cached_basis(preset, 3, 6)
    for label, e in theta_identity_elements():
        rep.add(f"{label} in {preset}(3)", lambda e=e: check_zero(rb, e))
    return rep


def check_ten_term(n: int = 5, quad=(1, 2, 3, 4)) -> Report:
    rep = Report("ten-term", n)
    rb = cached_basis("En0", n, 6)
    rep.add(f"degree-6 identity (a,b,c,d)={quad}", lambda: check_zero(rb, ten_term_element(n, quad)))
    return rep


def ten_term_element(n: int, quad=(1, 2, 3, 4), ring: Field = QQ) -> NCPoly:
    a, b, c, d = quad
    sym = {"a": a, "b": b, "c": c, "d": d}

    def w(s):
        return word_in_col([sym[ch] for ch in s], n, n, ring)

    lhs = ["abcdca", "bcdcab", "cabadc", "dcabad", "cdcaba"]
    rhs = ["abacdc", "acdcba", "bacdcb", "cdabac", "dabacd"]
    out = NCPoly.zero(n, ring)
    for s in lhs:
        out = out + w(s)
    for s in rhs:
        out = out - w(s)
    return out


def check_cyclic_relations(n: int, D: int | None = None, max_m: int | None = None) -> Report:
    """All cyclic-sum relations a_1...a_m a_1 + ... = 0 with a = [a, n] in E0_n."""
    rep = Report("cyclic-relations", n)
    rb = cached_basis("En0", n, D or n)
    top = max_m or n - 1
    for m in range(2, top + 1):
        for seq in permutations(range(1, n), m):
            if seq[0] != min(seq):
                continue  # rotations give the same element
            rep.add(f"cyclic {seq}", lambda seq=seq: check_zero(rb, cyclic_sum(seq, n, n)))
    return rep


def check_k30_relations(n: int = 3) -> Report:
    rep = Report("k30-relations", 3)
    rb = cached_basis("Bn0", 3, 6)
    d2, d3 = jm_d(2, 3), jm_d(3, 3)
    rep.add("d2^2=0", lambda: check_zero(rb, d2 * d2))
    rep.add("d2 d3 = d3 d2", lambda: check_zero(rb, commutator(d2, d3)))
    rep.add("(d2+d3) d3^3 = 0", lambda: check_zero(rb, (d2 + d3) * d3 * d3 * d3))
    return rep


def bn0_relation_elements(ring: Field = QQ) -> list[tuple[str, NCPoly]]:
    n = 3
    X12, X13, X23 = bracket(1, 2, n, ring), bracket(1, 3, n, ring), bracket(2, 3, n, ring)
    return [
        ("three-term cubic", X23 * X13 * X23 - X13 * X23 * X13 + X12 * X13 * X23 - X12 * X23 * X13),
        ("quartic A", X23 * X13 * X23 * X13 + X12 * X13 * X23 * X13),
        ("quartic B", X13 * X23 * X13 * X23 + X12 * X23 * X13 * X23),
        ("quartic C", X12 * X23 * X13 * X23 - X12 * X13 * X23 * X13),
    ]


def check_bn0_relations(n: int = 3) -> Report:
    rep = Report("bn0-relations", 3)
    rb = cached_basis("Bn0", 3, 6)
    for label, e in bn0_relation_elements():
        rep.add(label, lambda e=e: check_zero(rb, e))
    return rep


def fourteen_term_elements(n: int = 4, ring: Field = QQ) -> list[tuple[str, NCPoly]]:
    X = lambda i, j: bracket(i, j, n, ring)
    x14, x24, x34, x13, x23, x12 = X(1, 4), X(2, 4), X(3, 4), X(1, 3), X(2, 3), X(1, 2)
    r1 = (
        x23 * (x14 * x24 * x34 - x24 * x14 * x34 - x34 * x14 * x24 + x34 * x24 * x14)
        + (x13 * x23 - x23 * x13) * (x24 * x34 - x34 * x24)
        - x14 * x24 * x34 * x24
        + x24 * x34 * x24 * x14
        + x24 * x14 * x34 * x24
        - x24 * x34 * x14 * x24
        + x34 * x14 * x24 * x34
        - x34 * x24 * x14 * x34
    )
    r2 = (
        x12 * (x14 * x34 * x24 - x24 * x14 * x34 - x34 * x14 * x24 + x24 * x34 * x14)
        + (x13 * x23 - x23 * x13) * (x14 * x24 - x24 * x14)
        + x14 * x24 * x34 * x14
        - x14 * x34 * x24 * x14
        - x14 * x24 * x14 * x34
        + x24 * x14 * x34 * x24
        - x24 * x34 * x14 * x24
        + x34 * x14 * x24 * x14
    )
    return [("first fourteen-term relation", r1), ("second fourteen-term relation", r2)]


def fourteen_term_sign_variant(n: int = 4, ring: Field = QQ) -> NCPoly:
    """Second fourteen-term element with the commutator block's sign reversed."""
    X = lambda i, j: bracket(i, j, n, ring)
    r2 = fourteen_term_elements(n, ring)[1][1]
    block = (X(1, 3) * X(2, 3) - X(2, 3) * X(1, 3)) * (X(1, 4) * X(2, 4) - X(2, 4) * X(1, 4))
    return r2 - block.scale(ring.one() + ring.one())


def check_fourteen_term_variant(n: int = 4) -> Report:
    rep = Report("fourteen-term-variant", n)
    rb = cached_basis("Bn0", n, 5)
    rep.add("second relation, commutator block negated", lambda: check_zero(rb, fourteen_term_sign_variant(n)))
    return rep


def check_fourteen_term(n: int = 4) -> Report:
    rep = Report("fourteen-term", n)
    rb = cached_basis("Bn0", n, 5)
    for label, e in fourteen_term_elements(n):
        rep.add(label, lambda e=e: check_zero(rb, e))
    return rep


def check_bn_en_series(n: int = 4, D: int | None = None) -> Report:
    """Per-degree comparison of the graded dimensions of B0_n and E0_n."""
    rep = Report("braid-14-check", n)
    D = D or (13 if n == 4 else 5 if n == 3 else 6)
    b = cached_basis("Bn0", n, D).standard_counts(D)
    e = cached_basis("En0", n, D).standard_counts(D)
    for k in range(D + 1):
        rep.add(f"degree {k}", lambda k=k: (b[k] == e[k], f"B0={b[k]} E0={e[k]}"))
    return rep


def check_dunkl_commute(n: int, preset: str = "Gn", D: int = 3) -> Report:
    rep = Report("dunkl-commute", n)
    rb = cached_basis(preset, n, max(D, 2))
    th = [dunkl_theta(j, n) for j in range(1, n + 1)]
    for (a, b), v in check_commuting_family(rb, th).items():
        rep.items.append(CheckItem(f"[theta_{a+1},theta_{b+1}]", v.status, 0.0))
    return rep


def check_jm_commute(n: int, preset: str = "Bn", D: int = 3) -> Report:
    rep = Report("jm-commute", n)
    rb = cached_basis(preset, n, max(D, 2))
    ds = [jm_d(j, n) for j in range(2, n + 1)]
    for (a, b), v in check_commuting_family(rb, ds).items():
        rep.items.append(CheckItem(f"[d_{a+2},d_{b+2}]", v.status, 0.0))
    return rep


def check_tilde_commute(n: int) -> Report:
    """theta~_j = x_j + theta_j commute in the affine algebra (straighten + reduce)."""
    rep = Report("tilde-commute", n)
    rb = cached_basis("En0", n, max(3, n))
    th = [tilde_theta(j, n) for j in range(1, n + 1)]
    for a in range(n):
        for b in range(a + 1, n):
            rep.add(
                f"[theta~_{a+1},theta~_{b+1}]",
                lambda a=a, b=b: check_zero_affine(rb, commutator(th[a], th[b])),
            )
    return rep


def check_coxeter_tij(n: int = 4) -> Report:
    """Hecke quadratic relation and the Coxeter relation for T_ij."""
    rep = Report("coxeter-tij", n)
    R = FractionField(("t",))
    rb = cached_basis("En0", n, max(4, n), mode="t-field")
    t = R.gen("t")
    one = NCPoly.one(n, R)
    T = {(i, j): t_ij(i, j, n, R) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    for (i, j), x in T.items():
        rep.add(
            f"T_{i}{j}^2=(t-1)T_{i}{j}+t",
            lambda x=x: check_zero_affine(rb, x * x - x.scale(t - 1) - one.scale(t)),
        )
    for a, b, c in combinations(range(1, n + 1), 3):
        x, y = T[(a, b)], T[(b, c)]
        rep.add(f"T_{a}{b}T_{b}{c}T_{a}{b}=T_{b}{c}T_{a}{b}T_{b}{c}", lambda x=x, y=y: check_zero_affine(rb, x * y * x - y * x * y))
    return rep


def check_phi_commutator(n: int, preset: str = "En0") -> Report:
    rep = Report("phi-commutator", n)
    rb = cached_basis(preset, n, n)
    b12 = bracket(1, 2, n)
    phi = phi_element(n)
    rep.add(
        f"Phi_{n}[12]-[12]Phi_{n}=F_{n} in {preset}",
        lambda: check_zero(rb, phi * b12 - b12 * phi - fn_element(n)),
    )
    return rep


def check_relabel_equivariance(preset: str, n: int, e: NCPoly, D: int | None = None) -> Report:
    """Apply every permutation to an identity and re-check it."""
    from .catalog import SYMMETRY

    rep = Report("relabel-equivariance", n)
    sym = SYMMETRY.get(preset)
    if sym is None:
        rep.notes.append(f"{preset} has no index symmetry")
        return rep
    rb = cached_basis(preset, n, D or max(e.degree(), 3))
    for w in permutations(range(1, n + 1)):
        img = relabel(e, w, antisymmetric=(sym == "antisymmetric"))
        rep.add(f"w={''.join(map(str, w))}", lambda img=img: check_zero(rb, img))
    return rep


def check_commuting_suite(n: int, family: str, preset: str, D: int = 3) -> Report:
    if family == "theta":
        return check_dunkl_commute(n, preset, D)
    if family == "d":
        return check_jm_commute(n, preset, D)
    raise RecipeError(f"unknown family {family!r}")


NAMED: dict[str, tuple[Callable[..., Report], str]] = {
    "fn-zero": (lambda n, deg=None, **kw: check_fn_zero(n, deg), "F_n vanishes in E0_n"),
    "fn-t": (lambda n, deg=None, **kw: check_fn_t(n, deg), "F_n equals the Lambda-monomial expansion in Et_n"),
    "fn-t-displayed": (lambda n=4, deg=None, **kw: check_fn_t_displayed(), "the printed n=4 special case, as printed"),
    "em-vanish": (lambda n, deg=None, **kw: check_em_vanish(n, deg), "generalized elementary functions of thetas vanish in Et_n"),
    "pieri": (lambda n, deg=None, **kw: check_pieri(n, deg), "Pieri rule for e_m(theta_A|t) in Et_n"),
    "theta-identities-g3": (lambda n=3, deg=None, preset="Gn", **kw: check_theta_identities(3, preset or "Gn"), "four identities among thetas in G_3"),
    "coxeter-tij": (lambda n=4, deg=None, **kw: check_coxeter_tij(n), "quadratic and Coxeter relations of T_ij (affine algebra)"),
    "k30-relations": (lambda n=3, deg=None, **kw: check_k30_relations(), "relations among d_2, d_3 in B0_3"),
    "bn0-relations": (lambda n=3, deg=None, **kw: check_bn0_relations(), "cubic and quartic relations in B0_3"),
    "fourteen-term": (lambda n=4, deg=None, **kw: check_fourteen_term(n), "the two fourteen-term relations in B0_4"),
    "fourteen-term-variant": (lambda n=4, deg=None, **kw: check_fourteen_term_variant(n), "second fourteen-term relation with the commutator block negated"),
    "braid-14-check": (lambda n=4, deg=None, **kw: check_bn_en_series(n, deg), "per-degree comparison of B0_n and E0_n dimensions"),
    "ten-term": (lambda n=5, deg=None, **kw: check_ten_term(n), "ten-term degree-6 identity in E0_5"),
    "cyclic-relations": (lambda n, deg=None, **kw: check_cyclic_relations(n, deg), "cyclic sums a_1...a_m a_1 vanish in E0_n"),
    "dunkl-commute": (lambda n, deg=None, preset="Gn", **kw: check_dunkl_commute(n, preset or "Gn", deg or 3), "theta_j commute pairwise"),
    "jm-commute": (lambda n, deg=None, preset="Bn", **kw: check_jm_commute(n, preset or "Bn", deg or 3), "d_j commute pairwise"),
    "tilde-commute": (lambda n, deg=None, **kw: check_tilde_commute(n), "x_j + theta_j commute pairwise (affine algebra)"),
    "phi-commutator": (lambda n, deg=None, preset="En0", **kw: check_phi_commutator(n, preset or "En0"), "Phi_n [12] - [12] Phi_n = F_n"),
}


def verify_named(check: str, n: int | None = None, deg: int | None = None, **kw) -> Report:
    """Run a named algebra check and return its report."""
    if check not in NAMED:
        raise RecipeError(f"unknown check {check!r}; known: {', '.join(sorted(NAMED))}")
    fn, _ = NAMED[check]
    if n is None:
        return fn(deg=deg, **kw)
    return fn(n, deg=deg, **kw)
