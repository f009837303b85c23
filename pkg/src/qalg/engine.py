"""Degree-truncated noncommutative Gröbner completion and everything built on it.

Words are handled internally as integers: with ``s`` bits per letter a word
``a_0 a_1 ... a_{L-1}`` is encoded as ``2^(sL) + sum a_i 2^(s i)``.  The leading
sentinel bit makes the encoding injective across lengths, and integer order of
codes coincides with the monomial order (length first, then letters compared
from the right), so ``max`` of a set of codes is its leading word.
"""

from __future__ import annotations

import heapq
import os
import time
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .catalog import Presentation
from .freealg import NCPoly, word_str
from .linalg import Echelon, make_echelon
from .scalars import DEFAULT_PRIMES, QQ, Field, FractionField, PrimeField, field_from_descriptor

DEFAULT_GUARD_TERMS = 2_000_000


class EngineError(RuntimeError):
    pass


class GuardError(EngineError):
    """A resource guard (term count or degree) tripped."""


def guard_terms() -> int:
    env = os.environ.get("QALG_GUARD_TERMS")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise EngineError(f"QALG_GUARD_TERMS={env!r} is not a number") from None
    return DEFAULT_GUARD_TERMS


# ---------------------------------------------------------------------
# word codes


class WordCodec:
    def __init__(self, num_gens: int):
        self.num_gens = num_gens
        self.s = max(1, (num_gens - 1).bit_length())
        self.mask = (1 << self.s) - 1

    def encode(self, w: Sequence[int]) -> int:
        s = self.s
        c = 1 << (s * len(w))
        for i, a in enumerate(w):
            c |= a << (s * i)
        return c

    def decode(self, c: int) -> tuple:
        s, m = self.s, self.mask
        L = (c.bit_length() - 1) // s
        return tuple((c >> (s * i)) & m for i in range(L))

    def length(self, c: int) -> int:
        return (c.bit_length() - 1) // self.s

    def value(self, c: int) -> tuple[int, int]:
        """(letters without sentinel, length)."""
        L = (c.bit_length() - 1) // self.s
        return c ^ (1 << (self.s * L)), L

    def concat(self, a: int, b: int) -> int:
        va, la = self.value(a)
        return va | (b << (self.s * la))


# ---------------------------------------------------------------------
# reduction core


class _RuleSet:
    """Mutable rule table used both during completion and for queries."""

    def __init__(self, codec: WordCodec, field: Field, guard: int):
        self.codec = codec
        self.field = field
        self.p = field.p if isinstance(field, PrimeField) else 0
        self.guard = guard
        self.table: dict[int, tuple[int, list]] = {}  # lw code -> (rule id, rep)
        self.lengths: list[int] = []
        self._len_count: dict[int, int] = {}
        self.next_id = 0

    def add(self, lw: int, rep: dict) -> int:
        s = self.codec.s
        items = []
        for c, v in sorted(rep.items(), reverse=True):
            val, L = self.codec.value(c)
            items.append((val, L, v))
        rid = self.next_id
        self.next_id += 1
        self.table[lw] = (rid, items)
        L = self.codec.length(lw)
        self._len_count[L] = self._len_count.get(L, 0) + 1
        if self._len_count[L] == 1:
            self.lengths = sorted(self._len_count)
        return rid

    def remove(self, lw: int):
        del self.table[lw]
        L = self.codec.length(lw)
        self._len_count[L] -= 1
        if not self._len_count[L]:
            del self._len_count[L]
            self.lengths = sorted(self._len_count)

    def find(self, c: int):
        """Locate a rule occurrence inside word ``c``: (lw, pos, len) or None."""
        s = self.codec.s
        L = (c.bit_length() - 1) // s
        table = self.table
        for Lr in self.lengths:
            if Lr > L:
                break
            sent = 1 << (s * Lr)
            mr = sent - 1
            for p in range(L - Lr + 1):
                sub = sent | ((c >> (s * p)) & mr)
                if sub in table:
                    return sub, p, Lr
        return None

    def reducible(self, c: int) -> bool:
        return self.find(c) is not None

    def reduce(self, poly: dict, log: list | None = None, max_len: int | None = None) -> dict:
        """Fully reduce ``poly`` (code -> coeff); returns a new dict.

        ``log`` receives ``(rule_id, position, coeff, word_code)`` per step.
        ``max_len`` triggers :class:`GuardError` if a longer word appears.
        """
        terms = {c: v for c, v in poly.items() if v}
        if not terms:
            return {}
        s = self.codec.s
        table = self.table
        lengths = self.lengths
        p = self.p
        guard = self.guard
        heap = [-c for c in terms]
        heapq.heapify(heap)
        out = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            c = -pop(heap)
            coef = terms.pop(c, None)
            if coef is None:
                continue
            L = (c.bit_length() - 1) // s
            if max_len is not None and L > max_len:
                raise GuardError(f"word of degree {L} exceeds the completion degree {max_len}")
            hit = None
            for Lr in lengths:
                if Lr > L:
                    break
                sent = 1 << (s * Lr)
                mr = sent - 1
                for pos in range(L - Lr + 1):
                    sub = sent | ((c >> (s * pos)) & mr)
                    r = table.get(sub)
                    if r is not None:
                        hit = (r, pos, Lr)
                        break
                if hit:
                    break
            if hit is None:
                out[c] = coef
                continue
            (rid, rep), pos, Lr = hit
            if log is not None:
                log.append((rid, pos, coef, c))
            sp = s * pos
            prefix = c & ((1 << sp) - 1)
            suffix = c >> (s * (pos + Lr))
            for val, ml, mc in rep:
                nc = prefix | (val << sp) | (suffix << (sp + s * ml))
                old = terms.get(nc)
                if p:
                    nv = ((old or 0) + coef * mc) % p
                else:
                    nv = coef * mc if old is None else old + coef * mc
                if nv:
                    if old is None:
                        push(heap, -nc)
                    terms[nc] = nv
                elif old is not None:
                    del terms[nc]
            if len(terms) > guard:
                raise GuardError(f"intermediate polynomial exceeded {guard} terms")
        return out

    def monic(self, poly: dict) -> tuple[int, dict]:
        lw = max(poly)
        lc = poly[lw]
        if self.p:
            inv = pow(lc, -1, self.p)
            rep = {c: (-v * inv) % self.p for c, v in poly.items() if c != lw}
        else:
            inv = self.field.inv(lc)
            rep = {c: -(v * inv) for c, v in poly.items() if c != lw}
        return lw, {c: v for c, v in rep.items() if v}


# ---------------------------------------------------------------------


@dataclass
class CompletionStats:
    rules: int = 0
    pairs_processed: int = 0
    pairs_skipped: int = 0
    max_pair_degree: int = 0
    new_rules_in_margin: int = 0
    seconds: float = 0.0


@dataclass
class DimReport:
    dims: list[int]
    field: str
    mode: str = "graded"

    @property
    def total(self) -> int:
        return sum(self.dims)

    def records(self) -> list[str]:
        return [f"degree={k} dim={d}" for k, d in enumerate(self.dims)]


class RewriteBasis:
    """A rewriting system complete up to a total degree.

    Use :func:`complete` to build one.  Rules are exposed as ``NCPoly`` values
    ``lw - rep`` (monic on the leading word), sorted by leading word.
    """

    def __init__(self, presentation: Presentation, field: Field, complete_to: int, margin: int = 0):
        self.presentation = presentation
        self.field = field
        self.complete_to = complete_to
        self.margin = margin
        self.n = presentation.n
        self.codec = WordCodec(max(1, presentation.num_gens))
        self.stats = CompletionStats()
        self._rs = _RuleSet(self.codec, field, guard_terms())
        self._automaton = None
        self._rules_cache = None
        self._id_to_index: dict[int, int] = {}

    # -- conversions ----------------------------------------------------
    def to_codes(self, e: NCPoly) -> dict:
        if e.n != self.n:
            raise EngineError(f"rank mismatch: element has n={e.n}, basis has n={self.n}")
        conv = self.field.convert
        enc = self.codec.encode
        ng = self.presentation.num_gens
        out = {}
        for w, c in e.terms.items():
            if any(a >= ng for a in w):
                raise EngineError("element uses generators outside the presentation")
            v = conv(c)
            if v:
                out[enc(w)] = v
        return out

    def from_codes(self, d: dict) -> NCPoly:
        dec = self.codec.decode
        return NCPoly(self.n, {dec(c): v for c, v in d.items()}, self.field, _clean=True)

    # -- rules -------------------------------------------------------------
    @property
    def rules(self) -> list[NCPoly]:
        if self._rules_cache is None:
            out = []
            self._id_to_index = {}
            for idx, lw in enumerate(sorted(self._rs.table)):
                rid, rep = self._rs.table[lw]
                self._id_to_index[rid] = idx
                s = self.codec.s
                d = {lw: self.field.one()}
                for val, L, v in rep:
                    d[val | (1 << (s * L))] = -v
                out.append(self.from_codes(d))
            self._rules_cache = out
        return self._rules_cache

    def leading_words(self) -> list[tuple]:
        return [self.codec.decode(c) for c in sorted(self._rs.table)]

    def rule_index(self, rid: int) -> int:
        self.rules  # populate
        return self._id_to_index[rid]

    # -- queries -------------------------------------------------------
    def normal_form(self, e: NCPoly, log: list | None = None, allow_incomplete: bool = False) -> NCPoly:
        codes = self.to_codes(e)
        limit = None if allow_incomplete else self.complete_to
        raw = [] if log is not None else None
        nf = self._rs.reduce(codes, raw, max_len=limit)
        if log is not None:
            for rid, pos, coef, c in raw:
                log.append(ReductionStep(self.rule_index(rid), pos, coef, self.codec.decode(c)))
        return self.from_codes(nf)

    def is_standard(self, w: Sequence[int]) -> bool:
        return not self._rs.reducible(self.codec.encode(w))

    def _build_automaton(self):
        if self._automaton is None:
            self._automaton = _Automaton([self.codec.decode(c) for c in self._rs.table], self.presentation.num_gens)
        return self._automaton

    def graded_dim(self, k: int) -> int:
        if not self.presentation.homogeneous:
            raise EngineError("graded_dim needs a homogeneous presentation; use filtered_dims")
        return self.standard_counts(k)[k]

    def standard_counts(self, K: int) -> list[int]:
        """Number of standard words of each length 0..K (automaton walk)."""
        if K > self.complete_to:
            raise GuardError(f"degree {K} exceeds the completion degree {self.complete_to}")
        return self._build_automaton().counts(K)

    def standard_words(self, k: int) -> list[tuple]:
        if k > self.complete_to:
            raise GuardError(f"degree {k} exceeds the completion degree {self.complete_to}")
        return self._build_automaton().words(k)

    def hilbert_series(self, K: int | None = None) -> list[int]:
        return self.standard_counts(self.complete_to if K is None else K)


@dataclass(frozen=True)
class ReductionStep:
    rule: int
    position: int
    coeff: object
    word: tuple

    def record(self, ring: Field, n: int) -> str:
        return f"rule={self.rule} pos={self.position} coeff={ring.render(self.coeff)} word={word_str(self.word, n)}"


# ---------------------------------------------------------------------
# Aho–Corasick automaton over leading words


class _Automaton:
    def __init__(self, words: list[tuple], alphabet: int):
        self.alphabet = alphabet
        goto = [dict()]
        bad = [False]
        for w in words:
            st = 0
            for a in w:
                nxt = goto[st].get(a)
                if nxt is None:
                    nxt = len(goto)
                    goto[st][a] = nxt
                    goto.append({})
                    bad.append(False)
                st = nxt
            bad[st] = True
        fail = [0] * len(goto)
        delta = [[0] * alphabet for _ in goto]
        queue = deque()
        for a in range(alphabet):
            nxt = goto[0].get(a)
            if nxt is None:
                delta[0][a] = 0
            else:
                delta[0][a] = nxt
                fail[nxt] = 0
                queue.append(nxt)
        while queue:
            st = queue.popleft()
            bad[st] = bad[st] or bad[fail[st]]
            for a in range(alphabet):
                nxt = goto[st].get(a)
                if nxt is None:
                    delta[st][a] = delta[fail[st]][a]
                else:
                    delta[st][a] = nxt
                    fail[nxt] = delta[fail[st]][a]
                    queue.append(nxt)
        self.delta = delta
        self.bad = bad

    def counts(self, K: int) -> list[int]:
        good = [s for s in range(len(self.delta)) if not self.bad[s]]
        cur = {0: 1}
        out = [1]
        for _ in range(K):
            nxt: dict[int, int] = {}
            for st, cnt in cur.items():
                row = self.delta[st]
                for a in range(self.alphabet):
                    t = row[a]
                    if not self.bad[t]:
                        nxt[t] = nxt.get(t, 0) + cnt
            cur = nxt
            out.append(sum(cur.values()))
        return out

    def words(self, k: int) -> list[tuple]:
        out = []

        def rec(st, prefix):
            if len(prefix) == k:
                out.append(tuple(prefix))
                return
            row = self.delta[st]
            for a in range(self.alphabet):
                t = row[a]
                if not self.bad[t]:
                    prefix.append(a)
                    rec(t, prefix)
                    prefix.pop()

        rec(0, [])
        return out


# ---------------------------------------------------------------------
# completion


def _overlaps(codec: WordCodec, a: int, b: int):
    """Proper overlaps: suffix of ``a`` equal to prefix of ``b``, length k."""
    s = codec.s
    va, La = codec.value(a)
    vb, Lb = codec.value(b)
    for k in range(1, min(La, Lb)):
        mk = (1 << (s * k)) - 1
        if (va >> (s * (La - k))) == (vb & mk):
            yield k, La + Lb - k


def resolve_field(p: Presentation, fld) -> Field:
    if fld is None:
        return p.ring
    if isinstance(fld, Field):
        return fld
    return field_from_descriptor(fld, getattr(p.ring, "params", ()))


def complete(p: Presentation, D: int, field=None, margin: int | None = None, verbose: bool = False) -> RewriteBasis:
    """Complete ``p`` to total degree ``D`` over ``field``.

    Homogeneous presentations process every overlap of degree ``<= D``.
    Inhomogeneous ones process up to ``D + margin`` (default margin 2) and
    record how many rules appeared beyond ``D``.
    """
    if D < 2:
        raise EngineError("completion degree must be at least 2")
    F = resolve_field(p, field)
    if margin is None:
        margin = 0 if p.homogeneous else 2
    rb = RewriteBasis(p, F, D, margin)
    rs = rb._rs
    codec = rb.codec
    s = codec.s
    Dmax = D + margin
    t0 = time.perf_counter()

    pairs: list = []  # (degree, lw_a, lw_b, k, id_a, id_b)
    pending: list = []  # polynomials waiting to be turned into rules
    stats = rb.stats
    homogeneous = p.homogeneous

    def add_poly(poly: dict, source_degree: int):
        work = [poly]
        while work:
            f = rs.reduce(work.pop())
            if not f:
                continue
            lw, rep = rs.monic(f)
            L = codec.length(lw)
            if not homogeneous:
                # inclusion ambiguities: rules whose leading word contains lw
                victims = [c for c in rs.table if c != lw and _contains(codec, c, lw)]
                for c in victims:
                    rid, items = rs.table[c]
                    old = {c: F.one() if not rs.p else 1}
                    for val, Lm, v in items:
                        old[val | (1 << (s * Lm))] = (-v) % rs.p if rs.p else -v
                    rs.remove(c)
                    work.append(old)
            rid = rs.add(lw, rep)
            if source_degree > D:
                stats.new_rules_in_margin += 1
            for other, (oid, _) in list(rs.table.items()):
                for k, deg in _overlaps(codec, lw, other):
                    if deg <= Dmax:
                        heapq.heappush(pairs, (deg, lw, other, k, rid, oid))
                if other != lw:
                    for k, deg in _overlaps(codec, other, lw):
                        if deg <= Dmax:
                            heapq.heappush(pairs, (deg, other, lw, k, oid, rid))

    rels = [rb.to_codes(r) for r in p.relations]
    rels = [r for r in rels if r]
    rels.sort(key=lambda d: max(d))
    for r in rels:
        add_poly(r, codec.length(max(r)))

    current_degree = 0
    while pairs:
        deg, a, b, k, ida, idb = heapq.heappop(pairs)
        if homogeneous and deg != current_degree:
            _interreduce(rs, codec)
            current_degree = deg
        ra = rs.table.get(a)
        rbule = rs.table.get(b)
        if ra is None or rbule is None or ra[0] != ida or rbule[0] != idb:
            stats.pairs_skipped += 1
            continue
        stats.pairs_processed += 1
        stats.max_pair_degree = max(stats.max_pair_degree, deg)
        va, La = codec.value(a)
        vb, Lb = codec.value(b)
        # W = a * v = u * b with v = b[k:], u = a[:La-k]
        v_code = vb >> (s * k) | (1 << (s * (Lb - k)))
        u_val = va & ((1 << (s * (La - k))) - 1)
        uL = La - k
        S: dict = {}
        zero = 0 if rs.p else F.zero()
        for val, L, c in ra[1]:
            w = val | (v_code << (s * L))
            S[w] = S.get(w, zero) + c
        for val, L, c in rbule[1]:
            w = u_val | (((val | (1 << (s * L)))) << (s * uL))
            nv = S.get(w, zero) - c
            S[w] = nv % rs.p if rs.p else nv
        S = {w: c for w, c in S.items() if c}
        if S:
            add_poly(S, deg)
        if verbose and stats.pairs_processed % 5000 == 0:
            print(f"  pairs={stats.pairs_processed} rules={len(rs.table)} deg={deg} queue={len(pairs)}")
    _interreduce(rs, codec)
    stats.rules = len(rs.table)
    stats.seconds = time.perf_counter() - t0
    return rb


def _contains(codec: WordCodec, big: int, small: int) -> bool:
    s = codec.s
    vb, Lb = codec.value(big)
    vs, Ls = codec.value(small)
    if Ls > Lb:
        return False
    m = (1 << (s * Ls)) - 1
    for p in range(Lb - Ls + 1):
        if (vb >> (s * p)) & m == vs:
            return True
    return False


def _interreduce(rs: _RuleSet, codec: WordCodec):
    """Reduce every rule's tail by the full rule set (leading words fixed)."""
    s = codec.s
    for lw in sorted(rs.table):
        rid, items = rs.table[lw]
        tail = {val | (1 << (s * L)): v for val, L, v in items}
        if not any(rs.reducible(c) for c in tail):
            continue
        red = rs.reduce(tail)
        new_items = []
        for c, v in sorted(red.items(), reverse=True):
            val, L = codec.value(c)
            new_items.append((val, L, v))
        rs.table[lw] = (rid, new_items)


# ---------------------------------------------------------------------
# dimension queries


def normal_form(rb: RewriteBasis, e: NCPoly, log: list | None = None, allow_incomplete: bool = False) -> NCPoly:
    return rb.normal_form(e, log=log, allow_incomplete=allow_incomplete)


def graded_dim(rb: RewriteBasis, k: int) -> int:
    return rb.graded_dim(k)


def _fname(F: Field) -> str:
    return F.name


def filtered_dims(rb: RewriteBasis, K: int) -> DimReport:
    """Successive quotients F_k / F_(k-1) of the span of words of degree <= k.

    Rewriting never lengthens a word under the degree-compatible order, so
    every word of degree <= k reduces into the span of the standard words of
    degree <= k, and those are independent.  The quotient dimensions are
    therefore the standard-word counts; :func:`span_dims` recomputes them by
    explicit linear algebra.
    """
    if K > rb.complete_to:
        raise GuardError(f"degree {K} exceeds the completion degree {rb.complete_to}")
    return DimReport(rb.standard_counts(K), _fname(rb.field), "filtered")


def span_dims(rb: RewriteBasis, K: int) -> DimReport:
    """Filtered dimensions by rank growth of normal forms of all words."""
    gens = [NCPoly.word((a,), rb.n, 1, rb.field) for a in range(rb.presentation.num_gens)]
    cum = _span_growth(rb, gens, K)
    return DimReport([cum[0]] + [cum[k] - cum[k - 1] for k in range(1, K + 1)], _fname(rb.field), "filtered")


def subalgebra_dims(rb: RewriteBasis, gens: Sequence[NCPoly], K: int, field=None) -> DimReport:
    """Graded (or, for inhomogeneous bases, filtered) dimensions of the
    subalgebra generated by ``gens``."""
    for g in gens:
        if not g.is_homogeneous() or g.degree() != 1:
            raise EngineError("subalgebra generators must be homogeneous of degree 1")
    gens = [g.to_ring(rb.field) if g.ring != rb.field else g for g in gens]
    cum = _span_growth(rb, gens, K)
    mode = "graded" if rb.presentation.homogeneous else "filtered"
    return DimReport([cum[0]] + [cum[k] - cum[k - 1] for k in range(1, K + 1)], _fname(rb.field), mode)


def _span_growth(rb: RewriteBasis, gens: Sequence[NCPoly], K: int) -> list[int]:
    """Cumulative ranks of span{NF(products of <= k generators)}, k = 0..K."""
    if K > rb.complete_to:
        raise GuardError(f"degree {K} exceeds the completion degree {rb.complete_to}")
    rs = rb._rs
    F = rb.field
    one = {rb.codec.encode(()): F.one() if not rs.p else 1}
    total = make_echelon(F)
    total.add(one)
    layer = [one]
    gcodes = [rb.to_codes(g) for g in gens]
    cum = [1]
    concat = rb.codec.concat
    # F_{k+1} = F_k + L_k * gens for any complement L_k of F_{k-1} in F_k,
    # so only products that enlarge the cumulative span are carried forward.
    for k in range(1, K + 1):
        new_layer = []
        for v in layer:
            for g in gcodes:
                prod: dict = {}
                for cv, av in v.items():
                    for cg, ag in g.items():
                        w = concat(cv, cg)
                        x = prod.get(w)
                        nv = av * ag if x is None else x + av * ag
                        if rs.p:
                            nv %= rs.p
                        prod[w] = nv
                nf = rs.reduce(prod, max_len=rb.complete_to)
                if total.add(nf):
                    new_layer.append(nf)
        layer = new_layer
        cum.append(total.rank)
    return cum


def matrix_rank_dim(p: Presentation, k: int, field=None) -> int:
    """Oracle: #words of degree k minus rank{u r w : |u| + |w| = k - deg r}.

    Independent of the rewriting engine; homogeneous presentations only.
    Over Q and prime fields the ideal is built degree by degree from
    I_m = I_{m-1} * V + V^(m-d) * R: an echelon basis of I_{m-1} right-multiplied
    by a letter is still in echelon form (the new letter is the most
    significant digit of the column code), so only the rows u * r are
    eliminated.  Over rational-function fields every u r w is eliminated.
    """
    if not p.homogeneous:
        raise EngineError("the matrix-rank oracle needs a homogeneous presentation")
    F = resolve_field(p, field)
    g = p.num_gens
    s = WordCodec(max(1, p.num_gens)).s
    rels = []
    for r in p.relations:
        row = {}
        for w, c in r.terms.items():
            val = 0
            for i, a in enumerate(w):
                val |= a << (s * i)
            v = F.convert(c)
            if v:
                row[val] = v
        if row:
            rels.append((r.degree(), row))

    def words(length):
        for u in range(g ** length):
            val, x = 0, u
            for i in range(length):
                val |= (x % g) << (s * i)
                x //= g
            yield val

    if isinstance(F, FractionField):
        ech = make_echelon(F)
        for d, row in rels:
            if d > k:
                continue
            for ul in range(k - d + 1):
                shift_w = s * (ul + d)
                for uval in words(ul):
                    for wval in words(k - d - ul):
                        ech.add({uval | (mv << (s * ul)) | (wval << shift_w): c for mv, c in row.items()})
        return g ** k - ech.rank

    prev: dict[int, dict] = {}
    for m in range(1, k + 1):
        ech = Echelon(F)
        top = s * (m - 1)
        for piv, row in prev.items():
            for x in range(g):
                hi = x << top
                ech.pivots[piv | hi] = {c | hi: v for c, v in row.items()}
        for d, row in rels:
            if d > m:
                continue
            shift = s * (m - d)
            for uval in words(m - d):
                ech.add({uval | (mv << shift): c for mv, c in row.items()})
        prev = ech.pivots
    return g ** k - len(prev)


def torsion_probe(p: Presentation, K: int, primes: Iterable[int] = DEFAULT_PRIMES) -> dict:
    """Graded dims over Q and each F_p; flags degrees where F_p exceeds Q."""
    if not p.homogeneous:
        raise EngineError("torsion probe needs a homogeneous presentation")
    if K < 2:
        K = 2
    q = complete(p, K, QQ).standard_counts(K)
    table = {"Q": q}
    flags = []
    for pr in primes:
        dims = complete(p, K, PrimeField(pr)).standard_counts(K)
        table[f"Fp:{pr}"] = dims
        for k, (a, b) in enumerate(zip(q, dims)):
            if b > a:
                flags.append((pr, k, a, b))
    return {"dims": table, "discrepancies": flags}


def multi_prime_dims(p: Presentation, K: int, primes: Iterable[int] = DEFAULT_PRIMES) -> tuple[list[int], list[str]]:
    """Graded dims with an F_p pre-pass; falls back to Q when primes disagree."""
    notes = []
    results = []
    for pr in primes:
        results.append(complete(p, K, PrimeField(pr)).standard_counts(K))
    if all(r == results[0] for r in results):
        return results[0], notes
    notes.append("prime fields disagree; recomputed over Q")
    return complete(p, K, QQ).standard_counts(K), notes


def replay(rb: RewriteBasis, e: NCPoly, log: Sequence[ReductionStep]) -> NCPoly:
    """Re-derive a normal form from a reduction log using plain NCPoly arithmetic.

    Each step subtracts ``coeff * u * rule * v`` where the rule's leading word
    sits at ``position`` inside ``word``.  The result must equal the reported
    normal form.
    """
    rules = rb.rules
    lws = rb.leading_words()
    cur = e.to_ring(rb.field) if e.ring != rb.field else e.copy()
    for st in log:
        lw = lws[st.rule]
        w = st.word
        if tuple(w[st.position : st.position + len(lw)]) != lw:
            raise EngineError(f"log step does not match rule {st.rule} at position {st.position}")
        u = NCPoly.word(w[: st.position], rb.n, 1, rb.field)
        v = NCPoly.word(w[st.position + len(lw) :], rb.n, 1, rb.field)
        cur = cur - (u * rules[st.rule] * v).scale(st.coeff)
    return cur


def series_coefficients(numer: Sequence[int], denom_factors: Sequence[int], K: int) -> list[int]:
    """Coefficients of numer(t) / prod (1 - a t) up to t^K (integers)."""
    c = list(numer) + [0] * (K + 1)
    c = c[: K + 1]
    for a in denom_factors:
        for k in range(1, K + 1):
            c[k] += a * c[k - 1]
    return c


def poly_product(factors: Sequence[Sequence[int]]) -> list[int]:
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def gn_series(n: int, K: int) -> list[int]:
    return series_coefficients([1], list(range(1, n)), K)


def binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0
