"""Sparse incremental row echelon over an exact field.

Rows are dictionaries ``column -> coefficient`` whose columns are integers;
the pivot of a row is its largest column.  This is all the linear algebra the
engine needs: ranks of spans of normal forms and the matrix-rank oracle.
"""

from __future__ import annotations

import heapq

from .scalars import Field, FractionField, LaurentPoly, PrimeField


class Echelon:
    """Incrementally maintained echelon form.

    >>> from qalg.scalars import QQ
    >>> e = Echelon(QQ)
    >>> e.add({3: 1, 1: 2}), e.add({3: 2, 1: 4}), e.add({1: 1})
    (True, False, True)
    >>> e.rank
    2
    """

    def __init__(self, field: Field):
        self.field = field
        self.p = field.p if isinstance(field, PrimeField) else 0
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Return the remainder of ``row`` modulo the current rows (pivot-wise)."""
        p = self.p
        if p:
            row = {c: v % p for c, v in row.items() if v % p}
        else:
            row = {c: v for c, v in row.items() if v}
        if not row:
            return row
        pivots = self.pivots
        heap = [-c for c in row]
        heapq.heapify(heap)
        out = {}
        while heap:
            c = -heapq.heappop(heap)
            v = row.pop(c, None)
            if v is None or not v:
                continue
            prow = pivots.get(c)
            if prow is None:
                out[c] = v
                continue
            # prow is monic on c
            for col, pv in prow.items():
                if col == c:
                    continue
                old = row.get(col)
                if p:
                    nv = ((old or 0) - v * pv) % p
                else:
                    nv = (old - v * pv) if old is not None else -(v * pv)
                if nv:
                    if old is None:
                        heapq.heappush(heap, -col)
                    row[col] = nv
                elif old is not None:
                    del row[col]
        return out

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True iff it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        piv = max(r)
        lc = r[piv]
        if self.p:
            inv = pow(lc, -1, self.p)
            r = {c: v * inv % self.p for c, v in r.items()}
        else:
            inv = self.field.inv(lc)
            r = {c: v * inv for c, v in r.items()}
        self.pivots[piv] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


class FractionFreeEchelon:
    """Echelon form over a field of rational functions without gcds.

    Rows are cleared of denominators and then eliminated Bareiss-style: a row
    appended after ``k`` pivot rows is transformed by the same ``k`` steps the
    full fraction-free elimination would apply, so every division is exact
    and entries stay polynomial.  Only zero/nonzero of the remainder is
    meaningful; the remainder itself is a scaled minor.
    """

    def __init__(self, field: FractionField):
        self.field = field
        self.rows: list[tuple[int, dict, LaurentPoly]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    @staticmethod
    def _clear(row: dict) -> dict:
        """Multiply ``row`` by the product of its distinct denominators."""
        dens = []
        for v in row.values():
            if v and not v.den.is_constant() and v.den not in dens:
                dens.append(v.den)
        out = {}
        for c, v in row.items():
            if not v:
                continue
            num = v.num * (v.den.constant_value() ** -1) if v.den.is_constant() else v.num
            for d in dens:
                if d != v.den:
                    num = num * d
            out[c] = num
        return out

    def reduce(self, row: dict) -> dict:
        x = self._clear(row)
        prev = None
        for piv, prow, pval in self.rows:
            if not x:
                return x
            a = x.get(piv)
            out = {}
            for c, v in x.items():
                nv = v * pval
                if a is not None and c in prow:
                    nv = nv - a * prow[c]
                if nv and prev is not None:
                    nv = nv.div_exact(prev)
                if nv:
                    out[c] = nv
            if a is not None:
                for c, pv in prow.items():
                    if c not in x:
                        nv = -(a * pv)
                        if prev is not None:
                            nv = nv.div_exact(prev)
                        out[c] = nv
            out.pop(piv, None)
            x = out
            prev = pval
        return x

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        piv = max(r)
        self.rows.append((piv, r, r[piv]))
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def make_echelon(field: Field):
    """The echelon structure suited to ``field``."""
    if isinstance(field, FractionField):
        return FractionFreeEchelon(field)
    return Echelon(field)


def rank_of_rows(rows, field: Field) -> int:
    e = make_echelon(field)
    for r in rows:
        e.add(r)
    return e.rank
