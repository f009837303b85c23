"""Built-in presentations and the presentation file parser."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .freealg import (
    Bracket,
    FreeAlgebraError,
    GenSym,
    NCPoly,
    ParseError,
    Var,
    bracket_pairs,
    commutator,
    parse_element,
    render,
)
from .scalars import QQ, Field, FractionField, ScalarError, field_from_descriptor, tparam

PRESETS = (
    "Gn",
    "Bn",
    "Ent",
    "En0",
    "Bnt",
    "Bn0",
    "Ant",
    "An0",
    "Lnbeta",
    "Pnbeta",
    "GnComm",
    "TildeGn0",
)

# How relations transform under relabelling of indices: brackets of the
# "antisymmetric" families satisfy [j,i] = -[i,j]; the braid-type algebras
# are symmetric in (i, j); the beta-deformed ones have no index symmetry.
SYMMETRY = {
    "Gn": "antisymmetric",
    "Ent": "antisymmetric",
    "En0": "antisymmetric",
    "Ant": "antisymmetric",
    "An0": "antisymmetric",
    "GnComm": "symmetric",
    "Bn": "symmetric",
    "Bnt": "symmetric",
    "Bn0": "symmetric",
    "Lnbeta": None,
    "Pnbeta": None,
    "TildeGn0": None,
}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    name: str
    n: int
    generators: tuple[GenSym, ...]
    relations: tuple[NCPoly, ...]
    ring: Field = QQ
    homogeneous: bool = True
    params: tuple[str, ...] = ()
    symmetry: str | None = None

    def __post_init__(self):
        allowed = set(range(len(self.generators)))
        for r in self.relations:
            if r.n != self.n:
                raise CatalogError("relation rank differs from presentation rank")
            if not r.letters() <= allowed:
                raise CatalogError(f"relation {r} uses letters outside the generator set")
        homog = all(r.is_homogeneous() for r in self.relations)
        if homog != self.homogeneous:
            raise CatalogError(
                "relations are not all homogeneous" if self.homogeneous else "homogeneous flag mismatch"
            )

    @property
    def num_gens(self) -> int:
        return len(self.generators)

    def render(self) -> str:
        lines = [
            f"name: {self.name}",
            f"n: {self.n}",
            f"ring: {ring_descriptor(self.ring)}",
            f"homogeneous: {'true' if self.homogeneous else 'false'}",
        ]
        if any(g.kind == "x" for g in self.generators):
            lines.append("vars: true")
        lines += [render(r) for r in self.relations]
        return "\n".join(lines) + "\n"

    def same_relations(self, other: "Presentation") -> bool:
        return (
            self.n == other.n
            and self.generators == other.generators
            and [r.terms for r in self.relations] == [r.terms for r in other.relations]
        )


def ring_descriptor(ring: Field) -> str:
    if ring == QQ:
        return "Q"
    if isinstance(ring, FractionField):
        return f"Q({','.join(ring.params)})"
    return ring.name


# ---------------------------------------------------------------------
# building blocks


def _b(i, j, n, ring):
    return NCPoly.bracket(i, j, n, ring)


def _triples(n):
    return list(combinations(range(1, n + 1), 3))


def _disjoint_pairs(n):
    pairs = bracket_pairs(n)
    out = []
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            p, q = pairs[a], pairs[b]
            if not set(p) & set(q):
                out.append((p, q))
    return out


def _gn_relations(n, ring, beta=None):
    rels = []
    for i, j, k in _triples(n):
        ij, jk, ik = _b(i, j, n, ring), _b(j, k, n, ring), _b(i, k, n, ring)
        r1 = ij * jk - jk * ik - ik * ij
        r2 = jk * ij - ik * jk - ij * ik
        if beta is not None:
            r1 = r1 - ik.scale(beta)
            r2 = r2 - ik.scale(beta)
        rels += [r1, r2]
    for (a, b), (c, d) in _disjoint_pairs(n):
        rels.append(commutator(_b(a, b, n, ring), _b(c, d, n, ring)))
    return rels


def _bn_relations(n, ring):
    rels = []
    for i, j, k in _triples(n):
        ij, jk, ik = _b(i, j, n, ring), _b(j, k, n, ring), _b(i, k, n, ring)
        rels.append(commutator(ik, ij + jk))
        rels.append(commutator(jk, ij + ik))
    for (a, b), (c, d) in _disjoint_pairs(n):
        rels.append(commutator(_b(a, b, n, ring), _b(c, d, n, ring)))
    return rels


def _all_commute(n, ring):
    pairs = bracket_pairs(n)
    return [
        commutator(_b(*pairs[a], n, ring), _b(*pairs[b], n, ring))
        for a in range(len(pairs))
        for b in range(a + 1, len(pairs))
    ]


def _squares(n, ring, tvals):
    rels = []
    for i, j in bracket_pairs(n):
        x = _b(i, j, n, ring)
        r = x * x
        t = tvals.get((i, j), 0)
        if t:
            r = r - NCPoly.scalar(t, n, ring)
        rels.append(r)
    return rels


def _centrality(n, ring):
    pairs = bracket_pairs(n)
    rels = []
    for p in pairs:
        for q in pairs:
            if p != q:
                x, y = _b(*p, n, ring), _b(*q, n, ring)
                rels.append(commutator(x, y * y))
    return rels


def _t_setup(n, params):
    """Resolve the parameter mode for the t-deformed presets.

    ``params`` is ``"generic"`` (independent t_ij over Q(t_ij)), ``"single"``
    (every t_ij equal to one parameter t) or a mapping ``(i, j) -> number``.
    """
    if params in (None, "generic"):
        names = tuple(tparam(i, j) for i, j in bracket_pairs(n))
        ring = FractionField(names)
        return ring, {p: ring.gen(tparam(*p)) for p in bracket_pairs(n)}, names
    if params == "single":
        ring = FractionField(("t",))
        return ring, {p: ring.gen("t") for p in bracket_pairs(n)}, ("t",)
    if isinstance(params, Mapping):
        vals = {}
        for key, v in params.items():
            if isinstance(key, str):
                m = re.fullmatch(r"t_(\d)(\d)", key)
                if not m:
                    raise CatalogError(f"bad parameter key {key!r}")
                key = (int(m.group(1)), int(m.group(2)))
            vals[tuple(key)] = v
        return QQ, vals, ()
    raise CatalogError(f"unknown parameter mode {params!r}")


def _beta_setup(params):
    if params in (None, "generic"):
        ring = FractionField(("beta",))
        return ring, ring.gen("beta"), ("beta",)
    if isinstance(params, Mapping):
        return QQ, params.get("beta", 0), ()
    return QQ, params, ()


# ---------------------------------------------------------------------


def build(preset: str, n: int, params=None, ring: Field | None = None) -> Presentation:
    """Construct a built-in presentation.

    ``params`` selects the parameter mode for t- and beta-deformed presets
    (see :func:`_t_setup`); ``ring`` overrides the coefficient field for
    parameter-free presets (e.g. a prime field).
    """
    if preset not in PRESETS:
        raise CatalogError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}")
    if n < 2:
        raise CatalogError("rank n must be at least 2")
    base_ring = ring or QQ
    gens = tuple(Bracket(i, j) for i, j in bracket_pairs(n))
    plist: tuple[str, ...] = ()

    if preset == "Gn":
        R = base_ring
        rels = _gn_relations(n, R)
    elif preset == "Bn":
        R = base_ring
        rels = _bn_relations(n, R)
    elif preset in ("Ent", "En0", "Bnt", "Bn0", "Ant", "An0"):
        if preset.endswith("0"):
            R, tv = base_ring, {}
        else:
            R, tv, plist = _t_setup(n, params)
            if not plist and ring is not None:
                R = ring
        if preset in ("Ent", "En0"):
            rels = _gn_relations(n, R) + _centrality(n, R) + _squares(n, R, tv)
        elif preset in ("Bnt", "Bn0"):
            rels = _bn_relations(n, R) + _squares(n, R, tv)
        else:
            rels = _all_commute(n, R)
            for i, j, k in _triples(n):
                ij, jk, ik = _b(i, j, n, R), _b(j, k, n, R), _b(i, k, n, R)
                rels.append(ij * jk - ik * ij - ik * jk)
            rels += _squares(n, R, tv)
    elif preset in ("Lnbeta", "Pnbeta"):
        R, beta, plist = _beta_setup(params)
        if not plist and ring is not None:
            R = ring
        if preset == "Lnbeta":
            rels = _gn_relations(n, R, beta=beta)
        else:
            rels = _all_commute(n, R)
            for i, j in bracket_pairs(n):
                x = _b(i, j, n, R)
                rels.append(x * x - x.scale(beta))
            for i, j, k in _triples(n):
                ij, jk, ik = _b(i, j, n, R), _b(j, k, n, R), _b(i, k, n, R)
                rels.append(ij * jk - jk * ik - ik * ij + ik.scale(beta))
    elif preset == "GnComm":
        R = base_ring
        rels = _all_commute(n, R)
    else:  # TildeGn0
        R = base_ring
        gens = gens + tuple(Var(i) for i in range(1, n + 1))
        rels = _gn_relations(n, R)
        x = [None] + [NCPoly.var(i, n, R) for i in range(1, n + 1)]
        one = NCPoly.one(n, R)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                rels.append(commutator(x[i], x[j]))
        for a, b in bracket_pairs(n):
            ab = _b(a, b, n, R)
            for i in range(1, n + 1):
                if i not in (a, b):
                    rels.append(commutator(x[i], ab))
        for i, j in bracket_pairs(n):
            ij = _b(i, j, n, R)
            rels.append(x[j] * ij - ij * x[i] - one)
            rels.append(x[i] * ij - ij * x[j] + one)
        rels += _squares(n, R, {})

    rels = [r for r in rels if r]
    homogeneous = all(r.is_homogeneous() for r in rels)
    return Presentation(
        name=preset,
        n=n,
        generators=gens,
        relations=tuple(rels),
        ring=R,
        homogeneous=homogeneous,
        params=plist,
        symmetry=SYMMETRY[preset],
    )


# ---------------------------------------------------------------------
# presentation files

_HEADER = re.compile(r"^\s*(name|n|ring|homogeneous|vars)\s*:\s*(.*?)\s*$")


def parse_presentation(text: str) -> Presentation:
    """Parse the text format::

        name: Gn
        n: 3
        ring: Q
        homogeneous: true
        # comment
        [1,2]*[2,3] - [2,3]*[1,3] - [1,3]*[1,2]

    A ``vars: true`` header adds the variables ``x_1..x_n`` as generators.
    """
    header: dict[str, tuple[str, int]] = {}
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m and not body:
            key = m.group(1)
            if key in header:
                raise ParseError(f"duplicate header {key!r}", lineno, 1)
            header[key] = (m.group(2), lineno)
            continue
        if re.match(r"^\s*[A-Za-z]+\s*:", line):
            raise ParseError("unknown or misplaced header line", lineno, 1)
        body.append((lineno, line))
    for key in ("n", "ring"):
        if key not in header:
            raise ParseError(f"missing header {key!r}", 1, 1)
    try:
        n = int(header["n"][0])
    except ValueError:
        raise ParseError("n must be an integer", header["n"][1], 1) from None
    if n < 2:
        raise ParseError("n must be at least 2", header["n"][1], 1)
    try:
        ring = field_from_descriptor(header["ring"][0])
    except (ScalarError, ValueError) as exc:
        raise ParseError(str(exc), header["ring"][1], 1) from None
    declared = header.get("homogeneous", ("false", 0))[0].lower()
    if declared not in ("true", "false"):
        raise ParseError("homogeneous must be true or false", header["homogeneous"][1], 1)
    has_vars = header.get("vars", ("false", 0))[0].lower() == "true"
    rels = []
    for lineno, line in body:
        try:
            r = parse_element(line.replace("= 0", "").replace("=0", ""), n, ring, line=lineno)
        except ParseError:
            raise
        except (FreeAlgebraError, ScalarError) as exc:
            raise ParseError(str(exc), lineno, 1) from None
        if r.has_vars() and not has_vars:
            raise ParseError("variables x_i need a 'vars: true' header", lineno, 1)
        if declared == "true" and not r.is_homogeneous():
            raise ParseError("inhomogeneous relation in a homogeneous presentation", lineno, 1)
        if r:
            rels.append(r)
    gens = tuple(Bracket(i, j) for i, j in bracket_pairs(n))
    if has_vars:
        gens += tuple(Var(i) for i in range(1, n + 1))
    params = ring.params if isinstance(ring, FractionField) else ()
    name = header.get("name", ("custom", 0))[0]
    homogeneous = all(r.is_homogeneous() for r in rels)
    return Presentation(
        name=name,
        n=n,
        generators=gens,
        relations=tuple(rels),
        ring=ring,
        homogeneous=homogeneous,
        params=params,
        symmetry=SYMMETRY.get(name),
    )
