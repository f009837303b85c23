"""Registry of every named verification, in a uniform report format.

Algebra checks live in :mod:`qalg.elements`; this module adds the Hecke,
braid-group and operator checks so the command line can dispatch to all of
them by name.
"""

from __future__ import annotations

import time
from typing import Callable

from . import braid, hecke, qops
from .elements import NAMED, CheckItem, RecipeError, Report, verify_named


def _timed(rep: Report, label: str, ok: bool, t0: float, detail: str = ""):
    rep.items.append(CheckItem(label, "pass" if ok else "fail", time.perf_counter() - t0, detail))


def hecke_limit(n: int = 5, **kw) -> Report:
    rep = Report("hecke-limit", n)
    t0 = time.perf_counter()
    for k, ok, detail in hecke.check_hecke_limit(n):
        _timed(rep, f"lim D_{k} = sum_(i<{k}) (i,{k})", ok, t0, detail)
        t0 = time.perf_counter()
    return rep


def dk_commute_hecke(n: int = 5, **kw) -> Report:
    rep = Report("dk-commute-hecke", n)
    t0 = time.perf_counter()
    for k, l, ok in hecke.check_dk_commute_hecke(n):
        _timed(rep, f"D_{k} D_{l} = D_{l} D_{k}", ok, t0)
        t0 = time.perf_counter()
    return rep


def dk_commute_garside(n: int = 5, **kw) -> Report:
    rep = Report("dk-commute-garside", n)
    t0 = time.perf_counter()
    for k, l, ok in braid.check_dk_commute(n):
        _timed(rep, f"D_{k} D_{l} = D_{l} D_{k}", ok, t0)
        t0 = time.perf_counter()
    return rep


def dk_product(n: int = 4, **kw) -> Report:
    rep = Report("dk-product", n)
    t0 = time.perf_counter()
    for k, ok in braid.check_dk_product(n):
        _timed(rep, f"D_{k} = g_1{k}...g_{k-1},{k}", ok, t0)
        t0 = time.perf_counter()
    return rep


def pure_relations(n: int = 4, **kw) -> Report:
    rep = Report("pure-relations", n)
    t0 = time.perf_counter()
    for r in braid.verify_pure_relations(n):
        _timed(rep, r.label(), r.holds, t0)
        t0 = time.perf_counter()
    return rep


def pi_ykstar(n: int = 5, **kw) -> Report:
    rep = Report("pi-ykstar", n)
    t0 = time.perf_counter()
    for k, ok in braid.check_pi_ykstar(n):
        _timed(rep, "pi(Y*_1) = 1" if k == 1 else f"pi(Y*_{k}) = D_{k}", ok, t0)
        t0 = time.perf_counter()
    return rep


def eps_deformation(n: int = 4, **kw) -> Report:
    rep = Report("eps-deformation", n)
    t0 = time.perf_counter()
    for label, ok in braid.check_eps_deformation(n):
        _timed(rep, f"eps^2 of {label}", ok, t0)
        t0 = time.perf_counter()
    return rep


def _op_report(r: qops.OpReport) -> Report:
    rep = Report(r.name, r.n)
    for label, res in r.items:
        detail = "" if res.equal else f"witness={res.witness_str()} lhs={res.lhs} rhs={res.rhs}"
        rep.items.append(CheckItem(f"{label} (deg<={res.degree})", "pass" if res.equal else "fail", 0.0, detail))
    return rep


def affine_hecke(n: int = 3, deg: int | None = None, **kw) -> Report:
    return _op_report(qops.check_affine_hecke_relations(n, deg if deg is not None else (3 if n <= 3 else 2)))


def y_commute(n: int = 4, deg: int | None = None, **kw) -> Report:
    return _op_report(qops.check_Y_commute(n, deg if deg is not None else 4))


def ystar_commute(n: int = 4, deg: int | None = None, **kw) -> Report:
    return _op_report(qops.check_Y_commute(n, deg if deg is not None else 4, dual=True))


def classical_commute(n: int = 4, deg: int | None = None, reading: str = "composed", **kw) -> Report:
    return _op_report(qops.check_classical_commute(n, deg if deg is not None else 4, reading=reading or "composed"))


def classical_limit(n: int = 3, deg: int | None = None, reading: str = "composed", **kw) -> Report:
    return _op_report(qops.check_classical_limit(n, deg if deg is not None else 3, reading=reading or "composed"))


def product_form(n: int = 3, deg: int | None = None, **kw) -> Report:
    rep = Report("product-form", n)
    d = deg if deg is not None else 3
    for i in range(1, n + 1):
        t0 = time.perf_counter()
        c, res = qops.measure_product_form_power(i, n, d)
        _timed(rep, f"Y_{i} = t^c * product form", c is not None, t0, f"c={c}")
    return rep


EXTRA: dict[str, tuple[Callable[..., Report], str]] = {
    "hecke-limit": (hecke_limit, "quasi-classical limit of D_k is the Jucys-Murphy element"),
    "dk-commute-hecke": (dk_commute_hecke, "D_k commute in the Hecke algebra"),
    "dk-commute-garside": (dk_commute_garside, "D_k commute in the braid group (Garside normal form)"),
    "dk-product": (dk_product, "D_k equals the product of pure braid generators g_ik"),
    "pure-relations": (pure_relations, "pure braid relations under Garside normal form"),
    "pi-ykstar": (pi_ykstar, "image of the dual Dunkl elements in the braid group"),
    "eps-deformation": (eps_deformation, "eps^2 terms of pure braid relations lie in the B_n ideal"),
    "affine-hecke": (affine_hecke, "affine Hecke relations of T_0..T_{n-1}, w and Y_k as operators"),
    "y-commute": (y_commute, "Dunkl-Cherednik operators commute on a slice"),
    "ystar-commute": (ystar_commute, "dual Dunkl-Cherednik operators commute on a slice"),
    "classical-commute": (classical_commute, "classical Dunkl operators commute on a slice"),
    "classical-limit": (classical_limit, "first-order q-expansion of Y_j against classical D_j"),
    "product-form": (product_form, "power of t relating the product form of Y_i"),
}

DEFAULT_N = {
    "fn-t-displayed": 4, "theta-identities-g3": 3, "k30-relations": 3, "bn0-relations": 3, "fourteen-term": 4,
    "fourteen-term-variant": 4, "braid-14-check": 4, "ten-term": 5, "coxeter-tij": 4,
}


def all_checks() -> dict[str, str]:
    out = {name: desc for name, (_, desc) in NAMED.items()}
    out.update({name: desc for name, (_, desc) in EXTRA.items()})
    return dict(sorted(out.items()))


def run_check(name: str, n: int | None = None, deg: int | None = None, **kw) -> Report:
    if name in EXTRA:
        fn, _ = EXTRA[name]
        return fn(n, deg=deg, **kw) if n is not None else fn(deg=deg, **kw)
    if name in NAMED:
        if n is None:
            n = DEFAULT_N.get(name)
            if n is None:
                raise RecipeError(f"check {name!r} needs --n")
        return verify_named(name, n, deg, **kw)
    raise RecipeError(f"unknown check {name!r}")
