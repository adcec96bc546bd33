"""Screening highest weights for possible nonzero second cohomology.

Pipeline for sl(3|2): box scan -> atypical families -> D-eigenvalue screen on
Lambda(D) -> common L0-constituent with the super-exterior square of the
adjoint module (Kac module level) -> closure under duals -> the same test
with the simple module (refined level).  For sl(m|1) the D-screen at module
level already finishes the job.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    LieSuperalgebra,
    Weight,
    as_weight,
    build_algebra,
    d_range_of_U,
    format_weight,
    lambda_of_D,
)
from .characters import decompose_character, kac_l0_decomposition
from .highest_weight import decompose_L0, simple_character
from .modules import adjoint_module, ext_power_eps


class ScreenError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyRecord:
    kind: str
    family: int
    p: Optional[int]
    q: Optional[int]


def _ints(lam: Sequence) -> Tuple[int, ...]:
    w = as_weight(lam)
    if any(x.denominator != 1 for x in w):
        raise ScreenError(f"weight {tuple(str(x) for x in w)} is not integral")
    if sum(w) != 0:
        raise ScreenError("labels must sum to zero")
    return tuple(int(x) for x in w)


def family_instantiation(L: LieSuperalgebra, family: int, p: Optional[int], q: Optional[int]) -> Weight:
    m, n = L.m, L.n
    if n == 1:
        if family == 0:
            if p is None or p < 1:
                raise ScreenError("family (0) needs p >= 1")
            return as_weight((p,) + (1,) * (m - 1) + (-p - (m - 1),))
        if family == 1:
            if q is None or q < 0:
                raise ScreenError("family (1) needs q >= 0")
            return as_weight((0,) * (m - 1) + (-q, q))
    elif (m, n) == (3, 2):
        if family == 0 and p >= q >= 2:
            return as_weight((p, q, 2, -q - 1, -p - 1))
        if family == 1 and p >= 1 >= q:
            return as_weight((p, 1, q, -q, -p - 1))
        if family == 2 and 0 >= p >= q:
            return as_weight((0, p, q, -q, -p))
    else:
        raise ScreenError(f"no family table for {L!r}")
    raise ScreenError(f"parameters out of range for family ({family})")


def family_membership(L: LieSuperalgebra, lam: Sequence) -> Optional[FamilyRecord]:
    w = _ints(lam)
    m, n = L.m, L.n
    kind = L.descriptor
    if n == 1:
        if w[1:m] == (1,) * (m - 1) and w[0] >= 1 and w[m] == -w[0] - (m - 1):
            return FamilyRecord(kind, 0, w[0], None)
        if w[: m - 1] == (0,) * (m - 1) and w[m] == -w[m - 1] and w[m] >= 0:
            return FamilyRecord(kind, 1, None, w[m])
        return None
    if (m, n) == (3, 2):
        L1, L2, L3, L4, L5 = w
        if L3 == 2 and L1 >= L2 >= 2 and L4 == -L2 - 1 and L5 == -L1 - 1:
            return FamilyRecord(kind, 0, L1, L2)
        if L2 == 1 and L1 >= 1 >= L3 and L4 == -L3 and L5 == -L1 - 1:
            return FamilyRecord(kind, 1, L1, L3)
        if L1 == 0 and 0 >= L2 >= L3 and L4 == -L3 and L5 == -L2:
            return FamilyRecord(kind, 2, L2, L3)
        return None
    raise ScreenError(f"no family table for {L!r}")


def dual_weight_table(L: LieSuperalgebra, lam: Sequence) -> Weight:
    """Highest weight of V(lam)^* for family weights, by the closed-form table."""
    rec = family_membership(L, lam)
    if rec is None:
        raise ScreenError("dual table covers family weights only")
    if L.n == 1:
        if rec.family == 1:
            q = rec.q
            if q == 0:
                return as_weight(lam)
            return family_instantiation(L, 0, q, None)
        return family_instantiation(L, 1, None, rec.p)
    p, q = rec.p, rec.q
    if rec.family == 0:
        if p > q:
            return as_weight((0, 1 - q, 1 - p, p - 1, q - 1))
        return as_weight((0, -p, -p, p, p))
    if rec.family == 1:
        if q < 1:
            return as_weight((1 - q, 1, 1 - p, p - 1, q - 2))
        if p >= 2:
            return as_weight((0, 0, 1 - p, p - 1, 0))
        return as_weight((0, -1, -1, 1, 1))
    # family (2): invert the rows above
    if p == 0 and q == 0:
        return as_weight((0, 0, 0, 0, 0))
    if p == q == -1:
        return as_weight((1, 1, 1, -1, -2))
    if p == q:
        return as_weight((-p, -p, 2, p - 1, p - 1))
    if p == 0:
        return as_weight((1 - q, 1, 1, -1, q - 2))
    # (0, 1-q', 1-p' | ...) with p' > q' >= 2
    P, Q = 1 - q, 1 - p
    return as_weight((P, Q, 2, -Q - 1, -P - 1))


def lowest_weight(char: Dict[Weight, int]) -> Weight:
    from .algebra import root_height

    return min(char, key=lambda w: (root_height(w), w))


def dual_weight_module(L: LieSuperalgebra, lam: Sequence) -> Weight:
    """Highest weight of V(lam)^* = minus the lowest weight of V(lam)."""
    ch = simple_character(L, lam)
    return tuple(-x for x in lowest_weight(ch))


def dual_closure_filter(L: LieSuperalgebra, weights: Iterable[Weight], dual=None) -> List[Weight]:
    dual = dual or (lambda w: dual_weight_table(L, w))
    current = [as_weight(w) for w in weights]
    while True:
        s = set(current)
        nxt = [w for w in current if dual(w) in s]
        if len(nxt) == len(current):
            return nxt
        current = nxt


# ---------------------------------------------------------------------------
# screens


@dataclass
class DVerdict:
    passed: bool
    eigenvalues: List[Fraction]
    offending: List[Fraction]


def d_screen(L: LieSuperalgebra, lam: Sequence, level: str = "weight") -> DVerdict:
    lo, hi = d_range_of_U(L)
    if level == "weight":
        vals = [lambda_of_D(lam, L.m)]
    elif level == "module":
        ch = simple_character(L, lam)
        vals = sorted({sum(w[L.m:], Fraction(0)) for w in ch})
    else:
        raise ScreenError(f"unknown screen level {level!r}")
    bad = [v for v in vals if not lo <= v <= hi]
    return DVerdict(not bad, vals, bad)


_EXT_CLASSES: Dict[str, Dict[Weight, int]] = {}


def ext_square_classes(L: LieSuperalgebra) -> Dict[Weight, int]:
    """L0 highest weights (with multiplicity) of the super-exterior square of L."""
    key = L.descriptor
    if key not in _EXT_CLASSES:
        _EXT_CLASSES[key] = decompose_L0(ext_power_eps(adjoint_module(L), 2))
    return _EXT_CLASSES[key]


def kac_common_constituent_screen(L: LieSuperalgebra, lam: Sequence) -> Tuple[bool, List[Weight]]:
    """Whether the Kac module and Lambda^2_eps(L) share an L0-class; returns the shared classes."""
    ext = ext_square_classes(L)
    kac = kac_l0_decomposition(L.m, L.n, as_weight(lam))
    common = sorted(set(ext) & set(kac))
    return bool(common), common


def simple_l0_decomposition(L: LieSuperalgebra, lam: Sequence) -> Dict[Weight, int]:
    return decompose_character(L.m, simple_character(L, lam))


def refined_screen(L: LieSuperalgebra, lam: Sequence) -> Tuple[bool, List[Weight], Dict[Weight, int]]:
    ext = ext_square_classes(L)
    dec = simple_l0_decomposition(L, lam)
    common = sorted(set(ext) & set(dec))
    return bool(common), common, dec


def scan_box(L: LieSuperalgebra, window: int) -> List[Weight]:
    """Integral block-dominant weights with labels in [-window, window] summing to zero."""
    m, n = L.m, L.n
    rng = range(window, -window - 1, -1)
    out = []
    for a in itertools.combinations_with_replacement(rng, m):
        s = sum(a)
        for b in itertools.combinations_with_replacement(rng, n):
            if s + sum(b) == 0:
                out.append(as_weight(a + b))
    return out


def out_of_family_sample(L: LieSuperalgebra, count: int, window: int, seed: int = 0) -> List[Weight]:
    """``count`` distinct integral dominant weights in the box that lie in no family."""
    pool = [w for w in scan_box(L, window) if family_membership(L, w) is None]
    if len(pool) < count:
        raise ScreenError("window too small for the requested sample")
    return random.Random(seed).sample(pool, count)


def tau_orbits(L: LieSuperalgebra, weights: Sequence[Weight]) -> List[Tuple[Weight, ...]]:
    """V^tau is the dual module, so orbits pair each weight with its dual."""
    seen, out = set(), []
    for w in weights:
        if w in seen:
            continue
        d = dual_weight_table(L, w)
        orbit = (w,) if d == w else (w, d)
        seen.update(orbit)
        out.append(orbit)
    return out


@dataclass
class ScreenReport:
    algebra: str
    window: int
    d_range: Tuple[int, int]
    verdicts: Dict[str, dict] = field(default_factory=dict)
    stages: Dict[str, List[str]] = field(default_factory=dict)
    tau_orbits: List[List[str]] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def stage(self, name: str) -> List[str]:
        return self.stages.get(name, [])

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "window": self.window,
            "d_range": list(self.d_range),
            "stages": self.stages,
            "tau_orbits": self.tau_orbits,
            "verdicts": self.verdicts,
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
            "warnings": self.warnings,
        }


def _refined_job(args):
    desc, lam = args
    kind, m, n = desc.split(":")
    L = build_algebra(kind, int(m), int(n))
    ok, common, dec = refined_screen(L, lam)
    lo, hi = d_range_of_U(L)
    dvals = sorted({sum(w[L.m:], Fraction(0)) for w in dec})
    return lam, ok, common, dec, dvals


def run_screen(L: LieSuperalgebra, window: int = 12, jobs: int = 1) -> ScreenReport:
    m = L.m
    fmt = lambda w: format_weight(w, m)  # noqa: E731
    rep = ScreenReport(L.descriptor, window, d_range_of_U(L))
    if (L.m, L.n) == (3, 2) and window < 8:
        rep.warnings.append("window below 8 cannot contain the full candidate list")
    t = time.perf_counter()
    fam = []
    for w in scan_box(L, window):
        rec = family_membership(L, w)
        if rec is not None:
            fam.append(w)
            rep.verdicts[fmt(w)] = {"family": rec.family, "p": rec.p, "q": rec.q, "Lambda(D)": str(lambda_of_D(w, m))}
    rep.stages["families"] = [fmt(w) for w in fam]
    rep.timings["families"] = time.perf_counter() - t

    t = time.perf_counter()
    d_pass = []
    for w in fam:
        v = d_screen(L, w, "weight")
        rep.verdicts[fmt(w)]["d_screen_weight"] = v.passed
        if v.passed:
            d_pass.append(w)
    rep.stages["d_screen_weight"] = [fmt(w) for w in d_pass]
    rep.timings["d_screen_weight"] = time.perf_counter() - t

    if L.n == 1:
        t = time.perf_counter()
        final = []
        for w in d_pass:
            v = d_screen(L, w, "module")
            rep.verdicts[fmt(w)]["d_screen_module"] = v.passed
            rep.verdicts[fmt(w)]["d_eigenvalues"] = [str(x) for x in v.eigenvalues]
            if v.passed:
                final.append(w)
        rep.stages["d_screen_module"] = [fmt(w) for w in final]
        rep.stages["final"] = [fmt(w) for w in final]
        rep.timings["d_screen_module"] = time.perf_counter() - t
        rep.tau_orbits = [[fmt(x) for x in o] for o in tau_orbits(L, final)]
        return rep

    t = time.perf_counter()
    kac_pass = []
    for w in d_pass:
        ok, common = kac_common_constituent_screen(L, w)
        rep.verdicts[fmt(w)]["kac_screen"] = ok
        rep.verdicts[fmt(w)]["kac_common_classes"] = [fmt(c) for c in common]
        if ok:
            kac_pass.append(w)
    rep.stages["kac_screen"] = [fmt(w) for w in kac_pass]
    rep.timings["kac_screen"] = time.perf_counter() - t

    t = time.perf_counter()
    closed = dual_closure_filter(L, kac_pass)
    for w in kac_pass:
        rep.verdicts[fmt(w)]["dual"] = fmt(dual_weight_table(L, w))
        rep.verdicts[fmt(w)]["dual_closure"] = w in closed
    rep.stages["dual_closure"] = [fmt(w) for w in closed]
    rep.timings["dual_closure"] = time.perf_counter() - t

    t = time.perf_counter()
    tasks = [(L.descriptor, w) for w in closed]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_refined_job, tasks))
    else:
        results = [_refined_job(x) for x in tasks]
    refined = []
    lo, hi = rep.d_range
    for lam, ok, common, dec, dvals in results:
        v = rep.verdicts[fmt(lam)]
        v["refined_screen"] = ok
        v["refined_common_classes"] = [fmt(c) for c in common]
        v["simple_l0_constituents"] = {fmt(c): k for c, k in sorted(dec.items())}
        v["multiplicity_free"] = all(k == 1 for k in dec.values())
        v["d_eigenvalues"] = [str(x) for x in dvals]
        v["d_screen_module"] = all(lo <= x <= hi for x in dvals)
        if ok:
            refined.append(lam)
    refined = [w for w in closed if w in refined]
    rep.stages["refined"] = [fmt(w) for w in refined]
    rep.stages["final"] = rep.stages["refined"]
    rep.timings["refined"] = time.perf_counter() - t
    rep.tau_orbits = [[fmt(x) for x in o] for o in tau_orbits(L, refined)]
    return rep
