"""Reproduction checks grouped into suites.

Each check returns ``(ok, detail)``.  With a time budget or several jobs the
checks run in forked worker processes so that an overrun can be stopped; a
check that does not fit the remaining budget is marked skipped.
"""

from __future__ import annotations

import multiprocessing as mp
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import as_weight, build_algebra, d_range_of_U, format_weight
from .linalg import set_modular_prepass

SUITES = ("core", "sl-m1", "sl32-light", "sl32-heavy", "all")

EXIT_OK, EXIT_MISMATCH, EXIT_SKIPPED, EXIT_USAGE = 0, 1, 2, 3

CheckResult = Tuple[bool, Dict]

# sl(3|2) candidates surviving the Kac-module screen and dual closure
KAC_LEVEL_WEIGHTS = [
    (0, 0, 0, 0, 0),
    (1, 1, 1, -1, -2), (0, -1, -1, 1, 1),
    (2, 1, 1, -1, -3), (0, 0, -1, 1, 0),
    (1, 1, 0, 0, -2),
    (3, 1, 1, -1, -4), (0, 0, -2, 2, 0),
    (2, 1, 0, 0, -3), (1, 1, -1, 1, -2),
    (3, 1, 0, 0, -4), (1, 1, -2, 2, -2),
    (2, 1, -1, 1, -3),
]
# removed once V(lambda) replaces the Kac module
RULED_OUT_WEIGHTS = [(3, 1, 0, 0, -4), (1, 1, -2, 2, -2), (2, 1, -1, 1, -3)]


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    criterion: int
    fn: Callable[[], CheckResult]
    est_seconds: float


# ---------------------------------------------------------------------------
# individual checks


def check_algebra_consistency() -> CheckResult:
    from .consistency import algebra_checks

    out = {}
    for d in (("sl", 2, 1), ("gl", 2, 1), ("sl", 3, 1), ("gl", 3, 1), ("sl", 3, 2), ("gl", 3, 2)):
        out[":".join(map(str, d))] = algebra_checks(build_algebra(*d))
    return all(all(v.values()) for v in out.values()), out


def small_modules():
    from .highest_weight import kac_module, simple_module
    from .modules import (
        adjoint_module,
        build_V_realization,
        dual_module,
        ext_power_eps,
        natural_module,
        restrict_to_sl,
        sym_power_eps,
        tau_twist,
        trivial_module,
    )

    s21 = build_algebra("sl", 2, 1)
    s31 = build_algebra("sl", 3, 1)
    s32 = build_algebra("sl", 3, 2)
    out = []
    for L in (s21, s31, s32):
        out += [trivial_module(L), adjoint_module(L), natural_module(L)]
        out += [dual_module(natural_module(L)), tau_twist(adjoint_module(L))]
        if L.n == 1:
            out.append(natural_module(L, "section3"))
    for m in (2, 3):
        V = build_V_realization(m, "gl")
        out += [V, restrict_to_sl(V, build_algebra("sl", m, 1))]
    out += [sym_power_eps(adjoint_module(s21), 2), ext_power_eps(adjoint_module(s21), 2)]
    out += [kac_module(s21, (1, 0, -1)), simple_module(s21, (1, 1, -2)), simple_module(s31, (0, 0, -1, 1))]
    out += [kac_module(s32, (0, 0, 0, 0, 0)), simple_module(s32, (1, 1, 1, -1, -2))]
    return out


def check_representations() -> CheckResult:
    from .modules import is_representation, weights_consistent

    bad = []
    mods = small_modules()
    for M in mods:
        if not is_representation(M) or not weights_consistent(M):
            bad.append(f"{M.algebra.descriptor} {M.descriptor}")
    return not bad, {"checked": len(mods), "failed": bad}


def check_dd_zero() -> CheckResult:
    from .cohomology import check_dd_zero as ddz
    from .modules import adjoint_module, build_V_realization, natural_module, trivial_module

    s21, g21 = build_algebra("sl", 2, 1), build_algebra("gl", 2, 1)
    pairs = [(s21, trivial_module(s21)), (s21, adjoint_module(s21)), (s21, natural_module(s21)),
             (g21, build_V_realization(2, "gl")), (g21, adjoint_module(g21))]
    out = {}
    for L, V in pairs:
        out[f"{L.descriptor} {V.descriptor}"] = ddz(L, V, 0) and ddz(L, V, 1)
    return all(out.values()), out


def check_oracle_equivalence() -> CheckResult:
    from .cohomology import cohomology
    from .modules import adjoint_module, build_V_realization, natural_module, restrict_to_sl, trivial_module

    L = build_algebra("sl", 2, 1)
    mods = {"trivial": trivial_module(L), "adjoint": adjoint_module(L), "natural": natural_module(L),
            "real:2": restrict_to_sl(build_V_realization(2, "gl"), L)}
    out, ok = {}, True
    for name, V in mods.items():
        dims = []
        for n in (0, 1, 2):
            r = cohomology(L, V, n, method="both", representatives=False)
            ok &= not r.flags
            dims.append(r.dim_H)
        out[name] = dims
    return ok, out


def check_trivial_H2_slm1() -> CheckResult:
    from .cohomology import cohomology, invariant_cochains
    from .modules import trivial_module

    out, ok = {}, True
    for m in (2, 3, 4):
        L = build_algebra("sl", m, 1)
        K = trivial_module(L)
        h = cohomology(L, K, 2, "invariant", representatives=False).dim_H
        c = len(invariant_cochains(L, K, 2))
        out[m] = {"dim_H2": h, "dim_C2_inv": c}
        ok &= h == 0 and c == 1
    return ok, out


def check_gl_invariant_cochains() -> CheckResult:
    from .cohomology import invariant_cochains
    from .extension import cocycle_relation_g
    from .modules import build_V_realization

    out, ok = {}, True
    for m in (2, 3):
        gl = build_algebra("gl", m, 1)
        c = len(invariant_cochains(gl, build_V_realization(m, "gl"), 2))
        rel = cocycle_relation_g(m)
        out[m] = {"dim_C2_inv": c, "relation_a_plus_b": rel.relation_a_plus_b_zero,
                  "coboundary_formula": rel.triple_formula_ok}
        ok &= c == 3 and rel.relation_a_plus_b_zero and rel.triple_formula_ok
    return ok, out


def check_realization_H2() -> CheckResult:
    from .cohomology import cohomology
    from .modules import build_V_realization, restrict_to_sl

    out, ok = {}, True
    for m in (2, 3, 4):
        gl, sl = build_algebra("gl", m, 1), build_algebra("sl", m, 1)
        V = build_V_realization(m, "gl")
        rg = cohomology(gl, V, 2, "invariant")
        rs = cohomology(sl, restrict_to_sl(V, sl), 2, "invariant", representatives=False)
        out[m] = {"gl": rg.dim_H, "sl": rs.dim_H, "gl_rep_is_coboundary": rg.representative_is_coboundary}
        ok &= rg.dim_H == 1 and rs.dim_H == 0 and rg.representative_is_coboundary == [False]
    return ok, out


def check_extension() -> CheckResult:
    from .extension import check_extension_theorem

    out = {m: check_extension_theorem(m).holds for m in (2, 3)}
    return all(out.values()), out


def check_d_laws() -> CheckResult:
    from .highest_weight import simple_module
    from .modules import d_eigenvalues

    L = build_algebra("sl", 3, 1)
    out, ok = {}, True
    for p in (1, 2):
        ev = sorted(set(d_eigenvalues(simple_module(L, (0, 0, -p, p)))))
        out[f"p={p}"] = [str(x) for x in ev]
        ok &= ev == [Fraction(p + k) for k in range(3)]
    for m in (2, 3, 4):
        r = d_range_of_U(build_algebra("sl", m, 1))
        out[f"range sl({m}|1)"] = list(r)
        ok &= tuple(r) == (-m, m)
    r = d_range_of_U(build_algebra("sl", 3, 2))
    out["range sl(3|2)"] = list(r)
    ok &= tuple(r) == (-6, 6)
    return ok, out


def check_realization_crosscheck() -> CheckResult:
    from .highest_weight import decompose_L0, simple_module
    from .modules import build_V_realization

    out, ok = {}, True
    for m in (2, 3, 4):
        L = build_algebra("sl", m, 1)
        S = simple_module(L, (0,) * (m - 1) + (-1, 1))
        V = build_V_realization(m, "sl")
        same = (S.dim == V.dim == 2 ** m - 1 and S.weight_multiset() == V.weight_multiset()
                and decompose_L0(S) == decompose_L0(V))
        out[m] = {"dim": S.dim, "match": same}
        ok &= same
    return ok, out


def check_slm1_screen() -> CheckResult:
    from .screening import run_screen

    out, ok = {}, True
    for m in (2, 3, 4):
        L = build_algebra("sl", m, 1)
        rep = run_screen(L, window=m + 3)
        want = {format_weight((1,) * m + (-m,), m), format_weight((0,) * (m + 1), m),
                format_weight((0,) * (m - 1) + (-1, 1), m)}
        out[m] = rep.stages["final"]
        ok &= set(rep.stages["final"]) == want
    return ok, out


def check_sl32_counts() -> CheckResult:
    from .characters import kac_character, l0_dimension
    from .highest_weight import decompose_L0, kac_module
    from .modules import adjoint_module, ext_power_eps

    L = build_algebra("sl", 3, 2)
    E = ext_power_eps(adjoint_module(L), 2)
    dec = decompose_L0(E)
    n27 = sum(dec.values())
    kac = {}
    ok = E.dim == 288 and n27 == 27
    for w in KAC_LEVEL_WEIGHTS:
        d = sum(kac_character(3, 2, w).values())
        kac[format_weight(w, 3)] = d
        ok &= d == 64 * l0_dimension(3, w)
    for w in [(0, 0, 0, 0, 0), (1, 1, 1, -1, -2), (0, -1, -1, 1, 1)]:
        ok &= kac_module(L, w).dim == 64 * l0_dimension(3, w)
    return ok, {"dim_ext2": E.dim, "l0_constituents": n27, "kac_dims": kac}


def check_sl32_screen() -> CheckResult:
    from .screening import run_screen

    L = build_algebra("sl", 3, 2)
    rep = run_screen(L, 12)
    kac = set(rep.stages["dual_closure"])
    ref = set(rep.stages["refined"])
    want_kac = {format_weight(w, 3) for w in KAC_LEVEL_WEIGHTS}
    want_ref = want_kac - {format_weight(w, 3) for w in RULED_OUT_WEIGHTS}
    ok = kac == want_kac and ref == want_ref and len(rep.tau_orbits) == 6
    ok &= all(rep.verdicts[w].get("multiplicity_free") for w in ref)
    return ok, {"kac_level": len(kac), "refined": len(ref), "tau_orbits": len(rep.tau_orbits),
                "pre_filter": rep.stages["kac_screen"]}


def dual_table_instances(max_kac_dim: Optional[int] = None):
    from .characters import l0_dimension

    L = build_algebra("sl", 3, 2)
    from .screening import family_instantiation

    out = []
    for p in range(2, 4):
        for q in range(2, p + 1):
            out.append(family_instantiation(L, 0, p, q))
    for p in range(1, 4):
        for q in range(-3, 2):
            out.append(family_instantiation(L, 1, p, q))
    for p in range(0, -4, -1):
        for q in range(p, -4, -1):
            out.append(family_instantiation(L, 2, p, q))
    if max_kac_dim is not None:
        out = [w for w in out if 64 * l0_dimension(3, w) <= max_kac_dim]
    return out


def _dual_table(max_kac_dim) -> CheckResult:
    from .screening import dual_weight_module, dual_weight_table

    L = build_algebra("sl", 3, 2)
    bad = []
    inst = dual_table_instances(max_kac_dim)
    for w in inst:
        if dual_weight_table(L, w) != dual_weight_module(L, w):
            bad.append(format_weight(w, 3))
    return not bad, {"instances": len(inst), "mismatches": bad}


def check_dual_table_light() -> CheckResult:
    return _dual_table(3000)


def check_dual_table_full() -> CheckResult:
    return _dual_table(None)


def check_sl32_H2() -> CheckResult:
    from .cohomology import cohomology
    from .descriptors import build_module

    L = build_algebra("sl", 3, 2)
    want = {"hw:1,1,1/-1,-2": 1, "hw:0,-1,-1/1,1": 1, "trivial": 0, "adjoint": 0}
    out = {}
    for d, h in want.items():
        out[d] = cohomology(L, build_module(L, d), 2, "invariant", representatives=False).dim_H
    return out == want, out


def check_S2_structure() -> CheckResult:
    from .cohomology import cohomology
    from .highest_weight import composition_factors
    from .modules import adjoint_module, sym_power_eps
    from .structure import analyze_W_structure
    from .submodules import invariants

    L = build_algebra("sl", 3, 2)
    S2 = sym_power_eps(adjoint_module(L), 2)
    cf = sorted(format_weight(w, 3) for w in composition_factors(S2))
    want_cf = sorted(format_weight(as_weight(w), 3) for w in
                     [(2, 0, 0, -1, -1), (1, 0, 0, 0, -1), (1, 1, 0, 0, -2), (0,) * 5, (0,) * 5])
    inv = invariants(S2, "L").dim
    W = analyze_W_structure(L)
    h = {n: cohomology(L, S2, n, "invariant", representatives=False).dim_H for n in (0, 1, 2)}
    w_ok = (W.chain_dims == [120, 119, 1, 0] and W.direct_sum and W.quotient_trivial and W.w1_indecomposable
            and W.w_socle_simple and W.l0_invariant_outside_w1 and "?" not in W.factor_weights)
    ok = cf == want_cf and inv == 1 and w_ok and h == {0: 1, 1: 0, 2: 0}
    return ok, {"composition_factors": cf, "invariants": inv, "W": W.as_dict(), "H": h}


def check_negative_control(seed: int = 2024, count: int = 5) -> CheckResult:
    from .cohomology import cohomology
    from .highest_weight import simple_module
    from .screening import family_membership, out_of_family_sample

    L = build_algebra("sl", 2, 1)
    ws = out_of_family_sample(L, count, window=4, seed=seed)
    out = {}
    for w in ws:
        out[format_weight(w, 2)] = {
            "family": family_membership(L, w),
            "dim_H2": cohomology(L, simple_module(L, w), 2, "invariant", representatives=False).dim_H,
        }
    ok = len(ws) == count and all(v["family"] is None and v["dim_H2"] == 0 for v in out.values())
    return ok, out


CHECKS: List[Check] = [
    Check("algebra_consistency", "core", 1, check_algebra_consistency, 2),
    Check("representations", "core", 1, check_representations, 3),
    Check("dd_zero", "core", 1, check_dd_zero, 2),
    Check("oracle_equivalence_sl21", "core", 2, check_oracle_equivalence, 3),
    Check("trivial_H2_slm1", "sl-m1", 3, check_trivial_H2_slm1, 3),
    Check("gl_invariant_cochains", "sl-m1", 4, check_gl_invariant_cochains, 3),
    Check("realization_H2", "sl-m1", 5, check_realization_H2, 5),
    Check("extension_theorem", "sl-m1", 5, check_extension, 5),
    Check("d_eigenvalue_laws", "sl-m1", 6, check_d_laws, 2),
    Check("realization_crosscheck", "sl-m1", 7, check_realization_crosscheck, 3),
    Check("slm1_screen", "sl-m1", 6, check_slm1_screen, 3),
    Check("negative_control_sl21", "sl-m1", 12, check_negative_control, 3),
    Check("sl32_structural_counts", "sl32-light", 8, check_sl32_counts, 5),
    Check("sl32_screen", "sl32-light", 9, check_sl32_screen, 20),
    Check("sl32_dual_table_light", "sl32-light", 9, check_dual_table_light, 15),
    Check("sl32_H2", "sl32-light", 10, check_sl32_H2, 5),
    Check("sl32_dual_table_full", "sl32-heavy", 9, check_dual_table_full, 120),
    Check("S2_structure", "sl32-heavy", 11, check_S2_structure, 20),
]


def checks_for(suite: str) -> List[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [c for c in CHECKS if suite == "all" or c.suite == suite]


def _run_one(check: Check) -> Dict:
    t = time.perf_counter()
    try:
        ok, detail = check.fn()
        status = "pass" if ok else "fail"
    except Exception as e:  # a crash is a mismatch, keep the trace
        status, detail = "fail", {"error": repr(e), "trace": traceback.format_exc(limit=4)}
    return {"name": check.name, "suite": check.suite, "criterion": check.criterion, "status": status,
            "elapsed": time.perf_counter() - t, "detail": _jsonable(detail)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return x


def _child(check: Check, conn) -> None:
    conn.send(_run_one(check))
    conn.close()


def _skipped(check: Check, why: str) -> Dict:
    return {"name": check.name, "suite": check.suite, "criterion": check.criterion, "status": "skipped",
            "elapsed": 0.0, "detail": {"reason": why}}


def run_suite(
    suite: str,
    jobs: int = 1,
    budget_minutes: Optional[float] = None,
    modular_prepass: bool = True,
) -> Tuple[List[Dict], int]:
    set_modular_prepass(modular_prepass)
    checks = checks_for(suite)
    if budget_minutes is None and jobs <= 1:
        records = [_run_one(c) for c in checks]
        return records, exit_code(records)

    deadline = time.monotonic() + (budget_minutes * 60 if budget_minutes is not None else float("inf"))
    ctx = mp.get_context("fork")
    pending = list(checks)
    running: Dict[str, tuple] = {}
    done: Dict[str, Dict] = {}
    while pending or running:
        while pending and len(running) < max(jobs, 1):
            c = pending.pop(0)
            left = deadline - time.monotonic()
            if c.est_seconds > left:
                done[c.name] = _skipped(c, f"estimated {c.est_seconds}s exceeds remaining budget")
                continue
            recv, send = ctx.Pipe(duplex=False)
            p = ctx.Process(target=_child, args=(c, send), daemon=True)
            p.start()
            running[c.name] = (c, p, recv)
        for name, (c, p, recv) in list(running.items()):
            if recv.poll():
                done[name] = recv.recv()
                p.join()
                del running[name]
            elif not p.is_alive():
                done[name] = {"name": c.name, "suite": c.suite, "criterion": c.criterion, "status": "fail",
                              "elapsed": 0.0, "detail": {"error": f"worker exited with {p.exitcode}"}}
                del running[name]
            elif time.monotonic() > deadline:
                p.terminate()
                p.join()
                done[name] = _skipped(c, "budget exceeded, partial result withheld")
                del running[name]
        time.sleep(0.05)
    records = [done[c.name] for c in checks]
    return records, exit_code(records)


def exit_code(records: List[Dict]) -> int:
    if any(r["status"] == "fail" for r in records):
        return EXIT_MISMATCH
    if any(r["status"] == "skipped" for r in records):
        return EXIT_SKIPPED
    return EXIT_OK
