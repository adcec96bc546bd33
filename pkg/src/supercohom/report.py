"""JSON, TSV and PNG output for CLI runs.

Figures use the Agg backend so runs work without a display.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _paths(out: str | Path):
    out = Path(out)
    if out.suffix.lower() == ".json":
        stem = out.with_suffix("")
    else:
        stem = out
        out = out.with_suffix(".json")
    out.parent.mkdir(parents=True, exist_ok=True)
    return out, stem.with_suffix(".tsv"), stem


def write_json(path: Path, record: dict) -> None:
    path.write_text(json.dumps(record, indent=2, sort_keys=False) + "\n")


def write_tsv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(["" if x is None else x for x in r])


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


# ---------------------------------------------------------------------------


def cohomology_outputs(report, out) -> List[Path]:
    js, tsv, stem = _paths(out)
    rec = report.as_dict()
    write_json(js, rec)
    write_tsv(
        tsv,
        ["algebra", "module", "degree", "method", "dim_H", "dim_kernel", "rank_prev", "elapsed_s", "flags"],
        [[report.algebra, report.module, report.degree, report.method, report.dim_H,
          report.dim_kernel, report.rank_prev, f"{report.elapsed:.3f}", ";".join(report.flags)]],
    )
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    keys = list(report.cochain_dims)
    vals = [report.cochain_dims[k] for k in keys]
    ax.bar(range(len(keys)), vals, color="0.55")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=30, ha="right", fontsize=8)
    ax.set_yscale("log")
    ax.set_ylabel("dimension")
    ax.set_title(f"H^{report.degree}({report.algebra}, {report.module}) = {report.dim_H}", fontsize=9)
    png = _save(fig, stem.with_name(stem.name + "_cochains.png"))
    return [js, tsv, png]


STAGE_ORDER = ("families", "d_screen_weight", "d_screen_module", "kac_screen", "dual_closure", "refined")


def screen_outputs(report, out) -> List[Path]:
    js, tsv, stem = _paths(out)
    write_json(js, report.as_dict())
    cols = ["family", "p", "q", "Lambda(D)", "d_screen_weight", "d_screen_module", "kac_screen",
            "dual", "dual_closure", "refined_screen"]
    write_tsv(tsv, ["weight"] + cols, ([w] + [v.get(c) for c in cols] for w, v in report.verdicts.items()))

    stages = [s for s in STAGE_ORDER if s in report.stages]
    counts = [len(report.stages[s]) for s in stages]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.barh(range(len(stages)), counts, color="0.45")
    ax.set_yticks(range(len(stages)))
    ax.set_yticklabels(stages, fontsize=8)
    ax.invert_yaxis()
    ax.set_xscale("log")
    for i, c in enumerate(counts):
        ax.text(c, i, f" {c}", va="center", fontsize=8)
    ax.set_xlabel("surviving weights")
    ax.set_title(f"{report.algebra}, window {report.window}", fontsize=9)
    funnel = _save(fig, stem.with_name(stem.name + "_stages.png"))

    # Lambda(D) against the family index, survivors highlighted
    fig, ax = plt.subplots(figsize=(6, 3.2))
    final = set(report.stages.get("final", []))
    for w, v in report.verdicts.items():
        x = float(Fraction(v["Lambda(D)"]))
        y = v["family"]
        ax.plot(x, y, "o", ms=3.5 if w in final else 2, color="k" if w in final else "0.7")
    lo, hi = report.d_range
    ax.axvspan(lo, hi, color="0.9", zorder=0)
    ax.set_xlabel("Lambda(D)")
    ax.set_yticks(sorted({v["family"] for v in report.verdicts.values()}))
    ax.set_ylabel("family")
    ax.set_title("family weights in the window (dark: final list)", fontsize=9)
    scatter = _save(fig, stem.with_name(stem.name + "_lambdaD.png"))
    return [js, tsv, funnel, scatter]


def verify_outputs(records: List[Dict], out) -> List[Path]:
    js, tsv, stem = _paths(out)
    write_json(js, {"checks": records})
    write_tsv(tsv, ["check", "suite", "status", "elapsed_s", "detail"],
              ([r["name"], r["suite"], r["status"], f"{r.get('elapsed', 0):.2f}", r.get("detail", "")] for r in records))
    colors = {"pass": "0.35", "fail": "tab:red", "skipped": "0.8"}
    fig, ax = plt.subplots(figsize=(6.5, 0.28 * len(records) + 1.2))
    names = [r["name"] for r in records]
    ax.barh(range(len(records)), [max(r.get("elapsed", 0), 1e-3) for r in records],
            color=[colors.get(r["status"], "k") for r in records])
    ax.set_yticks(range(len(records)))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("seconds (grey pass, red fail, light skipped)")
    png = _save(fig, stem.with_name(stem.name + "_checks.png"))
    return [js, tsv, png]
