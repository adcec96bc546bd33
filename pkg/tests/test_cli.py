from __future__ import annotations

import json

import pytest

from supercohom.algebra import build_algebra
from supercohom.cache import ModuleCache, module_from_record, module_to_record
from supercohom.cli import main
from supercohom.descriptors import DescriptorError, build_module, parse_module
from supercohom.modules import is_representation
from supercohom.verify import EXIT_SKIPPED, EXIT_USAGE, exit_code, run_suite


def test_algebra_info_json(capsys):
    assert main(["algebra", "sl:3:2", "info", "--json"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dim"] == 24 and info["dim_odd"] == 12
    assert info["d_range_of_U"] == [-6, 6]
    assert info["z_grading"] == {"-1": 6, "0": 12, "1": 6}


def test_usage_errors(capsys):
    assert main(["algebra", "sl:2:2", "info"]) == EXIT_USAGE
    assert main(["cohomology", "--algebra", "sl:2:1", "--module", "bogus", "--degree", "1"]) == EXIT_USAGE
    assert main(["screen", "--algebra", "sl:2:3"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["cohomology", "--algebra", "sl:2:1", "--module", "trivial", "--degree", "5"])
    assert e.value.code == EXIT_USAGE


def test_cohomology_outputs(tmp_path, capsys):
    out = tmp_path / "h2.json"
    code = main(["cohomology", "--algebra", "gl:2:1", "--module", "real:2", "--degree", "2",
                 "--method", "both", "--out", str(out)])
    assert code == 0
    assert "= 1" in capsys.readouterr().out
    rec = json.loads(out.read_text())
    assert rec["dim_H"] == 1 and rec["representative_is_coboundary"] == [False]
    assert out.with_suffix(".tsv").exists()
    assert list(tmp_path.glob("*.png"))


def test_screen_outputs(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert main(["screen", "--algebra", "sl:3:1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "(0,0,-1|1)" in text
    rec = json.loads(out.read_text())
    assert len(rec["stages"]["final"]) == 3
    assert len(list(tmp_path.glob("*.png"))) == 2


def test_verify_cli(tmp_path, capsys):
    out = tmp_path / "v.json"
    assert main(["verify-paper", "--suite", "core", "--out", str(out)]) == 0
    assert "PASS" in capsys.readouterr().out
    assert out.exists()


def test_budget_skips():
    records, code = run_suite("core", jobs=1, budget_minutes=0.01)
    assert code == EXIT_SKIPPED == exit_code(records)
    assert {r["status"] for r in records} == {"skipped"}


@pytest.mark.parametrize(
    "desc,dim",
    [
        ("trivial", 1),
        ("adjoint", 8),
        ("natural", 3),
        ("dual(natural)", 3),
        ("tau(natural)", 3),
        ("real:2", 3),
        ("hw:1,0/-1", 8),
        ("kac:0,0/0", 4),
        ("sym2(adjoint)", 32),
    ],
)
def test_descriptors(sl21, desc, dim):
    M = build_module(sl21, desc)
    assert M.dim == dim and M.descriptor == desc
    assert is_representation(M)


def test_bad_descriptors(sl21):
    for bad in ("real:3", "hw:1,2/-3", "hw:x", "kac:1,0", "wat"):
        with pytest.raises(DescriptorError):
            build_module(sl21, bad)
    with pytest.raises(DescriptorError):
        parse_module("so:3:1", "trivial")


def test_cache_roundtrip(tmp_path, sl21):
    cache = ModuleCache(tmp_path)
    M = build_module(sl21, "hw:1,0/-1", cache)
    assert list(tmp_path.glob("*.json"))
    N = cache.get(sl21, "hw:1,0/-1")
    assert N is not None and N.weights == M.weights and N.images == M.images
    R = module_from_record(sl21, module_to_record(M))
    assert R.parity == M.parity


def test_cache_disabled(monkeypatch, sl21):
    monkeypatch.delenv("SUPERCOHOM_CACHE", raising=False)
    c = ModuleCache()
    assert not c.enabled and c.get(sl21, "trivial") is None


def test_sl_realization_restricts():
    M = build_module(build_algebra("sl", 3, 1), "real:3")
    assert M.dim == 7 and is_representation(M)
