"""Module descriptor strings used by the CLI and the cache.

    trivial | adjoint | natural | natural:section3 | real:m
    hw:L1,...,Lm/Lm+1,...,Lm+n | kac:<weight>
    dual(<desc>) | tau(<desc>) | sym2(adjoint)
"""

from __future__ import annotations

from typing import Optional

from .algebra import AlgebraError, LieSuperalgebra, build_algebra, parse_weight
from .modules import (
    Module,
    ModuleError,
    adjoint_module,
    build_V_realization,
    dual_module,
    natural_module,
    restrict_to_sl,
    sym_power_eps,
    tau_twist,
    trivial_module,
)


class DescriptorError(ValueError):
    pass


def _unwrap(desc: str, head: str) -> Optional[str]:
    if desc.startswith(head + "(") and desc.endswith(")"):
        return desc[len(head) + 1 : -1]
    return None


def _weight(L: LieSuperalgebra, text: str):
    try:
        w = parse_weight(text, L.m)
    except ValueError as e:
        raise DescriptorError(str(e)) from None
    if len(w) != L.N:
        raise DescriptorError(f"weight {text!r} needs {L.N} labels")
    return w


def build_module(L: LieSuperalgebra, desc: str, cache=None) -> Module:
    """Construct the module named by ``desc``; ``cache`` (a ModuleCache) is optional."""
    desc = desc.strip()
    if cache is not None:
        hit = cache.get(L, desc)
        if hit is not None:
            return hit
    M = _build(L, desc, cache)
    M = M.with_descriptor(desc)
    if cache is not None:
        cache.put(M)
    return M


def _build(L: LieSuperalgebra, desc: str, cache) -> Module:
    from .highest_weight import WeightError, kac_module, simple_module

    if desc == "trivial":
        return trivial_module(L)
    if desc == "adjoint":
        return adjoint_module(L)
    if desc in ("natural", "natural:section3"):
        return natural_module(L, "section3" if desc.endswith("section3") else "standard")
    if desc == "sym2(adjoint)":
        return sym_power_eps(adjoint_module(L), 2)
    for head, fn in (("dual", dual_module), ("tau", tau_twist)):
        inner = _unwrap(desc, head)
        if inner is not None:
            return fn(build_module(L, inner, cache))
    if desc.startswith("real:"):
        try:
            m = int(desc[5:])
        except ValueError:
            raise DescriptorError(f"bad descriptor {desc!r}") from None
        if L.n != 1 or L.m != m:
            raise DescriptorError(f"{desc} lives over gl({m}|1) or sl({m}|1), not {L.descriptor}")
        V = build_V_realization(m, "gl")
        return V if L.kind == "gl" else restrict_to_sl(V, L)
    try:
        if desc.startswith("hw:"):
            return simple_module(L, _weight(L, desc[3:]))
        if desc.startswith("kac:"):
            return kac_module(L, _weight(L, desc[4:]))
    except (WeightError, ModuleError) as e:
        raise DescriptorError(str(e)) from None
    raise DescriptorError(f"unknown module descriptor {desc!r}")


def parse_module(algebra_desc: str, desc: str, cache=None) -> Module:
    from .algebra import parse_algebra

    try:
        L = parse_algebra(algebra_desc)
    except AlgebraError as e:
        raise DescriptorError(str(e)) from None
    return build_module(L, desc, cache)


__all__ = ["DescriptorError", "build_module", "parse_module", "build_algebra"]
