"""On-disk JSON cache of constructed modules.

Directory from $SUPERCOHOM_CACHE.  One file per (algebra, descriptor); rationals
are stored as ``p/q`` strings.  Records with a different version are ignored.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Optional

from .algebra import LieSuperalgebra
from .linalg import fparse, fstr
from .modules import Module

CACHE_VERSION = 1
ENV_VAR = "SUPERCOHOM_CACHE"


def module_to_record(M: Module) -> dict:
    return {
        "version": CACHE_VERSION,
        "algebra": M.algebra.descriptor,
        "descriptor": M.descriptor,
        "dim": M.dim,
        "parity": list(M.parity),
        "weights": [[fstr(x) for x in w] for w in M.weights],
        "z_degree": [fstr(z) for z in M.z_degree],
        # actions[k][a] = sparse column rho(e_k) v_a
        "actions": [[[[b, fstr(v)] for b, v in sorted(col.items())] for col in img] for img in M.images],
    }


def module_from_record(L: LieSuperalgebra, rec: dict) -> Module:
    if rec.get("version") != CACHE_VERSION:
        raise ValueError("cache record version mismatch")
    if rec["algebra"] != L.descriptor:
        raise ValueError("cache record belongs to another algebra")
    images = [[{b: fparse(v) for b, v in col} for col in img] for img in rec["actions"]]
    return Module(
        L,
        images,
        rec["parity"],
        [[fparse(x) for x in w] for w in rec["weights"]],
        [fparse(z) for z in rec["z_degree"]],
        rec["descriptor"],
    )


class ModuleCache:
    def __init__(self, root: Optional[os.PathLike] = None):
        root = root or os.environ.get(ENV_VAR)
        self.root = Path(root) if root else None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def _path(self, algebra: str, desc: str) -> Path:
        h = hashlib.sha256(f"{algebra}::{desc}".encode()).hexdigest()[:24]
        return self.root / f"{algebra.replace(':', '_')}-{h}.json"

    def get(self, L: LieSuperalgebra, desc: str) -> Optional[Module]:
        if not self.enabled:
            return None
        p = self._path(L.descriptor, desc)
        if not p.exists():
            return None
        try:
            rec = json.loads(p.read_text())
            if rec.get("descriptor") != desc:
                return None
            return module_from_record(L, rec)
        except (ValueError, KeyError):
            return None

    def put(self, M: Module) -> None:
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(M.algebra.descriptor, M.descriptor)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(module_to_record(M)))
        tmp.replace(p)
