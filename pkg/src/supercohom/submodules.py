"""
Submodules, quotients and closures inside a module with a weight basis.

Every L-stable subspace is a sum of its weight components, so subspaces are
kept per weight: ``GradedSubspace.parts[w]`` is a Subspace in the local
coordinates of the weight space ``M.weight_spaces[w]``.  Closure under L
only needs the Chevalley generators (simple root vectors of both signs);
weight-graded subspaces are automatically Cartan-stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Weight, root_height
from .linalg import IncrementalSpan, SparseRationalMatrix, Subspace, kernel_basis
from .modules import Column, Module, ModuleError


def _local_maps(M: Module):
    loc = getattr(M, "_local_index", None)
    if loc is None:
        loc = {}
        for w, idx in M.weight_spaces.items():
            for p, a in enumerate(idx):
                loc[a] = (w, p)
        M._local_index = loc
    return loc


def split_by_weight(M: Module, vec: Column) -> Dict[Weight, Column]:
    """Weight components of a global vector, in local coordinates."""
    loc = _local_maps(M)
    out: Dict[Weight, Column] = {}
    for a, v in vec.items():
        if v:
            w, p = loc[a]
            out.setdefault(w, {})[p] = v
    return out


def to_global(M: Module, w: Weight, local: Column) -> Column:
    idx = M.weight_spaces[w]
    return {idx[p]: v for p, v in local.items()}


class GradedSubspace:
    def __init__(self, module: Module, parts: Dict[Weight, Subspace]):
        self.module = module
        self.parts = {w: S for w, S in parts.items() if S.dim}

    @property
    def dim(self) -> int:
        return sum(S.dim for S in self.parts.values())

    def __repr__(self):
        return f"GradedSubspace(dim={self.dim} in {self.module!r})"

    def part(self, w: Weight) -> Subspace:
        S = self.parts.get(w)
        if S is None:
            return Subspace.zero(len(self.module.weight_spaces.get(w, ())))
        return S

    def contains(self, vec: Column) -> bool:
        return all(self.part(w).contains(v) for w, v in split_by_weight(self.module, vec).items())

    def vectors(self) -> List[Column]:
        out = []
        for w in sorted(self.parts, key=_weight_order_key):
            for b in self.parts[w].basis:
                out.append(to_global(self.module, w, b))
        return out

    def to_subspace(self) -> Subspace:
        return Subspace.span(self.module.dim, self.vectors())

    def weight_dims(self) -> Dict[Weight, int]:
        return {w: S.dim for w, S in self.parts.items()}

    def is_submodule(self) -> bool:
        M = self.module
        gens = _generators(M.algebra)
        for w, S in self.parts.items():
            for b in S.basis:
                g = to_global(M, w, b)
                for k in gens:
                    if not self.contains(M.act(k, g)):
                        return False
        return True


def _weight_order_key(w: Weight):
    # highest weights first, then lexicographically larger labels first
    return (-root_height(w), tuple(-x for x in w))


def _generators(L) -> List[int]:
    return list(L.simple_root_indices("L", 1)) + list(L.simple_root_indices("L", -1))


def _l0_generators(L) -> List[int]:
    return list(L.simple_root_indices("L0", 1)) + list(L.simple_root_indices("L0", -1))


def _part_generators(L, part: str, signs=(1, -1)) -> List[int]:
    out = []
    for s in signs:
        out.extend(L.simple_root_indices("L0" if part == "L0" else "L", s))
    return out


def generated_submodule(M: Module, vectors: Iterable[Column], generators=None) -> GradedSubspace:
    """Smallest graded subspace containing ``vectors`` and stable under the generators."""
    if generators is None:
        generators = _generators(M.algebra)
    spans: Dict[Weight, IncrementalSpan] = {}
    queue: List[Column] = []

    def push(vec):
        for w, loc in split_by_weight(M, vec).items():
            sp = spans.get(w)
            if sp is None:
                sp = spans[w] = IncrementalSpan(len(M.weight_spaces[w]))
            red = sp.reduce(loc)
            if red:
                sp.add(red)
                queue.append(to_global(M, w, red))

    for v in vectors:
        push(v)
    while queue:
        v = queue.pop()
        for k in generators:
            img = M.act(k, v)
            if img:
                push(img)
    return GradedSubspace(M, {w: sp.subspace() for w, sp in spans.items()})


def cyclic_submodule(M: Module, v: Column) -> GradedSubspace:
    return generated_submodule(M, [v])


def action_span(M: Module) -> GradedSubspace:
    """span{ e . u : e in L, u in M }."""
    L = M.algebra
    spans: Dict[Weight, IncrementalSpan] = {}
    for k in range(L.dim):
        for col in M.images[k]:
            for w, loc in split_by_weight(M, col).items():
                sp = spans.get(w)
                if sp is None:
                    sp = spans[w] = IncrementalSpan(len(M.weight_spaces[w]))
                sp.add(loc)
    return GradedSubspace(M, {w: sp.subspace() for w, sp in spans.items()})


def _joint_kernel(M: Module, w: Weight, ops: Sequence[int], mods: Optional[Dict[Weight, Subspace]] = None) -> Subspace:
    """Kernel on the weight space w of the stacked maps u -> e.u (mod mods[target])."""
    idx = M.weight_spaces[w]
    rows: Dict[int, Dict[int, Fraction]] = {}
    offset = 0
    targets: Dict[Tuple[int, Weight], int] = {}
    for k in ops:
        for p, a in enumerate(idx):
            col = M.images[k][a]
            if not col:
                continue
            for tw, loc in split_by_weight(M, col).items():
                if mods is not None and tw in mods:
                    loc = mods[tw].reduce(loc)
                key = (k, tw)
                if key not in targets:
                    targets[key] = offset
                    offset += len(M.weight_spaces[tw])
                base = targets[key]
                for q, v in loc.items():
                    rows.setdefault(base + q, {})[p] = v
    A = SparseRationalMatrix(max(offset, 1), len(idx), rows)
    return kernel_basis(A)


def singular_vectors(M: Module, algebra_part: str = "L") -> List[Tuple[Weight, List[Column]]]:
    """Joint kernel of the positive (simple) root vectors, grouped by weight."""
    ops = M.algebra.simple_root_indices("L0" if algebra_part == "L0" else "L", 1)
    out = []
    for w in sorted(M.weight_spaces, key=_weight_order_key):
        K = _joint_kernel(M, w, ops)
        if K.dim:
            out.append((w, [to_global(M, w, b) for b in K.basis]))
    return out


def invariants(M: Module, algebra_part: str = "L") -> GradedSubspace:
    """Vectors killed by every element of L (or L0): weight zero plus root vectors."""
    L = M.algebra
    zero = tuple(Fraction(0) for _ in next(iter(M.weight_spaces)))
    if zero not in M.weight_spaces:
        return GradedSubspace(M, {})
    ops = _part_generators(L, algebra_part)
    K = _joint_kernel(M, zero, ops)
    return GradedSubspace(M, {zero: K})


def radical(M: Module, hw: Weight) -> GradedSubspace:
    """Largest submodule of a highest weight module meeting the top weight space trivially.

    R_mu = {u : e_alpha u in R_{mu+alpha} for every simple positive root alpha},
    R_hw = 0, computed top down.  Requires M generated by a vector of weight hw
    with a one-dimensional hw weight space.
    """
    L = M.algebra
    ops = L.simple_root_indices("L", 1)
    order = sorted(M.weight_spaces, key=lambda w: -root_height(w))
    R: Dict[Weight, Subspace] = {}
    for w in order:
        if w == hw:
            R[w] = Subspace.zero(len(M.weight_spaces[w]))
            continue
        R[w] = _joint_kernel(M, w, ops, R)
    return GradedSubspace(M, R)


def largest_invariant_subspace(M: Module, K0: Subspace) -> Subspace:
    """Fixpoint of K_{t+1} = {u in K_t : e.u in K_t for every basis element e}."""
    L = M.algebra
    K = K0
    while True:
        if K.dim == 0:
            return K
        comp = K.complement_indices()
        pos = {c: i for i, c in enumerate(comp)}
        rows: Dict[int, Dict[int, Fraction]] = {}
        for k in range(L.dim):
            for j, b in enumerate(K.basis):
                img = M.act(k, b)
                red = K.reduce(img)
                for c, v in red.items():
                    rows.setdefault(k * len(comp) + pos[c], {})[j] = v
        A = SparseRationalMatrix(max(L.dim * max(len(comp), 1), 1), K.dim, rows)
        coeff = kernel_basis(A)
        if coeff.dim == K.dim:
            return K
        new = []
        for cvec in coeff.basis:
            v: Column = {}
            for j, a in cvec.items():
                for c, x in K.basis[j].items():
                    v[c] = v.get(c, 0) + a * x
            new.append(v)
        K = Subspace.span(M.dim, new)


def submodule_as_module(M: Module, S: GradedSubspace, descriptor: str = "") -> Module:
    """The submodule S with its echelon basis (per weight, highest weights first)."""
    L = M.algebra
    order = sorted(S.parts, key=_weight_order_key)
    basis: List[Tuple[Weight, int]] = []
    start: Dict[Weight, int] = {}
    for w in order:
        start[w] = len(basis)
        basis.extend((w, i) for i in range(S.parts[w].dim))
    images = []
    for k in range(L.dim):
        cols = []
        for w, i in basis:
            g = to_global(M, w, S.parts[w].basis[i])
            img = M.act(k, g)
            col: Column = {}
            for tw, loc in split_by_weight(M, img).items():
                part = S.parts.get(tw)
                if part is None:
                    raise ModuleError("subspace is not invariant")
                coords = part.coordinates(loc)
                for j, c in enumerate(coords):
                    if c:
                        col[start[tw] + j] = c
            cols.append(col)
        images.append(cols)
    parity, weights, z = [], [], []
    for w, i in basis:
        vec = S.parts[w].basis[i]
        a = M.weight_spaces[w][next(iter(vec))]
        parity.append(M.parity[a])
        weights.append(w)
        z.append(M.z_degree[a])
    sub = Module(L, images, parity, weights, z, descriptor or f"sub({M.descriptor})")
    sub.embedding = [to_global(M, w, S.parts[w].basis[i]) for w, i in basis]
    return sub


def quotient_module(M: Module, S: GradedSubspace, descriptor: str = "", check: bool = True) -> Module:
    """M / S on the complement coordinates (non-pivot positions per weight)."""
    L = M.algebra
    if check and not S.is_submodule():
        raise ModuleError("quotient by a non-invariant subspace")
    order = sorted(M.weight_spaces, key=_weight_order_key)
    basis: List[int] = []
    qindex: Dict[int, int] = {}
    for w in order:
        idx = M.weight_spaces[w]
        part = S.part(w)
        for p in part.complement_indices():
            qindex[idx[p]] = len(basis)
            basis.append(idx[p])
    images = []
    for k in range(L.dim):
        cols = []
        for a in basis:
            img = M.images[k][a]
            col: Column = {}
            for tw, loc in split_by_weight(M, img).items():
                red = S.part(tw).reduce(loc)
                tidx = M.weight_spaces[tw]
                for p, v in red.items():
                    col[qindex[tidx[p]]] = v
            cols.append(col)
        images.append(cols)
    Q = Module(
        L,
        images,
        [M.parity[a] for a in basis],
        [M.weights[a] for a in basis],
        [M.z_degree[a] for a in basis],
        descriptor or f"quot({M.descriptor})",
    )
    Q.lift = basis
    return Q


def is_simple(M: Module) -> bool:
    """Every nonzero submodule holds a singular vector, so M is simple exactly
    when the singular vectors form one line and that line generates M."""
    sv = singular_vectors(M)
    if sum(len(v) for _, v in sv) != 1:
        return False
    return cyclic_submodule(M, sv[0][1][0]).dim == M.dim
