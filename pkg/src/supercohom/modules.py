"""
Finite-dimensional graded modules given by exact action matrices.

A module stores, for every algebra basis element, the images of its own
basis vectors (``images[k][a]`` is the sparse column rho(e_k) v_a).  Every
module built here has a weight basis, so each vector also carries a weight,
a parity and a Z-degree.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    Element,
    LieSuperalgebra,
    Weight,
    build_algebra,
    weight_add,
    weight_neg,
)
from .linalg import SparseRationalMatrix

Column = Dict[int, Fraction]


class ModuleError(ValueError):
    pass


class Module:
    def __init__(
        self,
        algebra,
        images: List[List[Column]],
        parity: Sequence[int],
        weights: Sequence[Weight],
        z_degree: Sequence,
        descriptor: str = "",
    ):
        self.algebra = algebra
        self.dim = len(parity)
        self.images = images
        self.parity = tuple(parity)
        self.weights = tuple(tuple(Fraction(x) for x in w) for w in weights)
        self.z_degree = tuple(Fraction(z) for z in z_degree)
        self.descriptor = descriptor
        self._rows = None
        self._weight_spaces = None
        if len(images) != algebra.dim:
            raise ModuleError("one action per algebra basis element expected")

    def __repr__(self):
        return f"Module({self.descriptor or '?'}, dim={self.dim}, over {self.algebra!r})"

    # -- action

    def act(self, k: int, vec: Column) -> Column:
        out: Column = {}
        cols = self.images[k]
        for a, c in vec.items():
            for b, v in cols[a].items():
                out[b] = out.get(b, 0) + c * v
        return {b: v for b, v in out.items() if v}

    def act_element(self, x: Element, vec: Column) -> Column:
        out: Column = {}
        for k, c in x.items():
            for b, v in self.act(k, vec).items():
                out[b] = out.get(b, 0) + c * v
        return {b: v for b, v in out.items() if v}

    def element_images(self, x: Element) -> List[Column]:
        cols = []
        for a in range(self.dim):
            cols.append(self.act_element(x, {a: Fraction(1)}))
        return cols

    def rows(self, k: int) -> Dict[int, Column]:
        """Row view of rho(e_k): {row: {col: value}}."""
        if self._rows is None:
            self._rows = [None] * len(self.images)
        if self._rows[k] is None:
            rows: Dict[int, Column] = {}
            for a, col in enumerate(self.images[k]):
                for b, v in col.items():
                    rows.setdefault(b, {})[a] = v
            self._rows[k] = rows
        return self._rows[k]

    def matrix(self, k: int) -> SparseRationalMatrix:
        return SparseRationalMatrix.from_columns(self.dim, self.images[k])

    def element_matrix(self, x: Element) -> SparseRationalMatrix:
        return SparseRationalMatrix.from_columns(self.dim, self.element_images(x))

    @property
    def weight_spaces(self) -> Dict[Weight, List[int]]:
        if self._weight_spaces is None:
            ws: Dict[Weight, List[int]] = {}
            for a, w in enumerate(self.weights):
                ws.setdefault(w, []).append(a)
            self._weight_spaces = ws
        return self._weight_spaces

    def weight_multiset(self) -> Dict[Weight, int]:
        return {w: len(idx) for w, idx in self.weight_spaces.items()}

    def with_descriptor(self, desc: str) -> "Module":
        return Module(self.algebra, self.images, self.parity, self.weights, self.z_degree, desc)


# ---------------------------------------------------------------------------
# consistency checks


def _compose(M: Module, k1: int, k2: int, a: int) -> Column:
    return M.act(k1, M.images[k2][a])


def representation_defect(M: Module, pairs=None) -> Optional[Tuple[int, int, int]]:
    """First (i, j, vector) where rho(<e_i,e_j>) != [rho e_i, rho e_j}; None if none."""
    L = M.algebra
    sc = L.structure_constants
    if pairs is None:
        pairs = [(i, j) for i in range(L.dim) for j in range(i, L.dim)]
    for i, j in pairs:
        s = -1 if L.parity[i] * L.parity[j] else 1
        br = sc.get((i, j), {})
        for a in range(M.dim):
            lhs: Column = {}
            for k, c in br.items():
                for b, v in M.images[k][a].items():
                    lhs[b] = lhs.get(b, 0) + c * v
            rhs = dict(_compose(M, i, j, a))
            for b, v in _compose(M, j, i, a).items():
                rhs[b] = rhs.get(b, 0) - s * v
            diff = {b: lhs.get(b, 0) - rhs.get(b, 0) for b in set(lhs) | set(rhs)}
            if any(diff.values()):
                return (i, j, a)
    return None


def is_representation(M: Module, pairs=None) -> bool:
    return representation_defect(M, pairs) is None


def generator_pairs(L) -> List[Tuple[int, int]]:
    """All pairs involving a Chevalley generator (Cartan or simple root vector).

    Together with a derivation-style construction this pins the action; the
    exhaustive check is used for small modules.
    """
    gens = set(L.cartan_indices) | set(L.simple_root_indices("L", 1)) | set(L.simple_root_indices("L", -1))
    return [(i, j) for i in sorted(gens) for j in range(L.dim)]


def weights_consistent(M: Module) -> bool:
    """Root vectors shift weights by their root; Cartan elements act diagonally."""
    L = M.algebra
    for k in range(L.dim):
        rw = L.root_weight(k)
        for a, col in enumerate(M.images[k]):
            target = weight_add(M.weights[a], rw)
            for b in col:
                if M.weights[b] != target:
                    return False
    for i, x in enumerate(L.cartan_label_elements()):
        for a in range(M.dim):
            col = M.act_element(x, {a: Fraction(1)})
            if set(col) - {a}:
                return False
            if col.get(a, 0) != M.weights[a][i]:
                return False
    return True


def grading_offset(M: Module) -> Optional[Fraction]:
    """c with rho(D) v = (z_degree(v) + c) v for all v, or None if no such c."""
    L = M.algebra
    offset = None
    for a in range(M.dim):
        col = M.act_element(L.D, {a: Fraction(1)})
        if set(col) - {a}:
            return None
        c = col.get(a, Fraction(0)) - M.z_degree[a]
        if offset is None:
            offset = c
        elif c != offset:
            return None
    return offset if offset is not None else Fraction(0)


def d_eigenvalues(M: Module) -> List[Fraction]:
    """Multiset of D-eigenvalues (sorted)."""
    L = M.algebra
    vals = []
    for a in range(M.dim):
        col = M.act_element(L.D, {a: Fraction(1)})
        vals.append(col.get(a, Fraction(0)))
    return sorted(vals)


def weight_decomposition(M: Module) -> Dict[Weight, List[int]]:
    return dict(M.weight_spaces)


# ---------------------------------------------------------------------------
# basic modules


def trivial_module(L) -> Module:
    zero = tuple(Fraction(0) for _ in range(_nlabels(L)))
    return Module(L, [[{}] for _ in range(L.dim)], [0], [zero], [0], "trivial")


def _nlabels(L) -> int:
    return L.N if hasattr(L, "N") else L.parent.N


def adjoint_module(L: LieSuperalgebra) -> Module:
    images = []
    for k in range(L.dim):
        images.append([dict(L.structure_constants.get((k, b), {})) for b in range(L.dim)])
    weights = [L.root_weight(a) for a in range(L.dim)]
    return Module(L, images, L.parity, weights, L.z_degree, "adjoint")


def natural_module(L: LieSuperalgebra, grading_variant: str = "standard") -> Module:
    if grading_variant not in ("standard", "section3"):
        raise ModuleError(f"unknown grading variant {grading_variant!r}")
    if grading_variant == "section3" and L.n != 1:
        raise ModuleError("the shifted grading is only defined for n = 1")
    N, m = L.N, L.m
    images = []
    for k in range(L.dim):
        cols: List[Column] = [dict() for _ in range(N)]
        for (i, j), v in L.matrices[k].items():
            cols[j][i] = v
        images.append(cols)
    weights = [L.epsilon(j + 1) for j in range(N)]
    if grading_variant == "standard":
        parity = [L.index_parity[j] for j in range(N)]
        z = [L.index_parity[j] for j in range(N)]
        desc = "natural"
    else:
        parity = [1 - L.index_parity[j] for j in range(N)]
        z = [-1 if j < m else 0 for j in range(N)]
        desc = "natural:section3"
    return Module(L, images, parity, weights, z, desc)


def dual_module(M: Module) -> Module:
    """(x.phi)(v) = -(-1)^{|x||phi|} phi(x.v)."""
    L = M.algebra
    images = []
    for k in range(L.dim):
        px = L.parity[k]
        rows = M.rows(k)
        cols: List[Column] = []
        for j in range(M.dim):
            s = 1 if (px * M.parity[j]) % 2 else -1
            cols.append({i: s * v for i, v in rows.get(j, {}).items()})
        images.append(cols)
    return Module(
        L, images, M.parity, [weight_neg(w) for w in M.weights], [-z for z in M.z_degree], f"dual({M.descriptor})"
    )


def tau_twist(M: Module) -> Module:
    """Precompose the action with the supertranspose automorphism tau."""
    L = M.algebra
    images = []
    for k in range(L.dim):
        images.append(M.element_images(L.tau({k: Fraction(1)})))
    return Module(
        L, images, M.parity, [weight_neg(w) for w in M.weights], [-z for z in M.z_degree], f"tau({M.descriptor})"
    )


def shift_grading(M: Module, r) -> Module:
    return Module(M.algebra, M.images, M.parity, M.weights, [z + r for z in M.z_degree], M.descriptor)


def parity_flip(M: Module) -> Module:
    return Module(M.algebra, M.images, [1 - p for p in M.parity], M.weights, M.z_degree, f"Pi({M.descriptor})")


def restrict_to_sl(M: Module, sl: Optional[LieSuperalgebra] = None) -> Module:
    """Restrict a gl(m|n)-module to sl(m|n) (gl weights become sl labels)."""
    gl = M.algebra
    if gl.kind != "gl":
        raise ModuleError("restriction expects a gl(m|n)-module")
    sl = sl or build_algebra("sl", gl.m, gl.n)
    images = []
    for k in range(sl.dim):
        x = gl.from_matrix(sl.matrices[k])
        images.append(M.element_images(x))
    d = gl.m - gl.n
    weights = []
    for w in M.weights:
        total = sum(w, Fraction(0))
        weights.append(tuple(w[i] - Fraction(gl.sigma[i], d) * total for i in range(gl.N)))
    return Module(sl, images, M.parity, weights, M.z_degree, M.descriptor)


# ---------------------------------------------------------------------------
# tensor constructions


def normalize_tuple(seq: Sequence[int], parity: Sequence[int], kind: str):
    """Sort a product of basis vectors, tracking the Koszul sign.

    kind='ext' (super-exterior): swapping x, y costs -(-1)^{|x||y|} and an
    even vector repeated gives zero.  kind='sym' (super-symmetric): swapping
    costs (-1)^{|x||y|} and an odd vector repeated gives zero.
    Returns (sign, sorted tuple) with sign 0 for a vanishing product.
    """
    s = list(seq)
    sign = 1
    ext = kind == "ext"
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            a, b = s[j - 1], s[j]
            odd = parity[a] & parity[b]
            if ext:
                if not odd:
                    sign = -sign
            elif odd:
                sign = -sign
            s[j - 1], s[j] = b, a
            j -= 1
    for i in range(1, len(s)):
        if s[i] == s[i - 1]:
            if ext and parity[s[i]] == 0:
                return 0, None
            if not ext and parity[s[i]] == 1:
                return 0, None
    return sign, tuple(s)


def power_basis(parity: Sequence[int], k: int, kind: str) -> List[Tuple[int, ...]]:
    out = []
    for t in itertools.combinations_with_replacement(range(len(parity)), k):
        ok = True
        for i in range(1, k):
            if t[i] == t[i - 1]:
                if (kind == "ext" and parity[t[i]] == 0) or (kind == "sym" and parity[t[i]] == 1):
                    ok = False
                    break
        if ok:
            out.append(t)
    return out


def power_dimension(n_even: int, n_odd: int, k: int, kind: str) -> int:
    """dim of the k-th super-exterior ('ext') or super-symmetric ('sym') power."""
    total = 0
    for a in range(k + 1):
        b = k - a
        if kind == "ext":
            total += comb(n_even, a) * comb(n_odd + b - 1, b) if b else comb(n_even, a)
        else:
            total += comb(n_even + a - 1, a) * comb(n_odd, b) if a else comb(n_odd, b)
    return total


def tensor(M: Module, N: Module) -> Module:
    L = M.algebra
    if N.algebra is not L:
        raise ModuleError("modules over different algebras")
    dn = N.dim
    images = []
    for k in range(L.dim):
        px = L.parity[k]
        cols: List[Column] = []
        for i in range(M.dim):
            s = -1 if px * M.parity[i] else 1
            for j in range(dn):
                col: Column = {}
                for b, v in M.images[k][i].items():
                    col[b * dn + j] = col.get(b * dn + j, 0) + v
                for b, v in N.images[k][j].items():
                    col[i * dn + b] = col.get(i * dn + b, 0) + s * v
                cols.append({c: v for c, v in col.items() if v})
        images.append(cols)
    parity = [(p + q) % 2 for p in M.parity for q in N.parity]
    weights = [weight_add(u, w) for u in M.weights for w in N.weights]
    z = [a + b for a in M.z_degree for b in N.z_degree]
    return Module(L, images, parity, weights, z, f"({M.descriptor})x({N.descriptor})")


def _power(M: Module, k: int, kind: str) -> Module:
    if k < 0:
        raise ModuleError("power degree must be nonnegative")
    L = M.algebra
    basis = power_basis(M.parity, k, kind)
    index = {t: i for i, t in enumerate(basis)}
    images = []
    for e in range(L.dim):
        px = L.parity[e]
        cols: List[Column] = []
        for t in basis:
            col: Column = {}
            passed = 0
            for pos, a in enumerate(t):
                s0 = -1 if (px * passed) % 2 else 1
                for b, v in M.images[e][a].items():
                    new = t[:pos] + (b,) + t[pos + 1:]
                    sign, nt = normalize_tuple(new, M.parity, kind)
                    if sign:
                        r = index[nt]
                        col[r] = col.get(r, 0) + s0 * sign * v
                passed += M.parity[a]
            cols.append({c: v for c, v in col.items() if v})
        images.append(cols)
    zero = tuple(Fraction(0) for _ in range(_nlabels(L)))
    parity, weights, z = [], [], []
    for t in basis:
        parity.append(sum(M.parity[a] for a in t) % 2)
        w = zero
        for a in t:
            w = weight_add(w, M.weights[a])
        weights.append(w)
        z.append(sum((M.z_degree[a] for a in t), Fraction(0)))
    name = "sym" if kind == "sym" else "ext"
    mod = Module(L, images, parity, weights, z, f"{name}{k}({M.descriptor})")
    mod.power_basis = basis
    return mod


def sym_power_eps(M: Module, k: int) -> Module:
    """S_k(M, eps): super-symmetric power with the derivation action."""
    return _power(M, k, "sym")


def ext_power_eps(M: Module, k: int) -> Module:
    """Lambda_k(M, eps): super-exterior power with the derivation action."""
    return _power(M, k, "ext")


# ---------------------------------------------------------------------------
# the realization of V(-eps_m + eps_{m+1}) inside S_{m-1}(W, eps)


def _theta_sort(seq: List[int]):
    """Sort Grassmann indices; (sign, tuple) or (0, None) on repetition."""
    s = list(seq)
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    if len(set(s)) != len(s):
        return 0, None
    return sign, tuple(s)


def realization_basis(m: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """Monomials z^a theta_S of total degree m-1, ordered by Z-degree a+1, then S."""
    out = []
    for a in range(m):
        for S in itertools.combinations(range(m), m - 1 - a):
            out.append((a, S))
    return out


def build_V_realization(m: int, kind: str = "gl") -> Module:
    """V = S_{m-1}(W, eps) for gl(m|1) with the twisted action rho0 - Str id.

    Basis: monomials z^a theta_S (theta odd, z even), with
      rho(E_ij)       = theta_i d/dtheta_j - delta_ij
      rho(E_i,m+1)    = theta_i d/dz
      rho(E_m+1,i)    = z d/dtheta_i
      rho(E_m+1,m+1)  = z d/dz + 1
    ``kind='sl'`` restricts to sl(m|1).
    """
    if m < 2:
        raise ModuleError("the realization needs m >= 2")
    G = build_algebra("gl", m, 1)
    basis = realization_basis(m)
    index = {b: i for i, b in enumerate(basis)}

    def d_theta(j, S):
        if j not in S:
            return 0, None
        t = S.index(j)
        return (-1) ** t, S[:t] + S[t + 1:]

    def apply(i, j, a, S) -> Column:
        # returns rho(E_ij) (0-based) on z^a theta_S
        out: Column = {}
        if i < m and j < m:
            s, R = d_theta(j, S)
            if s:
                s2, T = _theta_sort([i] + list(R))
                if s2:
                    out[index[a, T]] = Fraction(s * s2)
            if i == j:
                k = index[a, S]
                out[k] = out.get(k, 0) - 1
        elif i < m and j == m:
            if a > 0:
                s2, T = _theta_sort([i] + list(S))
                if s2:
                    out[index[a - 1, T]] = Fraction(a * s2)
        elif i == m and j < m:
            s, R = d_theta(j, S)
            if s:
                out[index[a + 1, R]] = Fraction(s)
        else:
            out[index[a, S]] = Fraction(a + 1)
        return {k: v for k, v in out.items() if v}

    images = []
    for k, (i, j) in enumerate(G.keys):
        images.append([apply(i, j, a, S) for (a, S) in basis])
    parity = [len(S) % 2 for _, S in basis]
    weights = []
    for a, S in basis:
        w = [Fraction(-1)] * m + [Fraction(a + 1)]
        for i in S:
            w[i] += 1
        weights.append(tuple(w))
    z = [a + 1 for a, _ in basis]
    M = Module(G, images, parity, weights, z, f"real:{m}")
    M.monomials = basis
    if kind == "sl":
        R = restrict_to_sl(M)
        R.monomials = basis
        return R
    return M


def eta_vector(m: int, i: int) -> Column:
    """eta_i = d/dtheta_i (theta_1 ... theta_m) in the realization basis (i 1-based)."""
    basis = realization_basis(m)
    S = tuple(k for k in range(m) if k != i - 1)
    return {basis.index((0, S)): Fraction((-1) ** (i - 1))}


def l0_realization_components(m: int) -> Dict[int, List[int]]:
    """Indices of V_r (Z-degree r) in the realization basis."""
    out: Dict[int, List[int]] = {}
    for idx, (a, S) in enumerate(realization_basis(m)):
        out.setdefault(a + 1, []).append(idx)
    return out
