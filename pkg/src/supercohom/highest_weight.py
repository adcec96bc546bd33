"""Highest weight modules: simple L0-modules, Kac modules, simple quotients,
L0-decompositions and composition series."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    LieSuperalgebra,
    SubalgebraL0,
    Weight,
    as_weight,
    format_weight,
    is_block_dominant,
    root_height,
    subalgebra_L0,
)
from .characters import l0_dimension
from .linalg import IncrementalSpan, Subspace
from .modules import Column, Module, ModuleError
from .submodules import (
    cyclic_submodule,
    quotient_module,
    radical,
    singular_vectors,
    submodule_as_module,
)


class WeightError(ValueError):
    pass


def _require_dominant(L, lam: Sequence) -> Weight:
    lam = as_weight(lam)
    if len(lam) != L.m + L.n:
        raise WeightError(f"weight needs {L.m + L.n} labels")
    if not is_block_dominant(lam, L.m):
        raise WeightError(f"{format_weight(lam, L.m)} is not block-dominant integral")
    if L.kind == "sl" and sum(lam) != 0:
        raise WeightError("sl labels must sum to zero")
    return lam


# ---------------------------------------------------------------------------
# gl(k) irreps inside tensor products of wedge powers


def _wedge_apply(i: int, j: int, S: Tuple[int, ...]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """E_ij e_S for a sorted wedge monomial; None when zero."""
    if j not in S:
        return None
    if i == j:
        return 1, S
    if i in S:
        return None
    lo, hi = min(i, j), max(i, j)
    between = sum(1 for s in S if lo < s < hi)
    T = tuple(sorted(i if s == j else s for s in S))
    return (-1 if between % 2 else 1), T


class GlIrrep:
    """V_{gl(k)}(a) as explicit matrices.

    The shifted partition a - a_k fixes the column lengths; the irrep is the
    cyclic submodule of the tensor product of the column wedge powers
    generated by the product of top wedges.  The remaining scalar a_k acts
    as a determinant twist.
    """

    def __init__(self, a: Sequence):
        a = as_weight(a)
        k = len(a)
        for x, y in zip(a, a[1:]):
            if x - y < 0 or (x - y).denominator != 1:
                raise WeightError(f"{a} is not dominant integral for gl({k})")
        self.k = k
        self.a = a
        shift = a[-1]
        lam = [int(x - shift) for x in a]
        cols = [sum(1 for x in lam if x > c) for c in range(lam[0])] if lam and lam[0] > 0 else []
        self.columns = cols
        self.shift = shift
        top = tuple(tuple(range(c)) for c in cols)

        keys: Dict[tuple, int] = {}

        def key_index(t):
            if t not in keys:
                keys[t] = len(keys)
            return keys[t]

        def host_weight(t):
            w = [shift] * k
            for S in t:
                for s in S:
                    w[s] += 1
            return tuple(w)

        spans: Dict[Weight, IncrementalSpan] = {}
        queue = [{top: Fraction(1)}]
        key_index(top)
        wt_top = host_weight(top)
        spans[wt_top] = IncrementalSpan(1 << 30)
        spans[wt_top].add({0: Fraction(1)})
        while queue:
            v = queue.pop()
            for i in range(k - 1):
                img = self._host_apply(i + 1, i, v)
                if not img:
                    continue
                w = host_weight(next(iter(img)))
                sp = spans.setdefault(w, IncrementalSpan(1 << 30))
                loc = {key_index(t): c for t, c in img.items()}
                red = sp.reduce(loc)
                if red:
                    sp.add(red)
                    queue.append(img)
        self._keys = keys
        self._rev = {i: t for t, i in keys.items()}
        self._host_weight = host_weight
        order = sorted(spans, key=lambda w: (-root_height(w), tuple(-x for x in w)))
        self.subspaces = {w: spans[w].subspace() for w in order}
        self.basis: List[Dict[tuple, Fraction]] = []
        self.weights: List[Weight] = []
        self._start: Dict[Weight, int] = {}
        for w in order:
            self._start[w] = len(self.basis)
            for b in self.subspaces[w].basis:
                self.basis.append({self._rev[c]: x for c, x in b.items()})
                self.weights.append(w)
        self.dim = len(self.basis)
        self._cache: Dict[Tuple[int, int], List[Column]] = {}

    @staticmethod
    def _host_apply(i: int, j: int, vec: Dict[tuple, Fraction]) -> Dict[tuple, Fraction]:
        out: Dict[tuple, Fraction] = {}
        for t, c in vec.items():
            for pos, S in enumerate(t):
                r = _wedge_apply(i, j, S)
                if r is None:
                    continue
                s, T = r
                nt = t[:pos] + (T,) + t[pos + 1:]
                out[nt] = out.get(nt, 0) + s * c
        return {t: c for t, c in out.items() if c}

    def E(self, i: int, j: int) -> List[Column]:
        """Columns of rho(E_ij) (0-based) in the irrep basis."""
        key = (i, j)
        if key in self._cache:
            return self._cache[key]
        cols: List[Column] = []
        for b, w in zip(self.basis, self.weights):
            if i == j:
                cols.append({len(cols): w[i]})
                continue
            img = self._host_apply(i, j, b)
            if not img:
                cols.append({})
                continue
            tw = self._host_weight(next(iter(img)))
            sub = self.subspaces[tw]
            loc = {}
            for t, c in img.items():
                if t not in self._keys:
                    raise ModuleError("host vector left the irrep")
                loc[self._keys[t]] = c
            coords = sub.coordinates(loc)
            st = self._start[tw]
            cols.append({st + p: c for p, c in enumerate(coords) if c})
        self._cache[key] = cols
        return cols


# ---------------------------------------------------------------------------
# simple L0-modules


class L0Module:
    """A module over the reductive part, with actions on L0 basis indices."""

    def __init__(self, L0: SubalgebraL0, images: List[List[Column]], weights: List[Weight], descriptor: str):
        self.algebra = L0
        self.images = images
        self.weights = [tuple(w) for w in weights]
        self.dim = len(weights)
        self.descriptor = descriptor

    def __repr__(self):
        return f"L0Module({self.descriptor}, dim={self.dim})"

    def act_local(self, k: int, vec: Column) -> Column:
        out: Column = {}
        for a, c in vec.items():
            for b, v in self.images[k][a].items():
                out[b] = out.get(b, 0) + c * v
        return {b: v for b, v in out.items() if v}

    def is_representation(self) -> bool:
        L0 = self.algebra
        for i in range(L0.dim):
            for j in range(i, L0.dim):
                br = L0.structure_constants.get((i, j), {})
                for a in range(self.dim):
                    lhs: Column = {}
                    for k, c in br.items():
                        for b, v in self.images[k][a].items():
                            lhs[b] = lhs.get(b, 0) + c * v
                    rhs = self.act_local(i, self.images[j][a])
                    for b, v in self.act_local(j, self.images[i][a]).items():
                        rhs[b] = rhs.get(b, 0) - v
                    if any(lhs.get(b, 0) != rhs.get(b, 0) for b in set(lhs) | set(rhs)):
                        return False
        return True


def simple_L0_module(L: LieSuperalgebra, lam: Sequence) -> L0Module:
    """V0(lam) = V_{gl(m)}(lam_1..lam_m) x V_{gl(n)}(lam_{m+1}..): L0 acts block-wise."""
    lam = _require_dominant(L, lam)
    m = L.m
    A = GlIrrep(lam[:m])
    B = GlIrrep(lam[m:])
    L0 = subalgebra_L0(L)
    weights = [wa + wb for wa in A.weights for wb in B.weights]
    dB = B.dim
    images = []
    for a in L0.parent_index:
        cols: List[Column] = [dict() for _ in range(A.dim * B.dim)]
        for (i, j), c in L.matrices[a].items():
            if i < m:
                src = A.E(i, j)
                for ia in range(A.dim):
                    for ja, v in src[ia].items():
                        for ib in range(dB):
                            col = cols[ia * dB + ib]
                            col[ja * dB + ib] = col.get(ja * dB + ib, 0) + c * v
            else:
                src = B.E(i - m, j - m)
                for ib in range(dB):
                    for jb, v in src[ib].items():
                        for ia in range(A.dim):
                            col = cols[ia * dB + ib]
                            col[ia * dB + jb] = col.get(ia * dB + jb, 0) + c * v
        images.append([{b: v for b, v in col.items() if v} for col in cols])
    M = L0Module(L0, images, weights, f"L0hw:{format_weight(lam, m)}")
    if M.dim != l0_dimension(m, lam):
        raise ModuleError("L0 irrep dimension disagrees with the Weyl formula")
    return M


# ---------------------------------------------------------------------------
# Kac modules


def _odd_lowering_indices(L) -> List[int]:
    return [a for a in range(L.dim) if L.z_degree[a] == 1]


def _grassmann_sort(seq: List[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    s = list(seq)
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(s)


def kac_module(L: LieSuperalgebra, lam: Sequence) -> Module:
    """Lambda(L_{+1}) x V0(lam), L_{-1} acting trivially on 1 x V0.

    (Z-degree +1 is the lower-left odd block here; it lowers weights.)
    """
    lam = _require_dominant(L, lam)
    V0 = simple_L0_module(L, lam)
    L0 = V0.algebra
    low = _odd_lowering_indices(L)  # basis of the Grassmann generators
    pos = {a: t for t, a in enumerate(low)}
    subsets: List[Tuple[int, ...]] = []
    for k in range(len(low) + 1):
        subsets.extend(combinations(range(len(low)), k))
    sub_index = {S: i for i, S in enumerate(subsets)}
    d0 = V0.dim

    def idx(S, v):
        return sub_index[S] * d0 + v

    sc = L.structure_constants
    even_cache: Dict[Tuple[int, Tuple[int, ...], int], Column] = {}

    def even_act(x: int, S: Tuple[int, ...], v: int) -> Column:
        """x in L0 (parent index) on f_S x v."""
        key = (x, S, v)
        hit = even_cache.get(key)
        if hit is not None:
            return hit
        out: Column = {}
        for t, s in enumerate(S):
            br = sc.get((x, low[s]), {})
            for b, c in br.items():
                seq = list(S)
                seq[t] = pos[b]
                sign, T = _grassmann_sort(seq)
                if T is None:
                    continue
                k = idx(T, v)
                out[k] = out.get(k, 0) + sign * c
        for w, c in V0.images[L0.local_index[x]][v].items():
            k = idx(S, w)
            out[k] = out.get(k, 0) + c
        out = {k: c for k, c in out.items() if c}
        even_cache[key] = out
        return out

    def odd_low_act(y: int, S, v) -> Column:
        sign, T = _grassmann_sort([pos[y]] + list(S))
        if T is None:
            return {}
        return {idx(T, v): Fraction(sign)}

    def odd_high_act(z: int, S, v) -> Column:
        out: Column = {}
        for t, s in enumerate(S):
            br = sc.get((z, low[s]), {})
            if not br:
                continue
            prefix = list(S[:t])
            suffix = S[t + 1:]
            base = -1 if t % 2 else 1
            for x, c in br.items():
                for k2, c2 in even_act(x, suffix, v).items():
                    T2, w = subsets[k2 // d0], k2 % d0
                    sign, T = _grassmann_sort(prefix + list(T2))
                    if T is None:
                        continue
                    k = idx(T, w)
                    out[k] = out.get(k, 0) + base * sign * c * c2
        return {k: c for k, c in out.items() if c}

    images: List[List[Column]] = []
    for a in range(L.dim):
        z = L.z_degree[a]
        cols = []
        for S in subsets:
            for v in range(d0):
                if z == 0:
                    cols.append(even_act(a, S, v))
                elif z == 1:
                    cols.append(odd_low_act(a, S, v))
                else:
                    cols.append(odd_high_act(a, S, v))
        images.append(cols)

    parity, weights, zdeg = [], [], []
    top_d = sum(lam[L.m:], Fraction(0))  # Lambda(D)
    for S in subsets:
        w = list(lam)
        for s in S:
            for i, x in enumerate(L.root_weight(low[s])):
                w[i] += x
        for v in range(d0):
            vw = V0.weights[v]
            parity.append(len(S) % 2)
            weights.append(tuple(w[i] - lam[i] + vw[i] for i in range(len(w))))
            zdeg.append(top_d + len(S))
    M = Module(L, images, parity, weights, zdeg, f"kac:{format_weight(lam, L.m)}")
    M.highest_weight = lam
    M.top_vector = {0: Fraction(1)}
    return M


# ---------------------------------------------------------------------------
# simple modules


def simple_module(L: LieSuperalgebra, lam: Sequence) -> Module:
    """V(lam) = Kac module modulo its unique maximal submodule."""
    lam = _require_dominant(L, lam)
    K = kac_module(L, lam)
    R = radical(K, lam)
    V = quotient_module(K, R, f"hw:{format_weight(lam, L.m)}", check=False)
    V.highest_weight = lam
    return V


def simple_character(L: LieSuperalgebra, lam: Sequence) -> Dict[Weight, int]:
    lam = _require_dominant(L, lam)
    K = kac_module(L, lam)
    R = radical(K, lam)
    out = {}
    for w, idx in K.weight_spaces.items():
        d = len(idx) - R.part(w).dim
        if d:
            out[w] = d
    return out


# ---------------------------------------------------------------------------
# L0 structure


def l0_class(L, w: Sequence) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...], Fraction]:
    """(gl(m) label differences, gl(n) label differences, D-eigenvalue)."""
    w = as_weight(w)
    m = L.m
    d1 = tuple(w[i] - w[i + 1] for i in range(m - 1))
    d2 = tuple(w[i] - w[i + 1] for i in range(m, len(w) - 1))
    return d1, d2, sum(w[m:], Fraction(0))


def decompose_L0(M: Module, check: bool = True) -> Dict[Weight, int]:
    """L0 highest weights with multiplicities, from L0-singular vectors.

    The dimension sum over constituents (Weyl formula) must equal dim M.
    """
    L = M.algebra
    out: Dict[Weight, int] = {}
    for w, vecs in singular_vectors(M, "L0"):
        out[w] = out.get(w, 0) + len(vecs)
    if check:
        total = sum(l0_dimension(L.m, w) * k for w, k in out.items())
        if total != M.dim:
            raise ModuleError(f"L0 constituents account for {total} of {M.dim} dimensions")
    return out


def _factor_order_key(w: Weight):
    return (root_height(w), w)


def composition_factors(M: Module) -> List[Weight]:
    """Highest weights of a composition series (with multiplicity), by recursive peeling."""
    if M.dim == 0:
        return []
    sv = singular_vectors(M, "L")
    w, vecs = max(sv, key=lambda item: _factor_order_key(item[0]))
    Y = cyclic_submodule(M, vecs[0])
    if Y.part(w).dim != 1:
        raise ModuleError("cyclic module of a singular vector has a non-simple top")
    Ymod = submodule_as_module(M, Y)
    R = radical(Ymod, w)
    factors = [w]
    if R.dim:
        factors = composition_factors(submodule_as_module(Ymod, R)) + factors
    if Y.dim < M.dim:
        factors += composition_factors(quotient_module(M, Y, check=False))
    return sorted(factors, key=_factor_order_key, reverse=True)


def top_weight_line(M: Module, w: Weight) -> Subspace:
    return Subspace.full(len(M.weight_spaces[w]))
