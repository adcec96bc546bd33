"""Chevalley-Eilenberg cochains C^0..C^3(L, V), differentials and cohomology.

A cochain of degree n is stored by its values on normalized super-exterior
index tuples: coordinate (t, a) is the v_a-component of f(e_{t_1}, ..., e_{t_n}).
Global coordinate index = tuple_index * dim V + a.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Element, LieSuperalgebra, Weight
from .linalg import (
    IncrementalSpan,
    SparseRationalMatrix,
    fstr,
    kernel_basis,
    rank,
    solve,
)
from .modules import Column, Module, normalize_tuple, power_basis

Cochain = Dict[int, Fraction]
Term = Tuple[Fraction, int, Optional[int]]  # (coefficient, source tuple index, acting basis index or None)

MAX_DEGREE = 3


class CohomologyError(ValueError):
    pass


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


@lru_cache(maxsize=None)
def exterior_tuples(L: LieSuperalgebra, n: int) -> Tuple[Tuple[int, ...], ...]:
    if not 0 <= n <= MAX_DEGREE:
        raise CohomologyError(f"cochain degree {n} outside 0..{MAX_DEGREE}")
    return tuple(power_basis(L.parity, n, "ext"))


@lru_cache(maxsize=None)
def _tuple_index(L: LieSuperalgebra, n: int) -> Dict[Tuple[int, ...], int]:
    return {t: i for i, t in enumerate(exterior_tuples(L, n))}


def _normalized(L, seq) -> Tuple[int, Optional[int]]:
    sign, t = normalize_tuple(seq, L.parity, "ext")
    if not sign:
        return 0, None
    return sign, _tuple_index(L, len(seq))[t]


class CochainSpace:
    def __init__(self, L: LieSuperalgebra, V: Module, n: int):
        self.algebra = L
        self.module = V
        self.degree = n
        self.tuples = exterior_tuples(L, n)
        self.dim = len(self.tuples) * V.dim
        self._blocks: Optional[Dict[Weight, List[int]]] = None

    def __repr__(self):
        return f"C^{self.degree}({self.algebra!r}, {self.module.descriptor}) dim={self.dim}"

    def index(self, t: int, a: int) -> int:
        return t * self.module.dim + a

    def split(self, idx: int) -> Tuple[int, int]:
        return divmod(idx, self.module.dim)

    def tuple_weight(self, t: int) -> Weight:
        L = self.algebra
        w = [Fraction(0)] * L.N
        for a in self.tuples[t]:
            for i, x in enumerate(L.root_weight(a)):
                w[i] += x
        return tuple(w)

    def weight(self, idx: int) -> Weight:
        t, a = self.split(idx)
        tw = self.tuple_weight(t)
        return tuple(x - y for x, y in zip(self.module.weights[a], tw))

    @property
    def blocks(self) -> Dict[Weight, List[int]]:
        """Basis indices grouped by total weight (module weight minus argument weights)."""
        if self._blocks is None:
            V = self.module
            by_weight: Dict[Weight, List[int]] = {}
            for w, idx in V.weight_spaces.items():
                by_weight[w] = idx
            blocks: Dict[Weight, List[int]] = {}
            for t in range(len(self.tuples)):
                tw = self.tuple_weight(t)
                for a in range(V.dim):
                    w = tuple(x - y for x, y in zip(V.weights[a], tw))
                    blocks.setdefault(w, []).append(self.index(t, a))
            self._blocks = blocks
        return self._blocks

    def zero_block(self) -> List[int]:
        zero = tuple(Fraction(0) for _ in range(self.algebra.N))
        return self.blocks.get(zero, [])


def cochain_space(L: LieSuperalgebra, V: Module, n: int) -> CochainSpace:
    if V.algebra is not L:
        raise CohomologyError("module is over a different algebra")
    return CochainSpace(L, V, n)


# ---------------------------------------------------------------------------
# differential terms (depend only on L)


def _pairing_terms(L, n: int, target: Tuple[int, ...]) -> List[Term]:
    """Terms of (delta^n f)(target), for target a normalized (n+1)-tuple."""
    p = L.parity
    sc = L.structure_constants
    out: List[Term] = []

    def add(coef, seq, op):
        s, t = _normalized(L, seq)
        if s:
            out.append((Fraction(coef * s), t, op))

    def add_bracket(coef, a, b, build):
        for k, c in sc.get((a, b), {}).items():
            add(coef * c, build(k), None)

    if n == 0:
        (x,) = target
        out.append((Fraction(1), 0, x))
    elif n == 1:
        x, y = target
        add(1, (y,), x)
        add(-_sgn(p[x] * p[y]), (x,), y)
        add_bracket(-1, x, y, lambda k: (k,))
    elif n == 2:
        x, y, z = target
        add(1, (y, z), x)
        add(-_sgn(p[x] * p[y]), (x, z), y)
        add(_sgn((p[x] + p[y]) * p[z]), (x, y), z)
        add_bracket(-1, x, y, lambda k: (k, z))
        add_bracket(_sgn(p[y] * p[z]), x, z, lambda k: (k, y))
        add_bracket(1, y, z, lambda k: (x, k))
    else:
        raise CohomologyError(f"differential of degree {n} not supported")
    return out


@lru_cache(maxsize=None)
def differential_terms(L: LieSuperalgebra, n: int) -> Tuple[Tuple[Tuple[int, Fraction, Optional[int]], ...], ...]:
    """For each source n-tuple, the list (target index, coefficient, op)."""
    targets = exterior_tuples(L, n + 1)
    inv: List[List[Tuple[int, Fraction, Optional[int]]]] = [[] for _ in exterior_tuples(L, n)]
    for j, J in enumerate(targets):
        acc: Dict[Tuple[int, Optional[int]], Fraction] = {}
        for c, t, op in _pairing_terms(L, n, J):
            acc[t, op] = acc.get((t, op), 0) + c
        for (t, op), c in acc.items():
            if c:
                inv[t].append((j, c, op))
    return tuple(tuple(x) for x in inv)


def apply_differential(L: LieSuperalgebra, V: Module, n: int, f: Cochain) -> Cochain:
    """delta^n f in global coordinates of C^{n+1}."""
    terms = differential_terms(L, n)
    d = V.dim
    out: Cochain = {}
    for idx, val in f.items():
        if not val:
            continue
        t, a = divmod(idx, d)
        for j, c, op in terms[t]:
            if op is None:
                r = j * d + a
                out[r] = out.get(r, 0) + c * val
            else:
                for b, v in V.images[op][a].items():
                    r = j * d + b
                    out[r] = out.get(r, 0) + c * v * val
    return {k: v for k, v in out.items() if v}


def differential(L: LieSuperalgebra, V: Module, n: int, columns: Optional[Sequence[int]] = None) -> SparseRationalMatrix:
    """Matrix of delta^n (rows: C^{n+1}, columns: C^n or the given column subset)."""
    if not 0 <= n <= 2:
        raise CohomologyError("differentials are provided for n = 0, 1, 2")
    src = CochainSpace(L, V, n)
    tgt_dim = len(exterior_tuples(L, n + 1)) * V.dim
    cols = range(src.dim) if columns is None else columns
    images = [apply_differential(L, V, n, {c: Fraction(1)}) for c in cols]
    return SparseRationalMatrix.from_columns(tgt_dim, images)


def check_dd_zero(L: LieSuperalgebra, V: Module, n: int) -> bool:
    """delta^{n+1} o delta^n == 0 on every basis cochain (n = 0, 1)."""
    src = CochainSpace(L, V, n)
    for c in range(src.dim):
        img = apply_differential(L, V, n, {c: Fraction(1)})
        if apply_differential(L, V, n + 1, img):
            return False
    return True


# ---------------------------------------------------------------------------
# evaluation on arbitrary arguments


def evaluate(L: LieSuperalgebra, V: Module, f: Cochain, args: Sequence[Element]) -> Column:
    """f(x_1, ..., x_n) for algebra elements given as coefficient dicts."""
    n = len(args)
    d = V.dim
    vals: Dict[int, Dict[int, Fraction]] = {}
    for idx, v in f.items():
        t, a = divmod(idx, d)
        vals.setdefault(t, {})[a] = v

    out: Column = {}

    def rec(pos, seq, coef):
        if pos == n:
            s, t = _normalized(L, seq)
            if s and t in vals:
                for a, v in vals[t].items():
                    out[a] = out.get(a, 0) + s * coef * v
            return
        for k, c in args[pos].items():
            if c:
                rec(pos + 1, seq + [k], coef * c)

    rec(0, [], Fraction(1))
    return {a: v for a, v in out.items() if v}


def cochain_from_values(L: LieSuperalgebra, V: Module, values: Dict[Tuple[int, ...], Column]) -> Cochain:
    """Build a cochain from values on ordered basis tuples (super-alternating extension).

    Conflicting values for tuples with the same normalization raise.
    """
    d = V.dim
    out: Cochain = {}
    seen: Dict[int, Column] = {}
    for seq, col in values.items():
        s, t = _normalized(L, list(seq))
        if not s:
            if any(col.values()):
                raise CohomologyError(f"nonzero value on a vanishing tuple {seq}")
            continue
        scaled = {a: s * v for a, v in col.items() if v}
        if t in seen:
            if seen[t] != scaled:
                raise CohomologyError(f"inconsistent values for tuple {seq}")
            continue
        seen[t] = scaled
        for a, v in scaled.items():
            out[t * d + a] = Fraction(v)
    return out


def coboundary_value(L: LieSuperalgebra, V: Module, g: Cochain, x: int, y: int, z: int) -> Column:
    """(delta^2 g)(e_x, e_y, e_z) by the explicit formula, for arbitrary ordered arguments."""
    p = L.parity

    def e(k):
        return {k: Fraction(1)}

    def act(k, col):
        return V.act(k, col)

    def add(acc, col, s):
        for a, v in col.items():
            acc[a] = acc.get(a, 0) + s * v

    out: Column = {}
    add(out, act(x, evaluate(L, V, g, [e(y), e(z)])), 1)
    add(out, act(y, evaluate(L, V, g, [e(x), e(z)])), -_sgn(p[x] * p[y]))
    add(out, act(z, evaluate(L, V, g, [e(x), e(y)])), _sgn((p[x] + p[y]) * p[z]))
    add(out, evaluate(L, V, g, [L.bracket(e(x), e(y)), e(z)]), -1)
    add(out, evaluate(L, V, g, [L.bracket(e(x), e(z)), e(y)]), _sgn(p[y] * p[z]))
    add(out, evaluate(L, V, g, [e(x), L.bracket(e(y), e(z))]), 1)
    return {a: v for a, v in out.items() if v}


# ---------------------------------------------------------------------------
# L0-invariant subcomplex


@lru_cache(maxsize=None)
def _coadjoint_terms(L: LieSuperalgebra, n: int, x: int):
    """For source tuple t: [(target tuple j, coefficient)] of f -> -sum_i f(.., [x, y_i], ..)."""
    tuples = exterior_tuples(L, n)
    sc = L.structure_constants
    inv: List[List[Tuple[int, Fraction]]] = [[] for _ in tuples]
    for j, J in enumerate(tuples):
        acc: Dict[int, Fraction] = {}
        for i, y in enumerate(J):
            for k, c in sc.get((x, y), {}).items():
                seq = list(J)
                seq[i] = k
                s, t = _normalized(L, seq)
                if s:
                    acc[t] = acc.get(t, 0) - s * c
        for t, c in acc.items():
            if c:
                inv[t].append((j, c))
    return tuple(tuple(v) for v in inv)


def cochain_action(L: LieSuperalgebra, V: Module, n: int, x: int, f: Cochain) -> Cochain:
    """(x.f)(y) = x.f(y) - sum_i f(y_1, .., [x, y_i], .., y_n) for even x."""
    if L.parity[x]:
        raise CohomologyError("cochain action implemented for even elements only")
    d = V.dim
    terms = _coadjoint_terms(L, n, x)
    out: Cochain = {}
    for idx, val in f.items():
        t, a = divmod(idx, d)
        for b, v in V.images[x][a].items():
            r = t * d + b
            out[r] = out.get(r, 0) + v * val
        for j, c in terms[t]:
            r = j * d + a
            out[r] = out.get(r, 0) + c * val
    return {k: v for k, v in out.items() if v}


def _l0_generators(L) -> List[int]:
    return list(L.simple_root_indices("L0", 1)) + list(L.simple_root_indices("L0", -1))


def invariant_cochains(L: LieSuperalgebra, V: Module, n: int) -> List[Cochain]:
    """Basis of C^n(L, V)^{L0}: weight-zero block, then the joint kernel of the
    L0 simple root vectors acting on cochains."""
    space = CochainSpace(L, V, n)
    cols = space.zero_block()
    if not cols:
        return []
    gens = _l0_generators(L)
    rows: Dict[int, Dict[int, Fraction]] = {}
    stride = space.dim
    for c_local, c in enumerate(cols):
        for g_i, x in enumerate(gens):
            for r, v in cochain_action(L, V, n, x, {c: Fraction(1)}).items():
                rows.setdefault(g_i * stride + r, {})[c_local] = v
    A = SparseRationalMatrix(max(len(gens) * stride, 1), len(cols), rows)
    K = kernel_basis(A)
    return [{cols[i]: v for i, v in b.items()} for b in K.basis]


def is_invariant(L, V, n, f: Cochain) -> bool:
    space = CochainSpace(L, V, n)
    zero = tuple(Fraction(0) for _ in range(L.N))
    if any(space.weight(i) != zero for i, v in f.items() if v):
        return False
    return all(not cochain_action(L, V, n, x, f) for x in _l0_generators(L))


@dataclass
class InvariantSubcomplex:
    degree: int
    bases: Dict[int, List[Cochain]]
    images: Dict[int, List[Cochain]]  # delta of each basis cochain


def invariant_subcomplex(L: LieSuperalgebra, V: Module, n: int, check: bool = True) -> InvariantSubcomplex:
    """Invariant cochains in degrees n-1, n (n <= 2) and their differentials."""
    if not 0 <= n <= 2:
        raise CohomologyError("invariant subcomplex provided for n <= 2")
    bases, images = {}, {}
    for k in range(max(n - 1, 0), n + 1):
        B = invariant_cochains(L, V, k)
        bases[k] = B
        images[k] = [apply_differential(L, V, k, f) for f in B]
        if check:
            for img in images[k]:
                if img and not is_invariant(L, V, k + 1, img):
                    raise CohomologyError("differential does not preserve invariants")
    return InvariantSubcomplex(n, bases, images)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologyReport:
    algebra: str
    module: str
    degree: int
    method: str
    cochain_dims: Dict[str, int]
    rank_prev: int
    dim_kernel: int
    dim_H: int
    representatives: List[List[Tuple[int, str]]] = field(default_factory=list)
    representative_is_coboundary: List[bool] = field(default_factory=list)
    elapsed: float = 0.0
    pivots: Dict[str, int] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "module": self.module,
            "degree": self.degree,
            "method": self.method,
            "cochain_dims": self.cochain_dims,
            "rank_prev": self.rank_prev,
            "dim_kernel": self.dim_kernel,
            "dim_H": self.dim_H,
            "representatives": [[[i, v] for i, v in r] for r in self.representatives],
            "representative_is_coboundary": self.representative_is_coboundary,
            "elapsed": round(self.elapsed, 3),
            "pivots": self.pivots,
            "flags": self.flags,
        }


def _combine(basis: List[Cochain], coeffs: Dict[int, Fraction]) -> Cochain:
    out: Cochain = {}
    for i, c in coeffs.items():
        for k, v in basis[i].items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _pick_representatives(kernel: List[Cochain], image: List[Cochain], count: int) -> List[Cochain]:
    if count <= 0:
        return []
    span = IncrementalSpan(1 << 40)
    for v in image:
        span.add(v)
    reps = []
    for v in kernel:
        if span.add(v):
            reps.append(v)
            if len(reps) == count:
                break
    return reps


def _brute(L, V, n, want_reps: bool):
    prev_rank = 0
    dim_ker = 0
    dims = {}
    space = CochainSpace(L, V, n)
    prev_space = CochainSpace(L, V, n - 1) if n > 0 else None
    dims[f"C{n}"] = space.dim
    if prev_space is not None:
        dims[f"C{n - 1}"] = prev_space.dim
    kernels: List[Cochain] = []
    images: List[Cochain] = []
    prev_blocks = prev_space.blocks if prev_space else {}
    for w, cols in space.blocks.items():
        A = differential(L, V, n, cols)
        if want_reps:
            K = kernel_basis(A)
            kdim = K.dim
            kernels.extend({cols[i]: v for i, v in b.items()} for b in K.basis)
        else:
            kdim = len(cols) - rank(A)
        dim_ker += kdim
        if n > 0 and w in prev_blocks:
            pcols = prev_blocks[w]
            imgs = [apply_differential(L, V, n - 1, {c: Fraction(1)}) for c in pcols]
            B = SparseRationalMatrix.from_columns(space.dim, imgs)
            r = rank(B)
            prev_rank += r
            if want_reps and kdim:
                images.extend(imgs)
    return dims, prev_rank, dim_ker, kernels, images


def _invariant(L, V, n, want_reps: bool, check: bool):
    sub = invariant_subcomplex(L, V, n, check=check)
    dims = {f"C{k}_inv": len(B) for k, B in sub.bases.items()}
    Bn = sub.bases[n]
    A = SparseRationalMatrix.from_columns(1 << 40, sub.images[n]) if Bn else None
    if A is not None:
        K = kernel_basis(A)
        dim_ker = K.dim
        kernels = [_combine(Bn, b) for b in K.basis] if want_reps else []
    else:
        dim_ker, kernels = 0, []
    prev_rank = 0
    images: List[Cochain] = []
    if n > 0 and sub.bases[n - 1]:
        images = [img for img in sub.images[n - 1]]
        prev_rank = rank(SparseRationalMatrix.from_columns(1 << 40, images))
    return dims, prev_rank, dim_ker, kernels, images


def cohomology(
    L: LieSuperalgebra,
    V: Module,
    n: int,
    method: str = "invariant",
    representatives: bool = True,
    check: bool = True,
) -> CohomologyReport:
    if not 0 <= n <= 2:
        raise CohomologyError("cohomology is computed for n = 0, 1, 2")
    if method not in ("brute", "invariant", "both"):
        raise CohomologyError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    flags: List[str] = []
    runs = {}
    for meth in (("brute", "invariant") if method == "both" else (method,)):
        if meth == "brute":
            runs[meth] = _brute(L, V, n, representatives)
        else:
            runs[meth] = _invariant(L, V, n, representatives, check)
    results = {k: r[2] - r[1] for k, r in runs.items()}
    if method == "both" and results["brute"] != results["invariant"]:
        flags.append(f"methods disagree: {results}")
    chosen = "brute" if "brute" in runs else "invariant"
    dims, prev_rank, dim_ker, kernels, images = runs[chosen]
    if method == "both":
        for k, v in runs["invariant"][0].items():
            dims[k] = v
    dim_H = dim_ker - prev_rank
    if dim_H < 0:
        raise ArithmeticError("negative cohomology dimension")
    reps = _pick_representatives(kernels, images, dim_H) if representatives else []
    cob = []
    for r in reps:
        cob.append(is_coboundary(L, V, n, r) is not None)
    return CohomologyReport(
        algebra=L.descriptor,
        module=V.descriptor,
        degree=n,
        method=method,
        cochain_dims=dims,
        rank_prev=prev_rank,
        dim_kernel=dim_ker,
        dim_H=dim_H,
        representatives=[[(i, fstr(v)) for i, v in sorted(r.items())] for r in reps],
        representative_is_coboundary=cob,
        elapsed=time.perf_counter() - t0,
        pivots={"rank_prev": prev_rank, "rank_delta_n": _cochain_count(dims, n) - dim_ker},
        flags=flags,
    )


def _cochain_count(dims: Dict[str, int], n: int) -> int:
    return dims.get(f"C{n}", dims.get(f"C{n}_inv", 0))


def is_coboundary(L: LieSuperalgebra, V: Module, n: int, f: Cochain) -> Optional[Cochain]:
    """A witness h with delta^{n-1} h = f, or None (certified by the solver).

    Only the weight blocks met by f are assembled.
    """
    if n <= 2 and apply_differential(L, V, n, f):
        raise CohomologyError("input is not a cocycle")
    if not f:
        return {}
    if n == 0:
        return None
    space = CochainSpace(L, V, n)
    prev = CochainSpace(L, V, n - 1)
    weights = {space.weight(i) for i in f}
    cols: List[int] = []
    for w in weights:
        cols.extend(prev.blocks.get(w, []))
    if not cols:
        return None
    A = differential(L, V, n - 1, cols)
    x = solve(A, f)
    if x is None:
        return None
    return {cols[i]: v for i, v in x.items() if v}


def H0_dimension_via_invariants(V: Module) -> int:
    from .submodules import invariants

    return invariants(V, "L").dim
