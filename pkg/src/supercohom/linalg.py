"""
Sparse exact linear algebra over the rationals.

Rows are eliminated fraction-free: every working row is kept as a dict of
Python integers divided by its content, so no Fraction arithmetic happens in
the inner loop.  Pivots are chosen with a static Markowitz rule (sparsest
row first, then the candidate column with the fewest entries in the input)
with index tie-breaks, which makes every result deterministic.

An optional prepass computes the rank modulo a large prime.  Rank mod p is
a lower bound for the rational rank, so a full modular rank certifies the
answer; otherwise the exact elimination runs.  The prepass never changes
results, it only skips work.
"""

from __future__ import annotations

import heapq
import os
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence

Vector = Dict[int, Fraction]

PRIME = 2_147_483_647

_MODULAR_PREPASS = os.environ.get("SUPERCOHOM_NO_MODULAR", "") == ""


def set_modular_prepass(enabled: bool) -> None:
    """Globally enable or disable the modular rank prepass (audit runs)."""
    global _MODULAR_PREPASS
    _MODULAR_PREPASS = bool(enabled)


def modular_prepass_enabled() -> bool:
    return _MODULAR_PREPASS


class DimensionMismatch(ValueError):
    pass


def fstr(x) -> str:
    """Serialize a rational as ``p/q`` (or ``p`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fparse(s: str) -> Fraction:
    return Fraction(s)


def _clean(vec) -> Vector:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


class SparseRationalMatrix:
    """Row-keyed sparse matrix with arbitrary precision rational entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Dict[int, Vector]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: Dict[int, Vector] = {}
        if rows:
            for r, row in rows.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row {r} out of range")
                clean = {}
                for c, v in row.items():
                    if not 0 <= c < ncols:
                        raise IndexError(f"column {c} out of range")
                    if v != 0:
                        clean[c] = Fraction(v)
                if clean:
                    self.rows[r] = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseRationalMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = {r: {c: v for c, v in enumerate(row) if v != 0} for r, row in enumerate(data)}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Vector]) -> "SparseRationalMatrix":
        rows: Dict[int, Vector] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    rows.setdefault(r, {})[c] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    def __getitem__(self, key):
        r, c = key
        return self.rows.get(r, {}).get(c, Fraction(0))

    def __setitem__(self, key, value):
        r, c = key
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(key)
        row = self.rows.setdefault(r, {})
        if value == 0:
            row.pop(c, None)
            if not row:
                del self.rows[r]
        else:
            row[c] = Fraction(value)

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __repr__(self):
        return f"SparseRationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def transpose(self) -> "SparseRationalMatrix":
        rows: Dict[int, Vector] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        out = SparseRationalMatrix(self.ncols, self.nrows)
        out.rows = rows
        return out

    def columns(self) -> Dict[int, Vector]:
        return self.transpose().rows

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            target = rows.setdefault(r, {})
            for c, v in row.items():
                nv = target.get(c, 0) + v
                if nv:
                    target[c] = nv
                else:
                    target.pop(c, None)
            if not target:
                del rows[r]
        out = SparseRationalMatrix(self.nrows, self.ncols)
        out.rows = rows
        return out

    def __sub__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "SparseRationalMatrix":
        out = SparseRationalMatrix(self.nrows, self.ncols)
        if s != 0:
            out.rows = {r: {c: v * s for c, v in row.items()} for r, row in self.rows.items()}
        return out

    def __matmul__(self, other):
        if isinstance(other, SparseRationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            rows: Dict[int, Vector] = {}
            for r, row in self.rows.items():
                acc: Vector = {}
                for k, a in row.items():
                    orow = other.rows.get(k)
                    if not orow:
                        continue
                    for c, b in orow.items():
                        acc[c] = acc.get(c, 0) + a * b
                acc = {c: v for c, v in acc.items() if v}
                if acc:
                    rows[r] = acc
            out = SparseRationalMatrix(self.nrows, other.ncols)
            out.rows = rows
            return out
        return self.matvec(other)

    def matvec(self, vec: Vector) -> Vector:
        out: Vector = {}
        for r, row in self.rows.items():
            s = 0
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            if s:
                out[r] = s
        return out

    # -- debug dump: "rows cols" header then sorted "r c p/q" triplets
    def dump(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                lines.append(f"{r} {c} {fstr(row[c])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols = map(int, lines[0].split())
        rows: Dict[int, Vector] = {}
        for ln in lines[1:]:
            r, c, v = ln.split()
            rows.setdefault(int(r), {})[int(c)] = Fraction(v)
        return cls(nrows, ncols, rows)

    def rank(self, modular_prepass: Optional[bool] = None) -> int:
        return rank(self, modular_prepass)

    def kernel_basis(self) -> "Subspace":
        return kernel_basis(self)


# ---------------------------------------------------------------------------
# fraction-free elimination engine


def _integer_row(row) -> Dict[int, int]:
    """Scale a rational row to coprime integers with a positive leading entry."""
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        if d != 1:
            den = den * d // gcd(den, d)
    out = {}
    for c, v in row.items():
        if v:
            iv = v * den
            out[c] = int(iv) if not isinstance(iv, Fraction) else iv.numerator
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    if not row:
        return row
    g = gcd(*row.values())
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


class _Eliminator:
    """Incremental echelon builder.

    Pivot rows are stored by pivot column together with their insertion
    order.  A pivot row never contains the pivot column of an older row, so
    reducing an incoming row against pivots in insertion order terminates.
    """

    def __init__(self, colcount: Optional[Dict[int, int]] = None, allowed=None):
        self.colcount = colcount or {}
        self.allowed = allowed
        self.pivot_rows: Dict[int, Dict[int, int]] = {}
        self.order: Dict[int, int] = {}
        self.pivot_cols: List[int] = []

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        order = self.order
        heap = [order[c] for c in row if c in order]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            c = self.pivot_cols[k]
            a = row.get(c)
            if not a:
                continue
            prow = self.pivot_rows[c]
            p = prow[c]
            g = gcd(p, a)
            pm, am = p // g, a // g
            if pm < 0:
                pm, am = -pm, -am
            if pm != 1:
                row = {j: v * pm for j, v in row.items()}
            for j, v in prow.items():
                nv = row.get(j, 0) - am * v
                if nv:
                    if j not in row and j in order:
                        kj = order[j]
                        if kj not in seen:
                            seen.add(kj)
                            heapq.heappush(heap, kj)
                    row[j] = nv
                else:
                    row.pop(j, None)
            row = _primitive(row)
        return row

    def choose_pivot(self, row: Dict[int, int]) -> Optional[int]:
        cc = self.colcount
        best = None
        for c in row:
            if self.allowed is not None and not self.allowed(c):
                continue
            key = (cc.get(c, 0), c)
            if best is None or key < best:
                best = key
        return None if best is None else best[1]

    def insert(self, row: Dict[int, int]) -> Optional[int]:
        """Reduce ``row`` and add it as a pivot row; return the pivot column."""
        row = self.reduce(row)
        if not row:
            return None
        c = self.choose_pivot(row)
        if c is None:
            self._last_residual = row
            return None
        if row[c] < 0:
            row = {j: -v for j, v in row.items()}
        self.order[c] = len(self.pivot_cols)
        self.pivot_cols.append(c)
        self.pivot_rows[c] = row
        return c

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def back_substitute(self) -> None:
        """Clear every pivot column from all other pivot rows (newest first)."""
        done = set()
        for c in reversed(self.pivot_cols):
            row = self.pivot_rows[c]
            others = [j for j in row if j != c and j in self.pivot_rows]
            for j in others:
                a = row.get(j)
                if not a:
                    continue
                prow = self.pivot_rows[j]
                p = prow[j]
                g = gcd(p, a)
                pm, am = p // g, a // g
                if pm != 1:
                    row = {k: v * pm for k, v in row.items()}
                for k, v in prow.items():
                    nv = row.get(k, 0) - am * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            row = _primitive(row)
            if row[c] < 0:
                row = {k: -v for k, v in row.items()}
            self.pivot_rows[c] = row
            done.add(c)


def _colcount(rows: Iterable[Dict]) -> Dict[int, int]:
    cc: Dict[int, int] = {}
    for row in rows:
        for c in row:
            cc[c] = cc.get(c, 0) + 1
    return cc


def _ordered_rows(rows: Dict[int, Vector]) -> List[Dict[int, int]]:
    # Markowitz row order: sparsest rows first, row index as tie-break.
    keys = sorted(rows, key=lambda r: (len(rows[r]), r))
    return [_integer_row(rows[r]) for r in keys]


def _eliminate(A: SparseRationalMatrix, allowed=None) -> _Eliminator:
    int_rows = _ordered_rows(A.rows)
    elim = _Eliminator(_colcount(int_rows), allowed)
    for row in int_rows:
        elim.insert(row)
    return elim


def rank_mod_p(A: SparseRationalMatrix, p: int = PRIME) -> Optional[int]:
    """Rank modulo ``p``; None if some denominator vanishes mod p."""
    rows = []
    for r in sorted(A.rows, key=lambda r: (len(A.rows[r]), r)):
        row = {}
        for c, v in A.rows[r].items():
            d = v.denominator % p
            if d == 0:
                return None
            x = v.numerator * pow(d, p - 2, p) % p
            if x:
                row[c] = x
        if row:
            rows.append(row)
    cc = _colcount(rows)
    pivots: Dict[int, Dict[int, int]] = {}
    order: Dict[int, int] = {}
    pcols: List[int] = []
    for row in rows:
        heap = [order[c] for c in row if c in order]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            c = pcols[k]
            a = row.get(c)
            if not a:
                continue
            for j, v in pivots[c].items():
                nv = (row.get(j, 0) - a * v) % p
                if nv:
                    if j not in row and j in order and order[j] not in seen:
                        seen.add(order[j])
                        heapq.heappush(heap, order[j])
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        c = min(row, key=lambda j: (cc.get(j, 0), j))
        inv = pow(row[c], p - 2, p)
        row = {j: v * inv % p for j, v in row.items()}
        order[c] = len(pcols)
        pcols.append(c)
        pivots[c] = row
    return len(pcols)


def rank(A: SparseRationalMatrix, modular_prepass: Optional[bool] = None) -> int:
    if modular_prepass is None:
        modular_prepass = _MODULAR_PREPASS
    if not A.rows:
        return 0
    if modular_prepass:
        rp = rank_mod_p(A)
        if rp is not None and rp == min(A.nrows, A.ncols, len(A.rows)):
            return rp
    return _eliminate(A).rank


def _rref_columns(A: SparseRationalMatrix):
    elim = _eliminate(A)
    elim.back_substitute()
    return elim


def kernel_basis(A: SparseRationalMatrix) -> "Subspace":
    """Canonical basis of the right kernel {x : A x = 0}."""
    elim = _rref_columns(A)
    pivots = elim.pivot_rows
    free = [c for c in range(A.ncols) if c not in pivots]
    # column f -> list of (pivot col, pivot value, entry)
    by_free: Dict[int, List] = {f: [] for f in free}
    for c, row in pivots.items():
        pc = row[c]
        for j, v in row.items():
            if j != c:
                by_free[j].append((c, pc, v))
    vectors = []
    for f in free:
        vec: Vector = {f: Fraction(1)}
        for c, pc, v in by_free[f]:
            vec[c] = Fraction(-v, pc)
        vectors.append(vec)
    return Subspace.from_kernel_vectors(A.ncols, vectors, free)


def solve(A: SparseRationalMatrix, b: Vector) -> Optional[Vector]:
    """A particular solution of A x = b, or None when inconsistent."""
    n = A.ncols
    aug_rows = {r: dict(row) for r, row in A.rows.items()}
    for r, v in b.items():
        if v:
            if not 0 <= r < A.nrows:
                raise DimensionMismatch(f"rhs index {r} outside {A.nrows} rows")
            aug_rows.setdefault(r, {})[n] = Fraction(v)
    aug = SparseRationalMatrix(A.nrows, n + 1)
    aug.rows = aug_rows
    int_rows = _ordered_rows(aug.rows)
    elim = _Eliminator(_colcount(int_rows), allowed=lambda c: c < n)
    for row in int_rows:
        red = elim.reduce(row)
        if not red:
            continue
        if elim.choose_pivot(red) is None:
            return None
        elim.insert(red)
    elim.back_substitute()
    x: Vector = {}
    for c, row in elim.pivot_rows.items():
        rhs = row.get(n)
        if rhs:
            x[c] = Fraction(rhs, row[c])
    return x


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of Q^ambient in canonical reduced row echelon form.

    The basis rows have leading coefficient one at their first nonzero
    column, all other basis rows vanish there, and rows are sorted by pivot.
    Two subspaces are equal exactly when their bases are equal.
    """

    __slots__ = ("ambient", "basis", "pivots", "_pivot_index")

    def __init__(self, ambient: int, basis: List[Vector], pivots: List[int]):
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self._pivot_index = {p: i for i, p in enumerate(pivots)}

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, [], [])

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, [{i: Fraction(1)} for i in range(ambient)], list(range(ambient)))

    @classmethod
    def span(cls, ambient: int, vectors: Iterable) -> "Subspace":
        rows: Dict[int, Vector] = {}
        for vec in vectors:
            v = _clean(vec)
            for c in v:
                if not 0 <= c < ambient:
                    raise DimensionMismatch(f"index {c} outside ambient {ambient}")
            while v:
                lead = min(v)
                prow = rows.get(lead)
                if prow is None:
                    inv = 1 / v[lead]
                    rows[lead] = {c: x * inv for c, x in v.items()}
                    break
                a = v[lead]
                for c, x in prow.items():
                    nv = v.get(c, 0) - a * x
                    if nv:
                        v[c] = nv
                    else:
                        v.pop(c, None)
        return cls._from_echelon(ambient, rows)

    @classmethod
    def _from_echelon(cls, ambient: int, rows: Dict[int, Vector]) -> "Subspace":
        pivots = sorted(rows)
        # back substitution, bottom up
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            row = rows[p]
            for q in pivots[i + 1:]:
                a = row.get(q)
                if a:
                    for c, x in rows[q].items():
                        nv = row.get(c, 0) - a * x
                        if nv:
                            row[c] = nv
                        else:
                            row.pop(c, None)
        return cls(ambient, [rows[p] for p in pivots], pivots)

    @classmethod
    def from_kernel_vectors(cls, ambient, vectors, free) -> "Subspace":
        return cls.span(ambient, vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, vec) -> Vector:
        """Remainder of ``vec`` modulo the subspace (zero at every pivot)."""
        v = _clean(vec)
        for p, row in zip(self.pivots, self.basis):
            a = v.get(p)
            if a:
                for c, x in row.items():
                    nv = v.get(c, 0) - a * x
                    if nv:
                        v[c] = nv
                    else:
                        v.pop(c, None)
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def coordinates(self, vec) -> List[Fraction]:
        """Coefficients of ``vec`` in the echelon basis; raises if vec is outside."""
        coeffs = [Fraction(vec.get(p, 0)) for p in self.pivots]
        rebuilt: Vector = {}
        for a, row in zip(coeffs, self.basis):
            if a:
                for c, x in row.items():
                    rebuilt[c] = rebuilt.get(c, 0) + a * x
        rebuilt = {c: x for c, x in rebuilt.items() if x}
        if rebuilt != _clean(vec):
            raise ValueError("vector is not in the subspace")
        return coeffs

    def complement_indices(self) -> List[int]:
        """Coordinate indices spanning a complement (the non-pivot columns)."""
        piv = self._pivot_index
        return [i for i in range(self.ambient) if i not in piv]

    def quotient_coordinates(self, vec) -> Vector:
        """Coordinates of vec + S in the basis of complement_indices()."""
        return self.reduce(vec)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def as_matrix(self) -> SparseRationalMatrix:
        """Matrix whose columns are the basis vectors."""
        return SparseRationalMatrix.from_columns(self.ambient, self.basis)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    if S.ambient != T.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    return Subspace.span(S.ambient, list(S.basis) + list(T.basis))


def intersect(S: Subspace, T: Subspace) -> Subspace:
    if S.ambient != T.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if not S.dim or not T.dim:
        return Subspace.zero(S.ambient)
    cols = list(S.basis) + [{c: -x for c, x in t.items()} for t in T.basis]
    K = kernel_basis(SparseRationalMatrix.from_columns(S.ambient, cols))
    out = []
    for k in K.basis:
        v: Vector = {}
        for i, a in k.items():
            if i < S.dim:
                for c, x in S.basis[i].items():
                    v[c] = v.get(c, 0) + a * x
        out.append(v)
    return Subspace.span(S.ambient, out)


def dense_rank(data: Sequence[Sequence]) -> int:
    """Textbook dense Gaussian elimination over Fraction (reference oracle)."""
    M = [[Fraction(x) for x in row] for row in data]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r


class IncrementalSpan:
    """Echelon basis grown one vector at a time (leading entry normalized to 1)."""

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: Dict[int, Vector] = {}

    def reduce(self, vec) -> Vector:
        v = _clean(vec)
        rows = self.rows
        done = set()
        while True:
            cand = [c for c in v if c in rows and c not in done]
            if not cand:
                return v
            lead = min(cand)
            done.add(lead)
            a = v.get(lead)
            if not a:
                continue
            for c, x in rows[lead].items():
                nv = v.get(c, 0) - a * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)

    def add(self, vec) -> bool:
        """Add ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        self.rows[lead] = {c: x * inv for c, x in v.items()}
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        return Subspace._from_echelon(self.ambient, {p: dict(r) for p, r in self.rows.items()})
