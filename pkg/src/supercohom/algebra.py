"""
The Lie superalgebras gl(m|n) and sl(m|n) as structure-constant algebras.

Basis conventions
-----------------
gl(m|n): the matrix units E_ij in lexicographic (i, j) order.

sl(m|n): the off-diagonal units X_ij = E_ij together with the distinguished
simple coroots h_k (k = 1..m+n-1), placed at the (k, k) slot of the same
lexicographic order.  h_k = E_kk - E_{k+1,k+1} except h_m = E_mm + E_{m+1,m+1}.

Indices in this module are 0-based; labels such as ``X13`` are 1-based.

An element is a dict {basis index: Fraction}.  Weights are tuples of
Fractions (L_1, ..., L_{m+n}) with L_i = Lambda(X_ii); roots are the label
vectors e_a - e_b.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

Element = Dict[int, Fraction]
Matrix = Dict[Tuple[int, int], Fraction]
Weight = Tuple[Fraction, ...]


class AlgebraError(ValueError):
    pass


def _parity(i: int, m: int) -> int:
    return 0 if i < m else 1


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (k, j), b in B.items():
        by_row.setdefault(k, []).append((j, b))
    out: Matrix = {}
    for (i, k), a in A.items():
        for j, b in by_row.get(k, ()):
            out[i, j] = out.get((i, j), 0) + a * b
    return {key: v for key, v in out.items() if v}


def mat_add(A: Matrix, B: Matrix, s=1) -> Matrix:
    out = dict(A)
    for key, v in B.items():
        out[key] = out.get(key, 0) + s * v
    return {key: v for key, v in out.items() if v}


class LieSuperalgebra:
    """gl(m|n) or sl(m|n) with exact structure constants.

    Treat instances as immutable; ``build_algebra`` caches them.
    """

    def __init__(self, kind: str, m: int, n: int):
        if kind not in ("gl", "sl"):
            raise AlgebraError(f"unknown algebra kind {kind!r}")
        if m < 1 or n < 1:
            raise AlgebraError("m and n must be positive")
        if kind == "sl" and m == n:
            raise AlgebraError("sl(m|n) needs m != n")
        self.kind = kind
        self.m = m
        self.n = n
        N = self.N = m + n
        self.sigma = tuple(1 if i < m else -1 for i in range(N))
        self.index_parity = tuple(_parity(i, m) for i in range(N))

        keys: List[Tuple[int, int]] = []
        matrices: List[Matrix] = []
        for i in range(N):
            for j in range(N):
                if i != j:
                    keys.append((i, j))
                    matrices.append({(i, j): Fraction(1)})
                elif kind == "gl":
                    keys.append((i, i))
                    matrices.append({(i, i): Fraction(1)})
                elif i < N - 1:
                    keys.append((i, i))
                    s = 1 if i == m - 1 else -1
                    matrices.append({(i, i): Fraction(1), (i + 1, i + 1): Fraction(s)})
        self.keys = tuple(keys)
        self.index_of = {k: a for a, k in enumerate(keys)}
        self.matrices = tuple(matrices)
        self.dim = len(keys)
        self.labels = tuple(self._label(k) for k in keys)

        pp = self.index_parity
        self.parity = tuple((pp[i] + pp[j]) % 2 for i, j in keys)
        # Z-degree: +1 on the lower-left odd block, -1 on the upper-right one
        self.z_degree = tuple(pp[i] - pp[j] for i, j in keys)
        self.cartan_indices = tuple(a for a, (i, j) in enumerate(keys) if i == j)
        self.root_of = tuple(None if i == j else (i, j) for i, j in keys)
        self.positive_root_indices = tuple(a for a, (i, j) in enumerate(keys) if i < j)
        self.negative_root_indices = tuple(a for a, (i, j) in enumerate(keys) if i > j)
        self.supertrace_vector = tuple(self.supertrace({a: 1}) for a in range(self.dim))

        self.structure_constants: Dict[Tuple[int, int], Element] = {}
        for a in range(self.dim):
            for b in range(self.dim):
                br = self._matrix_bracket(matrices[a], matrices[b], self.parity[a] * self.parity[b])
                if br:
                    self.structure_constants[a, b] = self.from_matrix(br)

        self.D = self._element_D()

    # -- labels & descriptors

    def _label(self, key) -> str:
        i, j = key
        if i != j or self.kind == "gl":
            return f"{'E' if self.kind == 'gl' else 'X'}{i + 1}{j + 1}" if self.N < 10 else f"E{i + 1},{j + 1}"
        return f"h{i + 1}"

    @property
    def descriptor(self) -> str:
        return f"{self.kind}:{self.m}:{self.n}"

    def __repr__(self):
        return f"{self.kind}({self.m}|{self.n})"

    def __reduce__(self):
        return (build_algebra, (self.kind, self.m, self.n))

    # -- matrix realization

    def _matrix_bracket(self, A: Matrix, B: Matrix, sign_exp: int) -> Matrix:
        s = -1 if sign_exp % 2 == 0 else 1
        return mat_add(mat_mul(A, B), mat_mul(B, A), s)

    def to_matrix(self, x: Element) -> Matrix:
        out: Matrix = {}
        for a, c in x.items():
            for key, v in self.matrices[a].items():
                out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def from_matrix(self, M: Matrix) -> Element:
        """Coordinates of a matrix in the basis; raises if M is not in the algebra."""
        out: Element = {}
        diag = [Fraction(0)] * self.N
        for (i, j), v in M.items():
            if v == 0:
                continue
            if i != j:
                out[self.index_of[i, j]] = Fraction(v)
            else:
                diag[i] = Fraction(v)
        if self.kind == "gl":
            for i, v in enumerate(diag):
                if v:
                    out[self.index_of[i, i]] = v
            return out
        m = self.m
        coeff = Fraction(0)
        for k in range(self.N - 1):
            # contribution of h_{k-1} at position k, then solve for c_k
            if k == 0:
                ck = diag[0]
            else:
                prev_sign = 1 if k - 1 == m - 1 else -1
                ck = diag[k] - prev_sign * coeff
            coeff = ck
            if ck:
                out[self.index_of[k, k]] = ck
        last_sign = 1 if self.N - 2 == m - 1 else -1
        if diag[self.N - 1] != last_sign * coeff:
            raise AlgebraError("matrix has nonzero supertrace; not in sl(m|n)")
        return out

    # -- elements

    def element(self, label: str) -> Element:
        return {self.labels.index(label): Fraction(1)}

    def E(self, i: int, j: int) -> Element:
        """The matrix unit E_ij (1-based) as an element; gl, or sl off-diagonal."""
        return self.from_matrix({(i - 1, j - 1): Fraction(1)})

    def X(self, i: int, j: int) -> Element:
        """The generator X_ij = E_ij - sigma_i delta_ij / (m-n) I (1-based), sl only."""
        if self.kind != "sl":
            raise AlgebraError("X_ij is defined for sl(m|n)")
        if i != j:
            return self.E(i, j)
        f = Fraction(self.sigma[i - 1], self.m - self.n)
        M = {(k, k): -f for k in range(self.N)}
        M[i - 1, i - 1] = M[i - 1, i - 1] + 1
        return self.from_matrix(M)

    def bracket(self, x: Element, y: Element) -> Element:
        out: Element = {}
        sc = self.structure_constants
        for a, ca in x.items():
            for b, cb in y.items():
                br = sc.get((a, b))
                if br:
                    for k, v in br.items():
                        out[k] = out.get(k, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def element_parity(self, x: Element) -> int:
        ps = {self.parity[a] for a, c in x.items() if c}
        if len(ps) > 1:
            raise AlgebraError("element is not homogeneous")
        return ps.pop() if ps else 0

    def _element_D(self) -> Element:
        """D as a coefficient vector.

        For sl this is D = sum_{k>m} X_kk.  For gl the central ambiguity is
        fixed by D = sum_{k>m} E_kk, which has the same adjoint action.
        """
        M = {(k, k): Fraction(1) for k in range(self.m, self.N)}
        if self.kind == "sl":
            f = Fraction(self.n, self.m - self.n)
            M = {(k, k): (M.get((k, k), 0) + f) for k in range(self.N)}
        return self.from_matrix(M)

    # -- forms

    def supertrace(self, x: Element) -> Fraction:
        M = self.to_matrix(x)
        return sum((self.sigma[i] * v for (i, j), v in M.items() if i == j), Fraction(0))

    def trace(self, x: Element) -> Fraction:
        M = self.to_matrix(x)
        return sum((v for (i, j), v in M.items() if i == j), Fraction(0))

    def trace_form(self, x: Element, y: Element) -> Fraction:
        """(x, y) -> Tr(<x, y>) with the ordinary trace."""
        return self.trace(self.bracket(x, y))

    def supertrace_form(self, x: Element, y: Element) -> Fraction:
        return self.supertrace(self.bracket(x, y))

    def invariant_form(self, x: Element, y: Element) -> Fraction:
        """Str(xy), the supersymmetric invariant form."""
        M = mat_mul(self.to_matrix(x), self.to_matrix(y))
        return sum((self.sigma[i] * v for (i, j), v in M.items() if i == j), Fraction(0))

    # -- supertranspose automorphism

    def supertranspose(self, x: Element) -> Element:
        pp = self.index_parity
        M = self.to_matrix(x)
        out: Matrix = {}
        for (i, j), v in M.items():
            # (st A)_{ji} = (-1)^{p_i (p_i + p_j)} A_{ij}
            s = -1 if (pp[i] * (pp[i] + pp[j])) % 2 else 1
            out[j, i] = s * v
        return self.from_matrix(out)

    def tau(self, x: Element) -> Element:
        """The automorphism A -> -(st A)."""
        return {k: -v for k, v in self.supertranspose(x).items()}

    # -- weights

    def root_weight(self, a: int) -> Weight:
        key = self.root_of[a]
        w = [Fraction(0)] * self.N
        if key is not None:
            i, j = key
            w[i] += 1
            w[j] -= 1
        return tuple(w)

    def epsilon(self, i: int) -> Weight:
        """epsilon_i (1-based) as a label vector."""
        if not 1 <= i <= self.N:
            raise AlgebraError(f"index {i} out of range 1..{self.N}")
        if self.kind == "gl":
            return tuple(Fraction(int(j == i - 1)) for j in range(self.N))
        d = self.m - self.n
        return tuple(Fraction(int(j == i - 1)) - Fraction(self.sigma[j], d) for j in range(self.N))

    def check_eps_relation(self) -> bool:
        """sum_i sigma_i epsilon_i == 0 (sl only; gl epsilons are independent)."""
        total = [Fraction(0)] * self.N
        for i in range(1, self.N + 1):
            for j, v in enumerate(self.epsilon(i)):
                total[j] += self.sigma[i - 1] * v
        return all(v == 0 for v in total)

    def cartan_label_elements(self) -> List[Element]:
        """Elements whose eigenvalues give the weight labels (X_ii or E_ii)."""
        if self.kind == "gl":
            return [self.E(i, i) for i in range(1, self.N + 1)]
        return [self.X(i, i) for i in range(1, self.N + 1)]

    # -- subalgebras and root data

    def l0_indices(self) -> Tuple[int, ...]:
        return tuple(a for a in range(self.dim) if self.z_degree[a] == 0)

    def simple_root_indices(self, part: str = "L", sign: int = 1) -> Tuple[int, ...]:
        """Indices of simple root vectors E_{k,k+1} (sign=+1) or E_{k+1,k}."""
        out = []
        for k in range(self.N - 1):
            if part == "L0" and k == self.m - 1:
                continue
            key = (k, k + 1) if sign > 0 else (k + 1, k)
            out.append(self.index_of[key])
        return tuple(out)

    def l0_positive_root_indices(self) -> Tuple[int, ...]:
        return tuple(a for a in self.positive_root_indices if self.z_degree[a] == 0)


@lru_cache(maxsize=None)
def build_algebra(kind: str, m: int, n: int) -> LieSuperalgebra:
    return LieSuperalgebra(kind, m, n)


def parse_algebra(desc: str) -> LieSuperalgebra:
    """Parse ``sl:m:n`` / ``gl:m:n``."""
    parts = desc.strip().split(":")
    if len(parts) != 3 or parts[0] not in ("sl", "gl"):
        raise AlgebraError(f"bad algebra descriptor {desc!r}; expected sl:m:n or gl:m:n")
    try:
        m, n = int(parts[1]), int(parts[2])
    except ValueError:
        raise AlgebraError(f"bad algebra descriptor {desc!r}") from None
    return build_algebra(parts[0], m, n)


class SubalgebraL0:
    """The Z-degree zero part of an algebra, with inherited structure constants.

    Its basis is a subset of the parent basis; ``parent_index[k]`` maps back.
    """

    def __init__(self, parent: LieSuperalgebra):
        self.parent = parent
        self.kind = "L0"
        self.m, self.n = parent.m, parent.n
        self.parent_index = parent.l0_indices()
        self.local_index = {a: k for k, a in enumerate(self.parent_index)}
        self.dim = len(self.parent_index)
        self.labels = tuple(parent.labels[a] for a in self.parent_index)
        self.parity = tuple(0 for _ in self.parent_index)
        self.z_degree = tuple(0 for _ in self.parent_index)
        self.structure_constants: Dict[Tuple[int, int], Element] = {}
        for (a, b), br in parent.structure_constants.items():
            if a in self.local_index and b in self.local_index:
                self.structure_constants[self.local_index[a], self.local_index[b]] = {
                    self.local_index[k]: v for k, v in br.items()
                }
        self.D = {self.local_index[k]: v for k, v in parent.D.items()}

    def __repr__(self):
        return f"L0[{self.parent!r}]"

    def bracket(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self.structure_constants.get((a, b), {}).items():
                    out[k] = out.get(k, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}


def subalgebra_L0(L: LieSuperalgebra) -> SubalgebraL0:
    return SubalgebraL0(L)


def positive_root_vectors(L: LieSuperalgebra, part: str = "L") -> Tuple[int, ...]:
    """Positive root vectors E_ij, i < j (distinguished order), of L or L0."""
    if part == "L0":
        return L.l0_positive_root_indices()
    return L.positive_root_indices


def d_range_of_U(L: LieSuperalgebra) -> Tuple[int, int]:
    """Eigenvalue range of D on U(L) = S(L, eps).

    Only odd generators carry nonzero degree and each appears at most once in
    a super-symmetric monomial, so the range is [-dim L_{-1}, dim L_1].
    """
    lo = sum(1 for z in L.z_degree if z < 0)
    hi = sum(1 for z in L.z_degree if z > 0)
    return (-lo, hi)


# ---------------------------------------------------------------------------
# weight helpers


def as_weight(values: Sequence) -> Weight:
    return tuple(Fraction(v) for v in values)


def format_weight(w: Sequence, m: int) -> str:
    def f(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    w = list(w)
    return "(" + ",".join(f(x) for x in w[:m]) + "|" + ",".join(f(x) for x in w[m:]) + ")"


def parse_weight(text: str, m: Optional[int] = None) -> Weight:
    """Parse ``1,1,1/-1,-2`` or ``(1,1,1|-1,-2)``.

    The even/odd separator is ``/`` or ``|``; a ``/`` inside an entry is only
    read as a fraction when the separator is ``|``.
    """
    t = text.strip().strip("()")
    if "|" in t:
        left, right = t.split("|")
    elif t.count("/") == 1:
        left, right = t.split("/")
    else:
        raise AlgebraError(f"cannot parse weight {text!r}")
    vals = [Fraction(x) for x in left.split(",") if x.strip()] + [
        Fraction(x) for x in right.split(",") if x.strip()
    ]
    if m is not None and len([x for x in left.split(",") if x.strip()]) != m:
        raise AlgebraError(f"weight {text!r} does not have {m} even labels")
    return tuple(vals)


def weight_add(a: Sequence, b: Sequence) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def weight_sub(a: Sequence, b: Sequence) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def weight_neg(a: Sequence) -> Weight:
    return tuple(-x for x in a)


def root_height(diff: Sequence) -> Fraction:
    """Height of a sum-zero label vector in the simple roots e_k - e_{k+1}."""
    h = Fraction(0)
    partial = Fraction(0)
    for x in list(diff)[:-1]:
        partial += x
        h += partial
    return h


def simple_root_coordinates(diff: Sequence) -> Tuple[Fraction, ...]:
    out = []
    partial = Fraction(0)
    for x in list(diff)[:-1]:
        partial += x
        out.append(partial)
    return tuple(out)


def dominates(a: Sequence, b: Sequence) -> bool:
    """a >= b in the dominance order (a - b a nonnegative integral root sum)."""
    coords = simple_root_coordinates(weight_sub(a, b))
    total = sum(Fraction(x) for x in a) - sum(Fraction(x) for x in b)
    return total == 0 and all(c >= 0 and c.denominator == 1 for c in coords)


def is_block_dominant(w: Sequence, m: int) -> bool:
    """L_i - L_{i+1} a nonnegative integer within each block."""
    w = [Fraction(x) for x in w]
    for lo, hi in ((0, m), (m, len(w))):
        for i in range(lo, hi - 1):
            d = w[i] - w[i + 1]
            if d < 0 or d.denominator != 1:
                return False
    return True


def lambda_of_D(w: Sequence, m: int) -> Fraction:
    """Lambda(D) = -(L_1 + ... + L_m) = L_{m+1} + ... + L_{m+n}."""
    return -sum((Fraction(x) for x in list(w)[:m]), Fraction(0))
