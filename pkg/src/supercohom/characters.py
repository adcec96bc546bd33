"""Weight-multiplicity bookkeeping for the reductive part L0 = gl(m) + gl(n).

These routines never touch action matrices.  They serve as the second,
independent route for L0-decompositions: Gelfand-Tsetlin counting for gl(k)
characters, the Weyl dimension formula, and Brauer-Klimyk multiplicities for
tensor products with a finite-dimensional character.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Weight, root_height

Character = Dict[Weight, int]


def _check_dominant(a: Sequence[Fraction]) -> None:
    for x, y in zip(a, a[1:]):
        d = Fraction(x) - Fraction(y)
        if d < 0 or d.denominator != 1:
            raise ValueError(f"weight {tuple(a)} is not dominant integral")


def weyl_dimension(a: Sequence) -> int:
    """dim of the gl(k)-irrep with highest weight a (product over i<j)."""
    a = [Fraction(x) for x in a]
    _check_dominant(a)
    k = len(a)
    num = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            num *= Fraction(a[i] - a[j] + j - i, j - i)
    return int(num)


def gt_patterns(top: Sequence[int]) -> Iterable[List[Tuple[int, ...]]]:
    """Gelfand-Tsetlin patterns with integer top row (rows from top to bottom)."""
    top = tuple(int(x) for x in top)

    def rows_below(row):
        if len(row) == 1:
            yield [row]
            return
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]

        def build(i, acc):
            if i == len(ranges):
                yield tuple(acc)
                return
            for x in ranges[i]:
                yield from build(i + 1, acc + [x])

        for nxt in build(0, []):
            for rest in rows_below(nxt):
                yield [row] + rest

    yield from rows_below(top)


def gl_character(a: Sequence) -> Character:
    """Weight multiplicities of the gl(k)-irrep V(a), via GT patterns.

    Rational shifts are allowed as long as the differences are integral.
    """
    a = [Fraction(x) for x in a]
    _check_dominant(a)
    k = len(a)
    shift = a[-1]
    top = [int(x - shift) for x in a]
    char: Counter = Counter()
    for pat in gt_patterns(top):
        # pat[0] has length k, pat[-1] length 1; row sums give the weight
        sums = [sum(r) for r in reversed(pat)]  # sums[i] = sum of row of length i+1
        w = [sums[0]] + [sums[i] - sums[i - 1] for i in range(1, k)]
        char[tuple(Fraction(x) + shift for x in w)] += 1
    return dict(char)


def l0_character(m: int, lam: Sequence) -> Character:
    """Character of V_{gl(m)}(lam[:m]) x V_{gl(n)}(lam[m:])."""
    lam = [Fraction(x) for x in lam]
    c1 = gl_character(lam[:m])
    c2 = gl_character(lam[m:])
    out: Character = {}
    for w1, k1 in c1.items():
        for w2, k2 in c2.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + k1 * k2
    return out


def l0_dimension(m: int, lam: Sequence) -> int:
    lam = list(lam)
    return weyl_dimension(lam[:m]) * weyl_dimension(lam[m:])


def odd_lowering_roots(m: int, n: int) -> List[Weight]:
    """Roots e_i - e_j of the degree +1 odd block (i in the odd range, j in the even range)."""
    N = m + n
    out = []
    for i in range(m, N):
        for j in range(m):
            w = [Fraction(0)] * N
            w[i] += 1
            w[j] -= 1
            out.append(tuple(w))
    return out


def exterior_character(roots: Sequence[Weight]) -> Character:
    """Character of the Grassmann algebra on vectors of the given weights."""
    N = len(roots[0]) if roots else 0
    out: Counter = Counter()
    for k in range(len(roots) + 1):
        for S in combinations(range(len(roots)), k):
            w = [Fraction(0)] * N
            for s in S:
                for i, x in enumerate(roots[s]):
                    w[i] += x
            out[tuple(w)] += 1
    return dict(out)


def kac_character(m: int, n: int, lam: Sequence) -> Character:
    """ch V0(lam) times prod over degree +1 odd roots of (1 + x^root)."""
    base = l0_character(m, lam)
    ext = exterior_character(odd_lowering_roots(m, n))
    out: Character = {}
    for w1, k1 in base.items():
        for w2, k2 in ext.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            out[w] = out.get(w, 0) + k1 * k2
    return out


def _block_rho(m: int, n: int) -> Tuple[int, ...]:
    return tuple(range(m - 1, -1, -1)) + tuple(range(n - 1, -1, -1))


def _dominate_block(v: Sequence[Fraction]) -> Tuple[Optional[Tuple[Fraction, ...]], int]:
    """Sort strictly decreasing; return (sorted, sign) or (None, 0) on a repeat."""
    idx = sorted(range(len(v)), key=lambda i: -v[i])
    s = tuple(v[i] for i in idx)
    if any(s[i] == s[i + 1] for i in range(len(s) - 1)):
        return None, 0
    # parity of the permutation idx
    sign, seen = 1, [False] * len(idx)
    for i in range(len(idx)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = idx[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return s, sign


def brauer_klimyk(m: int, n: int, lam: Sequence, char: Character) -> Dict[Weight, int]:
    """Multiplicities of L0-irreps in V0(lam) tensor (a module with character ``char``)."""
    lam = tuple(Fraction(x) for x in lam)
    rho = _block_rho(m, n)
    out: Counter = Counter()
    for nu, k in char.items():
        v = [lam[i] + nu[i] + rho[i] for i in range(m + n)]
        s1, e1 = _dominate_block(v[:m])
        if s1 is None:
            continue
        s2, e2 = _dominate_block(v[m:])
        if s2 is None:
            continue
        mu = tuple(x - r for x, r in zip(s1 + s2, rho))
        out[mu] += e1 * e2 * k
    res = {mu: c for mu, c in out.items() if c}
    if any(c < 0 for c in res.values()):
        raise ArithmeticError("negative multiplicity in Brauer-Klimyk sum")
    return res


def kac_l0_decomposition(m: int, n: int, lam: Sequence) -> Dict[Weight, int]:
    """L0-constituents (highest weight -> multiplicity) of the Kac module."""
    return brauer_klimyk(m, n, lam, exterior_character(odd_lowering_roots(m, n)))


def _l0_height(w: Sequence, m: int):
    w = list(w)
    return root_height(w[:m]) + root_height(w[m:])


def decompose_character(m: int, char: Character) -> Dict[Weight, int]:
    """Peel L0 highest weights off a character (maximal L0-height first)."""
    rest = {w: k for w, k in char.items() if k}
    out: Dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda w: (_l0_height(w, m), w))
        k = rest[top]
        if k < 0:
            raise ArithmeticError("character is not a nonnegative sum of L0 characters")
        out[top] = out.get(top, 0) + k
        for w, c in l0_character(m, top).items():
            r = rest.get(w, 0) - k * c
            if r:
                rest[w] = r
            else:
                rest.pop(w, None)
    return out


def character_of(module) -> Character:
    return dict(Counter(module.weights))


def character_dimension(char: Character) -> int:
    return sum(char.values())
