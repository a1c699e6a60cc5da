"""Exact integer matrix algebra: Smith normal form and first homology.

Everything is plain Python ints (arbitrary precision); no floating point
anywhere.  Matrices are lists of row lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .presentation import FpPresentation, PresentationError

IntMatrix = list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    assert not a or not b or len(a[0]) == len(b)
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]) if b else 0)]
            for i in range(len(a))]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    assert all(len(row) == n for row in m), "determinant needs a square matrix"
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """D = U M V with U, V unimodular and D diagonal, each diagonal entry
    nonnegative and dividing the next."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d),
                                                len(self.d[0]) if self.d else 0))]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form over Z with recorded transforms.

    Pivoting always picks a smallest-magnitude nonzero entry, which keeps
    intermediate growth tame for the small matrices we see.  The result is
    checked (U M V = D, |det U| = |det V| = 1, divisibility chain) before
    being returned.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    assert all(len(row) == cols for row in m), "ragged matrix"
    a = [row[:] for row in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):        # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while True:
        # smallest-magnitude nonzero entry of the trailing block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None
                                     or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        # clear row and column t; each pass strictly shrinks |a[t][t]|
        # whenever a remainder shows up, so this terminates
        while True:
            for i in range(t + 1, rows):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t] != 0:          # nonzero remainder: better pivot
                    swap_rows(t, i)
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            for j in range(t + 1, cols):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j] != 0:
                    swap_cols(t, j)
            if any(a[i][t] for i in range(t + 1, rows)) or \
               any(a[t][j] for j in range(t + 1, cols)):
                continue
            break

        # divisibility: the pivot must divide the whole trailing block
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad:
            add_row(bad[0], t, 1)     # drag the offending row up, redo block
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    result = SmithForm(d=a, u=u, v=v)
    assert mat_mul(mat_mul(u, [row[:] for row in m]), v) == a, "U M V != D"
    assert abs(determinant(u)) == 1, "U not unimodular"
    assert abs(determinant(v)) == 1, "V not unimodular"
    diag = result.diagonal
    for x, y in zip(diag, diag[1:]):
        assert not (x == 0 and y != 0)
        assert x == 0 or y % x == 0, "divisibility chain broken"
    return result


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank  (+)  Z/t1 (+) ... (+) Z/tk  with 2 <= t1 | t2 | ... | tk."""

    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix, n_cols: int) -> AbelianGroup:
    """Z^n_cols / (row space of m)."""
    if not m:
        return AbelianGroup(rank=n_cols)
    diag = smith_normal_form(m).diagonal
    nonzero = [d for d in diag if d != 0]
    return AbelianGroup(rank=n_cols - len(nonzero),
                        torsion=tuple(d for d in nonzero if d > 1))


def relation_matrix(p: FpPresentation, include_h1_safe_conditionals: bool = False
                    ) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator.

    A conditional relator may be included only when its key word has zero
    exponent sum in every generator — then the key is already trivial in
    H1, so the relation holds there unconditionally.
    """
    if p.meridional:
        raise PresentationError(
            "presentation still carries a meridional tier; its generator "
            "count is symbolic, so the abelianization is not determined — "
            "discharge or strip the tier first")
    index = {g: j for j, g in enumerate(p.generators)}
    rows: list[list[int]] = []

    def row_of(w) -> list[int]:
        row = [0] * len(p.generators)
        for name, sign in w.letters:
            row[index[name]] += sign
        return row

    for r in p.relators:
        rows.append(row_of(r))
    if include_h1_safe_conditionals:
        for c in p.conditional:
            if all(v == 0 for v in row_of(c.key)):
                rows.append(row_of(c.relator))
    return rows


def h1(p: FpPresentation, include_h1_safe_conditionals: bool = False
       ) -> AbelianGroup:
    """First homology (abelianization) of the presented group."""
    return cokernel(relation_matrix(p, include_h1_safe_conditionals),
                    len(p.generators))
