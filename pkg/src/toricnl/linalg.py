"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` / ``Fraction`` values, except the
modular rank, which uses numpy ``int64`` arithmetic modulo a prime; no floating
point is involved.  Matrices are lists of lists, sparse rows are ``dict``
mapping column index to coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Matrix = list[list[int]]
SparseRow = dict[int, int]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _swap_rows(m: Matrix, i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: Matrix, i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: Matrix, dst: int, src: int, q: int) -> None:
    """row[dst] += q * row[src]"""
    if q:
        rs = m[src]
        m[dst] = [x + q * y for x, y in zip(m[dst], rs)]


def _add_col(m: Matrix, dst: int, src: int, q: int) -> None:
    if q:
        for row in m:
            row[dst] += q * row[src]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, W)`` with ``U @ a @ W == D`` and ``U``, ``W`` unimodular.

    ``D`` is diagonal with nonnegative entries, each dividing the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    w = identity(n)

    for t in range(min(m, n)):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        _swap_rows(d, t, i0)
        _swap_rows(u, t, i0)
        _swap_cols(d, t, j0)
        _swap_cols(w, t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                _add_row(d, i, t, -q)
                _add_row(u, i, t, -q)
                if d[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                _add_col(d, j, t, -q)
                _add_col(w, j, t, -q)
                if d[t][j]:
                    clean = False
            if not clean:
                cand = [(abs(d[i][t]), i, t) for i in range(t + 1, m) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t + 1, n) if d[t][j]]
                _, i1, j1 = min(cand)
                if i1 != t:
                    _swap_rows(d, t, i1)
                    _swap_rows(u, t, i1)
                else:
                    _swap_cols(d, t, j1)
                    _swap_cols(w, t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            _add_row(d, t, bad, 1)
            _add_row(u, t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, w


def hermite_rows(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: ``(H, G)`` with ``G @ a == H``, ``G`` unimodular."""
    h = [list(map(int, row)) for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    g = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        found = False
        while True:
            nz = [i for i in range(r, m) if h[i][c]]
            if not nz:
                break
            found = True
            i0 = min(nz, key=lambda i: (abs(h[i][c]), i))
            _swap_rows(h, r, i0)
            _swap_rows(g, r, i0)
            done = True
            for i in range(r + 1, m):
                q = h[i][c] // h[r][c]
                _add_row(h, i, r, -q)
                _add_row(g, i, r, -q)
                if h[i][c]:
                    done = False
            if done:
                break
        if not found:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            g[r] = [-x for x in g[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            _add_row(h, i, r, -q)
            _add_row(g, i, r, -q)
        r += 1
    return h, g


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system ``a x = b`` over Q; ``None`` if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def inverse_unimodular(u: Sequence[Sequence[int]]) -> Matrix:
    n = len(u)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_rational(u, e)
        if x is None or any(v.denominator != 1 for v in x):
            raise ValueError("matrix is not unimodular")
        cols.append([int(v) for v in x])
    return transpose(cols)


def rank_dense(a: Sequence[Sequence]) -> int:
    ech = Echelon()
    for row in a:
        ech.add({j: v for j, v in enumerate(row) if v})
    return ech.rank


def integer_row(row: dict[int, Fraction | int]) -> SparseRow:
    """Clear denominators of a sparse rational row (the span is unchanged)."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return {k: int(v * den) for k, v in row.items() if v}


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g == 1:
        return row
    return {k: v // g for k, v in row.items()}


def _size(row: SparseRow) -> int:
    return sum(v.bit_length() for v in row.values()) + len(row)


class Echelon:
    """Incremental sparse row-echelon basis over Q.

    Rows are kept as primitive integer vectors keyed by pivot (leading)
    column.  Elimination is fraction-free: ``row <- b*row - a*pivot`` followed
    by content removal.  When a new row and a stored pivot share a leading
    column, the one with smaller bit-size becomes the pivot.
    """

    def __init__(self):
        self.rows: dict[int, SparseRow] = {}
        self.trace: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _eliminate(self, row: SparseRow, pivot: SparseRow, c: int) -> SparseRow:
        a, b = row[c], pivot[c]
        g = gcd(a, b)
        a //= g
        b //= g
        out = {k: b * v for k, v in row.items()} if b != 1 else dict(row)
        for k, v in pivot.items():
            nv = out.get(k, 0) - a * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return _primitive(out) if out else out

    def reduce(self, row: dict) -> SparseRow:
        """Reduce ``row`` against the basis; the result is zero iff row is in the span."""
        row = integer_row(row)
        while row:
            c = min(row)
            p = self.rows.get(c)
            if p is None:
                return _primitive(row)
            row = self._eliminate(row, p, c)
        return row

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it raised the rank."""
        row = integer_row(row)
        if row:
            row = _primitive(row)
        while row:
            c = min(row)
            p = self.rows.get(c)
            if p is None:
                self.rows[c] = row
                self.trace.append(c)
                return True
            if _size(row) < _size(p):
                self.rows[c] = row
                row, p = p, row
            row = self._eliminate(row, p, c)
        return False

    def extend(self, rows: Iterable[dict]) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def nullspace(self, ncols: int) -> list[dict[int, Fraction]]:
        """Basis of ``{x : row . x = 0 for every stored row}``, one vector per free column."""
        free = [c for c in range(ncols) if c not in self.rows]
        order = sorted(self.rows, reverse=True)
        out = []
        for f in free:
            x: dict[int, Fraction] = {f: Fraction(1)}
            for c in order:
                p = self.rows[c]
                s = sum(v * x[k] for k, v in p.items() if k != c and k in x)
                if s:
                    x[c] = Fraction(-s, p[c])
            out.append(x)
        return out


# below 2^31, so products of reduced entries fit in int64
MODULUS = (1 << 31) - 1


def rank_mod_p(rows: Iterable[dict], ncols: int, p: int = MODULUS, stop_at: int | None = None) -> int:
    """Rank of integer sparse rows over ``F_p``, by dense elimination in numpy.

    This is a lower bound for the rank over ``Q``: a nonzero minor mod ``p`` is
    a nonzero integer.  Elimination stops early once ``stop_at`` is reached.
    """
    rows = list(rows)
    if not rows or ncols == 0:
        return 0
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for k, v in row.items():
            m[i, k] = v % p
    rank = 0
    for c in range(ncols):
        if rank == m.shape[0]:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        i = rank + nz[0]
        if i != rank:
            m[[rank, i]] = m[[i, rank]]
        m[rank, c:] = m[rank, c:] * pow(int(m[rank, c]), -1, p) % p
        below = rank + 1 + np.flatnonzero(m[rank + 1:, c])
        if below.size:
            block = m[below, c:]
            m[below, c:] = (block - block[:, :1] * m[rank, c:]) % p
        rank += 1
        if stop_at is not None and rank >= stop_at:
            break
    return rank
