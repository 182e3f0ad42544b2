"""Arbitrary-precision integer arithmetic and Smith normal form.

Everything here is exact: no floats, no probabilistic answers.  The
primality test is the deterministic Miller-Rabin variant that is correct
for all inputs below 3.317e24; larger alleged primes are rejected rather
than accepted on faith.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import Unsupported, ZeroInput

# Largest n for which the fixed Miller-Rabin base set below is a proof.
_MR_PROOF_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    """Deterministic primality for n below the proof bound.

    Raises Unsupported for candidates at or above the bound that survive
    the witness set, since the test would no longer be a proof there.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= _MR_PROOF_BOUND:
        raise Unsupported(f"cannot certify primality of {n}: above deterministic bound")
    return True


def check_prime(p: int) -> int:
    from .errors import NotPrime

    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


@dataclass(frozen=True, order=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        check_prime(self.p)
        if self.e < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def value(self) -> int:
        return self.p**self.e


def _pollard_rho(n: int) -> int:
    # n odd composite, not a prime power of a tiny prime
    if n % 2 == 0:
        return 2
    x = 2
    c = 1
    while True:
        y = x
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1
        x = c + 1


def factorize(n: int) -> tuple[PrimePower, ...]:
    """Prime factorization of |n| as a tuple with strictly increasing primes."""
    if n == 0:
        raise ZeroInput("cannot factorize 0")
    return _factorize_abs(abs(n))


@lru_cache(maxsize=65536)
def _factorize_abs(n: int) -> tuple[PrimePower, ...]:
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < 2_000_000:
            # trial division is cheapest at this size
            q = 17
            while q * q <= m:
                while m % q == 0:
                    factors[q] = factors.get(q, 0) + 1
                    m //= q
                q += 2
            if m > 1:
                factors[m] = factors.get(m, 0) + 1
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return tuple(PrimePower(p, e) for p, e in sorted(factors.items()))


def valuation(p: int, n: int) -> int:
    """Multiplicity of the prime p in n."""
    check_prime(p)
    if n == 0:
        raise ZeroInput("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: list) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(r, c, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def to_cols(self) -> list:
        return [list(self.entries[j :: self.cols]) for j in range(self.cols)]

    def diagonal(self) -> list:
        return [self.at(i, i) for i in range(min(self.rows, self.cols))]

    def transpose(self) -> "IntMatrix":
        if not self.entries:
            return IntMatrix(self.cols, self.rows, ())
        flat = []
        for j in range(self.cols):
            flat.extend(self.entries[j :: self.cols])
        return IntMatrix(self.cols, self.rows, tuple(flat))


def mat_mul(a: list, b: list) -> list:
    ra = len(a)
    rb = len(b)
    cb = len(b[0]) if rb else 0
    out = []
    for i in range(ra):
        ai = a[i]
        row = [0] * cb
        for k in range(rb):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cb):
                    row[j] += x * bk[j]
        out.append(row)
    return out


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    m = A.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _snf_worker(a: list, m: int, n: int):
    """In-place SNF on list-of-lists a; returns (U, V, Uinv, Vinv) as lists."""
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vi = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ad, as_ = a[dst], a[src]
        for j in range(n):
            ad[j] += q * as_[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            ud[j] += q * us[j]
        for r in range(m):
            Ui[r][src] -= q * Ui[r][dst]

    def add_col(dst, src, q):
        for r in range(m):
            a[r][dst] += q * a[r][src]
        for r in range(n):
            V[r][dst] += q * V[r][src]
        vs, vd = Vi[src], Vi[dst]
        for j in range(n):
            vs[j] -= q * vd[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in range(m):
            Ui[r][i] = -Ui[r][i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # deterministic pivot: minimal nonzero |entry|, ties by lowest (row, col)
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                x = ai[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    piv = a[t][t]
                    q = x // piv
                    if q:
                        add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    piv = a[t][t]
                    q = x // piv
                    if q:
                        add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide every remaining entry
            piv = a[t][t]
            culprit = None
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, n):
                    if ai[j] % piv:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(t, culprit, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return U, V, Ui, Vi


def snf_diagonal(A: IntMatrix) -> list:
    """Invariant factors of A (the SNF diagonal) without transform matrices.

    Much faster than the full form when only the cokernel structure is
    needed, since no unimodular bookkeeping has to be dragged along.
    """
    m, n = A.rows, A.cols
    a = A.to_rows()
    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                x = ai[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    piv = a[t][t]
                    q = x // piv
                    if q:
                        ai, at = a[i], a[t]
                        for j in range(t, n):
                            ai[j] -= q * at[j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    piv = a[t][t]
                    q = x // piv
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            piv = a[t][t]
            culprit = None
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, n):
                    if ai[j] % piv:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            at, ac = a[t], a[culprit]
            for j in range(t, n):
                at[j] += ac[j]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    return [abs(a[i][i]) for i in range(limit)]


def smith_normal_form(A: IntMatrix):
    """Return (D, U, V) with U*A*V = D, D diagonal with d1 | d2 | ... >= 0.

    U and V are unimodular.
    """
    D, U, V, _, _ = smith_normal_form_full(A)
    return D, U, V


def smith_normal_form_full(A: IntMatrix):
    """Like smith_normal_form but also returns the inverses of U and V."""
    m, n = A.rows, A.cols
    a = A.to_rows()
    U, V, Ui, Vi = _snf_worker(a, m, n)
    D = IntMatrix.from_rows(a) if m else IntMatrix(0, n, ())
    mk = lambda rows, r, c: IntMatrix.from_rows(rows) if r else IntMatrix(0, c, ())
    return (
        D,
        mk(U, m, m),
        mk(V, n, n),
        mk(Ui, m, m),
        mk(Vi, n, n),
    )


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of {x : A x = 0} as columns of an integer matrix.

    The kernel of an integer matrix is a pure free subgroup, so the
    returned columns are a genuine basis (possibly zero columns wide).
    Computed by gcd column reduction of A stacked over an identity; this
    keeps entries far smaller than reading the kernel off SNF transforms.
    """
    m, n = A.rows, A.cols
    if m == 0:
        return IntMatrix.identity(n)
    if n == 0:
        return IntMatrix(0, 0, ())
    total = m + n
    acols = A.to_cols()
    cols = [
        acols[j] + [1 if r == j else 0 for r in range(n)] for j in range(n)
    ]
    placed = 0
    for i in range(m):
        while True:
            live = [j for j in range(placed, n) if cols[j][i]]
            if len(live) <= 1:
                break
            live.sort(key=lambda j: abs(cols[j][i]))
            piv = live[0]
            p = cols[piv][i]
            for j in live[1:]:
                q = cols[j][i] // p
                if q:
                    cj, cp = cols[j], cols[piv]
                    for r in range(total):
                        cj[r] -= q * cp[r]
        live = [j for j in range(placed, n) if cols[j][i]]
        if live:
            cols[placed], cols[live[0]] = cols[live[0]], cols[placed]
            placed += 1
        if placed == n:
            break
    ker = cols[placed:]
    if not ker:
        return IntMatrix(n, 0, ())
    return IntMatrix.from_rows([[col[m + r] for col in ker] for r in range(n)])


def column_hnf(A: IntMatrix) -> IntMatrix:
    """Column Hermite normal form: a reduced basis of the column lattice.

    Column operations only, so the column span is unchanged; zero columns
    are dropped.  Used to shrink kernel bases whose raw transform entries
    can grow very large.
    """
    m, n = A.rows, A.cols
    cols = A.to_cols()
    placed = 0
    for i in range(m):
        # gcd-eliminate row i across the unplaced columns
        while True:
            live = [j for j in range(placed, n) if cols[j][i]]
            if len(live) <= 1:
                break
            live.sort(key=lambda j: abs(cols[j][i]))
            piv = live[0]
            p = cols[piv][i]
            for j in live[1:]:
                q = cols[j][i] // p
                if q:
                    cj, cp = cols[j], cols[piv]
                    for r in range(m):
                        cj[r] -= q * cp[r]
        live = [j for j in range(placed, n) if cols[j][i]]
        if not live:
            continue
        j = live[0]
        cols[placed], cols[j] = cols[j], cols[placed]
        if cols[placed][i] < 0:
            cols[placed] = [-x for x in cols[placed]]
        h = cols[placed][i]
        for k in range(placed):
            q = cols[k][i] // h
            if q:
                ck, cp = cols[k], cols[placed]
                for r in range(m):
                    ck[r] -= q * cp[r]
        placed += 1
        if placed == n:
            break
    if placed == 0:
        return IntMatrix(m, 0, ())
    return IntMatrix.from_rows([[cols[j][i] for j in range(placed)] for i in range(m)])


def solve(A: IntMatrix, B: IntMatrix):
    """An integer solution X of A X = B, or None if none exists."""
    if A.rows != B.rows:
        raise ValueError("shape mismatch")
    if A.cols == 0:
        return IntMatrix(0, B.cols, ()) if all(x == 0 for x in B.entries) else None
    if A.rows == 0:
        return IntMatrix.zero(A.cols, B.cols)
    D, U, V = smith_normal_form(A)
    ub = mat_mul(U.to_rows(), B.to_rows())
    diag = D.diagonal()
    rank = sum(1 for d in diag if d)
    y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        row = ub[i]
        if i < rank:
            d = diag[i]
            for j, x in enumerate(row):
                if x % d:
                    return None
                y[i][j] = x // d
        else:
            if any(row):
                return None
    x = mat_mul(V.to_rows(), y)
    return IntMatrix.from_rows(x) if A.cols else IntMatrix(0, B.cols, ())


def kron(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Kronecker product A (x) B."""
    ra, ca, rb, cb = A.rows, A.cols, B.rows, B.cols
    ae = A.entries
    be = B.entries
    zeros = [0] * cb
    flat = []
    for i in range(ra):
        arow = ae[i * ca : (i + 1) * ca]
        for k in range(rb):
            brow = be[k * cb : (k + 1) * cb]
            for x in arow:
                if x == 0:
                    flat.extend(zeros)
                elif x == 1:
                    flat.extend(brow)
                else:
                    flat.extend(x * v for v in brow)
    return IntMatrix(ra * rb, ca * cb, tuple(flat))


def hcat(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if A.rows != B.rows:
        raise ValueError("row mismatch")
    ca, cb = A.cols, B.cols
    flat = []
    for i in range(A.rows):
        flat.extend(A.entries[i * ca : (i + 1) * ca])
        flat.extend(B.entries[i * cb : (i + 1) * cb])
    return IntMatrix(A.rows, ca + cb, tuple(flat))
