"""Exact scalars over Q and Q(i), and the exact linear algebra built on them.

Matrices are numpy arrays of ``dtype=object`` holding ``Fraction`` or
``Gauss`` entries.  Nothing in here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
import re

import numpy as np

from .errors import AmbientMismatch, NotReal, NotSymmetric

Q = Fraction


class Gauss:
    """Element re + i*im of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Gauss):
            re, im = re.re, re.im + im
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, Gauss):
            return x
        if isinstance(x, (int, Rational)):
            return Gauss(x, 0)
        if isinstance(x, complex):
            raise TypeError("floats are not exact; build Gauss(re, im) from rationals")
        return NotImplemented

    def __add__(self, other):
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gauss(self.re * other, self.im * other)
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gauss(self.re / other, self.im / other)
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("Gauss division by zero")
        return Gauss((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        out = Gauss(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = Gauss.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        return fmt(self)


I = Gauss(0, 1)


def gauss(x) -> Gauss:
    """Coerce ints, Fractions, Gauss and strings like '3+4/5i' to Gauss."""
    if isinstance(x, str):
        return parse_gauss(x)
    return Gauss.coerce(x) if not isinstance(x, Gauss) else x


_GAUSS_RE = re.compile(
    r"(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?(?P<i>i))?"
)


def parse_gauss(text: str) -> Gauss:
    """Parse '1/2', '-i', '3+4i', '3/5-4/5i', '2i' into an exact Gauss."""
    s = text.replace(" ", "").replace("*", "")
    m = _GAUSS_RE.fullmatch(s)
    if not s or m is None or (m["re"] is None and m["i"] is None):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    if m["i"] and m["sign"] is None and m["im"] is None and m["re"] is not None:
        return Gauss(0, Fraction(m["re"]))
    re_ = Fraction(m["re"]) if m["re"] else Fraction(0)
    if not m["i"]:
        return Gauss(re_)
    im = Fraction(m["im"]) if m["im"] else Fraction(1)
    if m["sign"] == "-":
        im = -im
    return Gauss(re_, im)


def conj(x):
    if isinstance(x, Gauss):
        return x.conjugate()
    return x


def re_part(x) -> Fraction:
    return x.re if isinstance(x, Gauss) else Fraction(x)


def im_part(x) -> Fraction:
    return x.im if isinstance(x, Gauss) else Fraction(0)


def simplify(x):
    """Demote a real Gauss to a Fraction."""
    if isinstance(x, Gauss) and x.im == 0:
        return x.re
    if isinstance(x, int):
        return Fraction(x)
    return x


def fmt(x) -> str:
    """Compact text for an exact scalar: '3/2', '-i', '1+2i'."""
    x = simplify(x)
    if not isinstance(x, Gauss):
        return str(x)
    re, im = x.re, x.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}i"
    if re == 0:
        return ims
    if im > 0:
        return f"{re}+{ims}"
    return f"{re}{ims}"


def is_gaussian_matrix(m) -> bool:
    return any(isinstance(v, Gauss) and v.im != 0 for v in np.asarray(m, dtype=object).flat)


# --------------------------------------------------------------------------
# matrices


def matrix(rows) -> np.ndarray:
    """Object array of exact scalars; ints become Fractions."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = v if isinstance(v, (Gauss, Fraction)) else Fraction(v)
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def _row_denominator_lcm(row) -> int:
    dens = [1]
    for v in row:
        if isinstance(v, Gauss):
            dens += [v.re.denominator, v.im.denominator]
        else:
            dens.append(Fraction(v).denominator)
    return reduce(lcm, dens, 1)


def _bareiss_rank_int(rows: list[list[int]]) -> int:
    m = [r[:] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[c]
            for k in range(c + 1, ncols):
                row[k] = (p * row[k] - f * prow[k]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _bareiss_rank_generic(rows) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = Gauss(1)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[c]
            for k in range(c + 1, ncols):
                row[k] = (p * row[k] - f * prow[k]) / prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(m) -> int:
    """Row rank over Q(i) by fraction-free (Bareiss) elimination.

    Each row is first scaled by the lcm of its denominators, so the
    elimination runs over Z (or Z[i]) where every Bareiss division is exact.
    """
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        return 0
    rows = []
    gaussian = False
    for row in a:
        L = _row_denominator_lcm(row)
        scaled = [v * L for v in row]
        if any(isinstance(v, Gauss) and v.im != 0 for v in scaled):
            gaussian = True
        rows.append(scaled)
    if not gaussian:
        return _bareiss_rank_int([[int(re_part(v)) for v in r] for r in rows])
    return _bareiss_rank_generic([[Gauss.coerce(v) for v in r] for r in rows])


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (leading ones, pivots left to right) and pivot columns.

    Zero rows are dropped from the result.
    """
    a = np.array(m, dtype=object, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if a[k, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, c]
        for k in range(nrows):
            if k != r and a[k, c] != 0:
                a[k] = a[k] - a[k, c] * a[r]
        pivots.append(c)
        r += 1
    out = a[:r]
    for idx, v in np.ndenumerate(out):
        out[idx] = simplify(v)
    return out, pivots


def kernel(m, ncols: int | None = None) -> np.ndarray:
    """Basis of the right null space, rows in canonical echelon form."""
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        n = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return identity(n)
    red, piv = rref(a)
    n = a.shape[1]
    free = [c for c in range(n) if c not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = simplify(-row[f])
        vecs.append(v)
    if not vecs:
        return zeros(0, n)
    basis, _ = rref(matrix(vecs))
    return basis


def solve_linear(m, rhs):
    """Solve m x = rhs exactly.

    Returns ``(particular, kernel_subspace)``; ``particular`` is None when the
    system is inconsistent.
    """
    a = np.asarray(m, dtype=object)
    b = list(rhs)
    nrows, ncols = a.shape
    if len(b) != nrows:
        raise ValueError(f"rhs has length {len(b)}, matrix has {nrows} rows")
    aug = np.empty((nrows, ncols + 1), dtype=object)
    aug[:, :ncols] = a
    for i, v in enumerate(b):
        aug[i, ncols] = v
    red, piv = rref(aug)
    ker = Subspace.from_rows(ncols, kernel(a, ncols))
    if ncols in piv:
        return None, ker
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = simplify(row[ncols])
    return x, ker


def inverse(m) -> np.ndarray:
    a = np.asarray(m, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.empty((n, 2 * n), dtype=object)
    aug[:, :n] = a
    aug[:, n:] = identity(n)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


def det(m):
    a = [list(r) for r in np.asarray(m, dtype=object)]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        p = a[c][c]
        d = d * p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f != 0:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return simplify(d)


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    out = a.dot(b)
    if isinstance(out, np.ndarray):
        for idx, v in np.ndenumerate(out):
            out[idx] = simplify(v) if not isinstance(v, int) else Fraction(v)
    return out


def conj_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = conj(v)
    return out


# --------------------------------------------------------------------------
# signature


def signature_symmetric(m) -> tuple[int, int, int]:
    """Inertia (pos, neg, null) of a real symmetric matrix by exact congruence.

    Symmetric pivoting: a nonzero diagonal entry is used directly; if the
    remaining diagonal is zero but some a_ij is not, the congruence
    row_i += row_j, col_i += col_j makes a_ii = 2 a_ij nonzero.
    """
    a = np.asarray(m, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise NotSymmetric("matrix is not square")
    for idx, v in np.ndenumerate(a):
        if isinstance(v, Gauss) and v.im != 0:
            raise NotReal(f"entry {idx} = {fmt(v)} is not real")
    w = [[re_part(a[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if w[i][j] != w[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if w[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and w[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                w[i][k] += w[j][k]
            for k in range(n):
                w[k][i] += w[k][j]
            p = i
        piv = w[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for r in active:
            f = w[r][p] / piv
            if f == 0:
                continue
            for k in active:
                w[r][k] -= f * w[p][k]
            w[r][p] = Fraction(0)
        for r in active:
            w[p][r] = Fraction(0)
    return pos, neg, n - pos - neg


# --------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of K^n stored by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots: list[int]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_rows(cls, ambient_dim: int, rows) -> "Subspace":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zero(ambient_dim)
        for r in rows:
            if len(r) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(r)} in K^{ambient_dim}")
        red, piv = rref(matrix(rows))
        return cls(ambient_dim, red, piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, zeros(0, n), [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n), list(range(n)))

    @classmethod
    def span_of_units(cls, n: int, idx) -> "Subspace":
        rows = []
        for i in idx:
            v = [0] * n
            v[i] = 1
            rows.append(v)
        return cls.from_rows(n, rows)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[list]:
        return [list(r) for r in self.basis]

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"K^{self.ambient_dim} vs K^{other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_rows(self.ambient_dim, self.vectors() + other.vectors())

    def annihilator(self) -> np.ndarray:
        """Rows a with a . v = 0 for all v in the subspace."""
        if self.dim == 0:
            return identity(self.ambient_dim)
        return kernel(self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        ann = np.vstack([self.annihilator(), other.annihilator()]) if self.ambient_dim else zeros(0, 0)
        if ann.shape[0] == 0:
            return Subspace.full(self.ambient_dim)
        return Subspace.from_rows(self.ambient_dim, kernel(ann, self.ambient_dim))

    def contains(self, v) -> bool:
        v = list(v)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in K^{self.ambient_dim}")
        return self.coordinates(v) is not None

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.vectors())

    def coordinates(self, v):
        """Coordinates of v in the echelon basis, or None if v is outside."""
        c = [v[p] for p in self.pivots]
        recon = [sum((c[k] * self.basis[k, j] for k in range(self.dim)), Fraction(0)) for j in range(self.ambient_dim)]
        if any(x != y for x, y in zip(recon, v)):
            return None
        return [simplify(x) for x in c]

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        return [j for j in range(self.ambient_dim) if j not in self.pivots]

    def quotient_coordinates(self, v) -> list:
        """Coordinates of the class of v in K^n / self, w.r.t. the complement indices."""
        v = list(v)
        for k, p in enumerate(self.pivots):
            f = v[p]
            if f != 0:
                v = [x - f * y for x, y in zip(v, self.basis[k])]
        return [simplify(v[j]) for j in self.complement_indices()]

    def map(self, m) -> "Subspace":
        """Image under the linear map x -> m x."""
        a = np.asarray(m, dtype=object)
        rows = [list(a.dot(np.array(v, dtype=object))) for v in self.vectors()]
        return Subspace.from_rows(a.shape[0], rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and all(x == y for x, y in zip(self.basis.flat, other.basis.flat))
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.pivots), tuple(self.basis.flat)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def clear_denominators(v) -> list[int]:
    """Primitive integer vector proportional to a rational vector."""
    v = [Fraction(x) for x in v]
    L = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * L) for x in v]
    g = reduce(gcd, ints, 0) or 1
    return [x // g for x in ints]
