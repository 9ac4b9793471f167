"""Lie algebras given by structure equations.

Convention, fixed everywhere: de^k = sum_{i<j} c^k_ij e^i ^ e^j and
[e_i, e_j] = -sum_k c^k_ij e_k, so that d alpha(X, Y) = -alpha([X, Y]).

The text format is the usual shorthand ``(0,0,0,12,23,14-35,0,0)``: the
k-th entry is de^k, ``ij`` means e^i ^ e^j, ``2.13`` means 2 e^13 and
``1/2.12`` means (1/2) e^12.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import JacobiViolation, NotAnIdeal, ParseError
from .exactnum import Subspace, inverse, kernel, matrix, simplify, zeros
from .forms import Differential, KForm, substitute


class LieAlgebra:
    """Real (or Q(i)-) Lie algebra stored as the differentials of its dual basis."""

    def __init__(self, d_gens: list[KForm], name: str | None = None, check: bool = True):
        self.dim = len(d_gens)
        for k, f in enumerate(d_gens):
            if f.ambient != self.dim:
                raise ValueError(f"de^{k + 1} lives in ambient {f.ambient}, expected {self.dim}")
            if f.coeffs and f.degrees != {2}:
                raise ValueError(f"de^{k + 1} is not a 2-form")
        self.d_gens = [KForm(self.dim, f.coeffs) for f in d_gens]
        self.name = name
        self.d = Differential(self.d_gens)
        self._brackets = None
        if check:
            self.check_jacobi()

    # constructors

    @classmethod
    def from_constants(cls, dim: int, c: dict, name=None, check=True) -> "LieAlgebra":
        """From {(i, j, k): c^k_ij} with 0-based i < j."""
        gens = [dict() for _ in range(dim)]
        for (i, j, k), v in c.items():
            gens[k][(i, j)] = gens[k].get((i, j), 0) + v
        return cls([KForm(dim, g) for g in gens], name, check)

    @classmethod
    def from_brackets(cls, dim: int, br: dict, name=None, check=True) -> "LieAlgebra":
        """From {(i, j): vector} meaning [e_i, e_j] = vector (0-based)."""
        c = {}
        for (i, j), vec in br.items():
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            for k, v in enumerate(vec):
                if v != 0:
                    c[(i, j, k)] = c.get((i, j, k), 0) - sign * v
        return cls.from_constants(dim, c, name, check)

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls([KForm.zero(n) for _ in range(n)], name=f"R^{n}")

    # structure

    def check_jacobi(self):
        for k, f in enumerate(self.d_gens):
            r = self.d(f)
            if r:
                raise JacobiViolation(k, r)

    def constants(self) -> dict:
        out = {}
        for k, f in enumerate(self.d_gens):
            for (i, j), v in f.coeffs.items():
                out[(i, j, k)] = v
        return out

    def bracket_table(self) -> np.ndarray:
        """T[i, j] = coordinates of [e_i, e_j]."""
        if self._brackets is None:
            n = self.dim
            t = np.empty((n, n, n), dtype=object)
            t.fill(Fraction(0))
            for (i, j, k), v in self.constants().items():
                t[i, j, k] = -v
                t[j, i, k] = v
            self._brackets = t
        return self._brackets

    def bracket(self, x, y) -> list:
        t = self.bracket_table()
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                s = x[i] * y[j]
                for k in range(n):
                    if t[i, j, k] != 0:
                        out[k] += s * t[i, j, k]
        return [simplify(v) for v in out]

    def ad(self, x) -> np.ndarray:
        """Matrix of ad_x (columns are [x, e_j])."""
        n = self.dim
        cols = [self.bracket(x, unit(n, j)) for j in range(n)]
        return matrix([[cols[j][i] for j in range(n)] for i in range(n)]) if n else zeros(0, 0)

    def right_mult(self, j: int) -> np.ndarray:
        """Matrix of X -> [X, e_j]."""
        t = self.bracket_table()
        n = self.dim
        m = zeros(n, n)
        for i in range(n):
            for k in range(n):
                m[k, i] = t[i, j, k]
        return m

    def differential(self, a: KForm) -> KForm:
        return self.d(a)

    def is_abelian(self) -> bool:
        return all(not f for f in self.d_gens)

    # comparison and text

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.d_gens, other.d_gens))

    def __hash__(self):
        return hash(tuple(self.d_gens))

    def render(self) -> str:
        return render_algebra(self)

    def __repr__(self):
        label = f"{self.name} = " if self.name else ""
        return f"LieAlgebra({label}{self.render()})"

    # operations

    def change_basis(self, q, name=None) -> "LieAlgebra":
        """New algebra in the dual basis e'^a = sum_b q[a][b] e^b."""
        q = matrix(q)
        qi = inverse(q)
        n = self.dim
        old_in_new = [KForm(n, {(c,): qi[b, c] for c in range(n)}) for b in range(n)]
        gens = []
        for a in range(n):
            da = KForm.zero(n)
            for b in range(n):
                if q[a, b] != 0:
                    da = da + self.d_gens[b] * q[a, b]
            gens.append(substitute(da, old_in_new))
        return LieAlgebra(gens, name)

    def ascending_series(self) -> "Flag":
        return ascending_series(self)

    def descending_series(self) -> "Flag":
        return descending_series(self)

    def center(self) -> Subspace:
        return center(self)

    def step(self) -> int:
        return len(ascending_series(self).terms) - 1


def unit(n: int, j: int) -> list:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


# ---------------------------------------------------------------------------
# series


class Flag:
    """Nested list of subspaces, first term usually {0} or the whole algebra."""

    def __init__(self, terms: list[Subspace]):
        self.terms = list(terms)

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def __getitem__(self, k):
        return self.terms[k]

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Flag{tuple(self.dims)}"


def _preimage_condition(g: LieAlgebra, prev: Subspace, extra=None) -> Subspace:
    """{X : [X, e_j] in prev for all j} (and the same for extra(X) if given)."""
    n = g.dim
    ann = prev.annihilator()
    blocks = []
    if ann.shape[0]:
        for j in range(n):
            r = g.right_mult(j)
            blocks.append(ann.dot(r))
            if extra is not None:
                blocks.append(ann.dot(r).dot(extra))
    if not blocks:
        return Subspace.full(n)
    return Subspace.from_rows(n, kernel(np.vstack(blocks), n))


def ascending_series(g: LieAlgebra) -> Flag:
    """g_0 = {0}, g_k = {X : [X, g] in g_{k-1}}, until stationary."""
    terms = [Subspace.zero(g.dim)]
    while True:
        nxt = _preimage_condition(g, terms[-1])
        if nxt.dim == terms[-1].dim:
            break
        terms.append(nxt)
    return Flag(terms)


def descending_series(g: LieAlgebra) -> Flag:
    """g^0 = g, g^k = [g^{k-1}, g], until stationary (zero for nilpotent g)."""
    n = g.dim
    terms = [Subspace.full(n)]
    while terms[-1].dim:
        vecs = []
        for x in terms[-1].vectors():
            for j in range(n):
                vecs.append(g.bracket(x, unit(n, j)))
        nxt = Subspace.from_rows(n, vecs)
        if nxt.dim == terms[-1].dim:
            break
        terms.append(nxt)
    return Flag(terms)


def ascending_type(g: LieAlgebra) -> tuple:
    return tuple(ascending_series(g).dims[1:])


def descending_type(g: LieAlgebra) -> tuple:
    return tuple(d for d in descending_series(g).dims if d)


def is_nilpotent(g: LieAlgebra) -> bool:
    return ascending_series(g).terms[-1].dim == g.dim


def center(g: LieAlgebra) -> Subspace:
    return _preimage_condition(g, Subspace.zero(g.dim))


def derived_algebra(g: LieAlgebra) -> Subspace:
    flag = descending_series(g)
    return flag.terms[1] if len(flag) > 1 else Subspace.zero(g.dim)


def is_ideal(g: LieAlgebra, sub: Subspace) -> bool:
    n = g.dim
    return all(sub.contains(g.bracket(v, unit(n, j))) for v in sub.vectors() for j in range(n))


def quotient(g: LieAlgebra, ideal: Subspace, name=None):
    """g / ideal in the basis of classes of the non-pivot unit vectors.

    Returns ``(algebra, projection)`` where ``projection`` is the m x n
    matrix sending coordinates in g to coordinates in the quotient.
    """
    if not is_ideal(g, ideal):
        raise NotAnIdeal(f"subspace of dim {ideal.dim} is not an ideal of {g.name or g.render()}")
    n = g.dim
    keep = ideal.complement_indices()
    m = len(keep)
    proj = zeros(m, n)
    for j in range(n):
        col = ideal.quotient_coordinates(unit(n, j))
        for a in range(m):
            proj[a, j] = col[a]
    br = {}
    for a, b in combinations(range(m), 2):
        v = g.bracket(unit(n, keep[a]), unit(n, keep[b]))
        br[(a, b)] = ideal.quotient_coordinates(v)
    return LieAlgebra.from_brackets(m, br, name), proj


def direct_sum(a: LieAlgebra, b: LieAlgebra, name=None) -> LieAlgebra:
    n = a.dim + b.dim
    c = {}
    for (i, j, k), v in a.constants().items():
        c[(i, j, k)] = v
    for (i, j, k), v in b.constants().items():
        c[(i + a.dim, j + a.dim, k + a.dim)] = v
    return LieAlgebra.from_constants(n, c, name)


# ---------------------------------------------------------------------------
# text format


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"unexpected {got!r}", self.text, self.pos, repr(ch))
        self.pos += 1

    def digits(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def algebra(self):
        self.expect("(")
        terms = [self.term()]
        while self.peek() == ",":
            self.pos += 1
            terms.append(self.term())
        self.expect(")")
        if self.peek():
            raise ParseError("trailing input", self.text, self.pos, "end of input")
        return terms

    def term(self):
        out = []
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            raise ParseError("term cannot start with '+'", self.text, self.pos, "digit or '-'")
        first = self.summand(sign)
        if first is None:
            if sign < 0:
                raise ParseError("'-0' is not a term", self.text, self.pos, "summand")
            if self.peek() not in (",", ")"):
                raise ParseError("'0' must stand alone", self.text, self.pos, "',' or ')'")
            return out
        out.append(first)
        while self.peek() in ("+", "-"):
            sign = 1 if self.peek() == "+" else -1
            self.pos += 1
            s = self.summand(sign)
            if s is None:
                raise ParseError("zero summand inside a sum", self.text, self.pos, "summand")
            out.append(s)
        return out

    def summand(self, sign):
        self.skip()
        start = self.pos
        num = self.digits()
        if not num:
            raise ParseError("missing summand", self.text, self.pos, "digit")
        coeff = Fraction(1)
        has_coeff = False
        if self.peek() == "/":
            self.pos += 1
            den = self.digits()
            if not den or int(den) == 0:
                raise ParseError("bad denominator", self.text, self.pos, "positive integer")
            coeff = Fraction(int(num), int(den))
            has_coeff = True
            self.expect(".")
        elif self.peek() == ".":
            self.pos += 1
            coeff = Fraction(int(num))
            has_coeff = True
        if has_coeff:
            idx_pos = self.pos
            pair = self.digits()
            if len(pair) != 2:
                raise ParseError("expected two index digits", self.text, idx_pos, "two digits")
        else:
            if num == "0":
                return None
            pair = num
            if len(pair) != 2:
                raise ParseError("expected two index digits", self.text, start, "two digits or coeff '.'")
        i, j = int(pair[0]), int(pair[1])
        return (sign * coeff, i, j, start)


def parse_algebra(text: str, name: str | None = None) -> LieAlgebra:
    """Parse ``(0,0,12,...)`` shorthand and verify Jacobi."""
    p = _Parser(text)
    terms = p.algebra()
    n = len(terms)
    gens = []
    for summands in terms:
        coeffs = {}
        for c, i, j, pos in summands:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"index out of range 1..{n}", text, pos, f"digits in 1..{n}")
            if i == j:
                raise ParseError("repeated index", text, pos, "two distinct indices")
            if i > j:
                i, j, c = j, i, -c
            coeffs[(i - 1, j - 1)] = coeffs.get((i - 1, j - 1), 0) + c
        gens.append(KForm(n, coeffs))
    return LieAlgebra(gens, name)


def _render_coeff(c: Fraction) -> str:
    c = abs(c)
    if c == 1:
        return ""
    return f"{c.numerator}." if c.denominator == 1 else f"{c.numerator}/{c.denominator}."


def render_algebra(g: LieAlgebra) -> str:
    if g.dim > 9:
        raise ValueError("the text format only covers dimension <= 9")
    parts = []
    for f in g.d_gens:
        if not f:
            parts.append("0")
            continue
        s = ""
        for k, ((i, j), c) in enumerate(sorted(f.coeffs.items())):
            c = Fraction(c)
            body = f"{_render_coeff(c)}{i + 1}{j + 1}"
            if k == 0:
                s = ("-" if c < 0 else "") + body
            else:
                s += ("-" if c < 0 else "+") + body
        parts.append(s)
    return "(" + ",".join(parts) + ")"

