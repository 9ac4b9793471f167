"""Complex structures: coframe presentations, realification, Nijenhuis tensor,
the ascending J-compatible series and intertwiners between presentations.

A presentation of complex dimension n lives on 2n generators: w^1..w^n
(indices 0..n-1) and their conjugates (indices n..2n-1).  Only the dw^k
are stored; d of a barred generator is the conjugate.

Realification uses w^k = sum_j Q[k][j] e^j.  The default is
w^k = e^{2k-1} + i e^{2k}, which makes J e_{2k-1} = e_{2k} on vectors,
and the dual frame Z_k = (e_{2k-1} - i e_{2k}) / 2 satisfies J Z_k = i Z_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy as sp

from .errors import (
    NotAlmostComplex,
    NotIntegrable,
    NotReal,
    QuotientIsZero,
    SingularLambda,
)
from .exactnum import (
    Gauss,
    I,
    Subspace,
    conj,
    det,
    identity,
    inverse,
    kernel,
    matmul,
    matrix,
    simplify,
    zeros,
)
from .forms import Differential, KForm, substitute
from .liealg import Flag, LieAlgebra, _preimage_condition, quotient, unit


# ---------------------------------------------------------------------------
# presentations


class CoframePresentation:
    """Complex structure equations dw^k, k = 1..n, with w-bar implied."""

    def __init__(self, d_omega: list[KForm], name: str | None = None, check: bool = True):
        self.n = len(d_omega)
        self.name = name
        amb = 2 * self.n
        self.d_omega = [KForm(amb, f.coeffs, self.n) for f in d_omega]
        for f in self.d_omega:
            if f.ambient != amb:
                raise ValueError("dw^k must live on the 2n complex generators")
        gens = self.d_omega + [f.conjugate() for f in self.d_omega]
        self.d = Differential(gens, self.n)
        if check:
            self.check_integrable()
            self.check_jacobi()

    @classmethod
    def from_terms(cls, n: int, eqs: list[dict], name=None, check=True) -> "CoframePresentation":
        """eqs[k] maps index strings like "13", "1~3", "2~1" to coefficients."""
        out = []
        for terms in eqs:
            coeffs = {}
            for key, c in terms.items():
                coeffs[parse_index(key, n)] = c
            out.append(KForm(2 * n, coeffs, n))
        return cls(out, name, check)

    def w(self, *idx) -> KForm:
        """Monomial from 1-based labels, negative label = barred."""
        gens = tuple((i - 1) if i > 0 else (self.n - i - 1) for i in idx)
        return KForm.gen(2 * self.n, *gens, cdim=self.n)

    def differential(self, a: KForm) -> KForm:
        return self.d(a)

    def check_integrable(self):
        for k, f in enumerate(self.d_omega):
            bad = f.component(0, 2)
            if bad:
                raise NotIntegrable(f"dw^{k + 1} has a (0,2) part: {bad}")
            if f.coeffs and f.degrees != {2}:
                raise ValueError(f"dw^{k + 1} is not a 2-form")

    def check_jacobi(self):
        from .errors import JacobiViolation

        for k, f in enumerate(self.d_omega):
            r = self.d(f)
            if r:
                raise JacobiViolation(k, r)

    def check_integrable_quiet(self) -> bool:
        return all(not f.component(0, 2) for f in self.d_omega)

    def __eq__(self, other):
        if not isinstance(other, CoframePresentation):
            return NotImplemented
        return self.n == other.n and all(a == b for a, b in zip(self.d_omega, other.d_omega))

    def __hash__(self):
        return hash(tuple(self.d_omega))

    def render(self, style: str = "plain") -> str:
        lines = []
        for k, f in enumerate(self.d_omega):
            if style == "tex":
                lines.append(f"d\\omega^{{{k + 1}}} = {f.render('tex')}")
            else:
                lines.append(f"dw{k + 1} = {f.render()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"CoframePresentation(n={self.n}{', ' + self.name if self.name else ''})"


def parse_index(key: str, n: int) -> tuple:
    """"1~3" -> (0, n+2): digits are w^k, a '~' bars the next digit."""
    out = []
    bar = False
    for ch in key:
        if ch == "~":
            bar = True
            continue
        k = int(ch) - 1
        if not 0 <= k < n:
            raise ValueError(f"index {ch} out of range in {key!r}")
        out.append(k + n if bar else k)
        bar = False
    return tuple(out)


# ---------------------------------------------------------------------------
# realification


@dataclass
class RealJ:
    """Endomorphism of g with J^2 = -Id; column l holds J e_l."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = matrix(self.matrix)
        n = self.matrix.shape[0]
        sq = matmul(self.matrix, self.matrix)
        if any(sq[i, j] != (-1 if i == j else 0) for i in range(n) for j in range(n)):
            raise NotAlmostComplex("J^2 != -Id")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x) -> list:
        return [simplify(v) for v in self.matrix.dot(np.array(list(x), dtype=object))]

    @classmethod
    def standard(cls, n: int) -> "RealJ":
        m = zeros(n, n)
        for k in range(0, n, 2):
            m[k + 1, k] = Fraction(1)
            m[k, k + 1] = Fraction(-1)
        return cls(m)

    def __eq__(self, other):
        return isinstance(other, RealJ) and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat))


def default_basis(n: int) -> list[list]:
    """w^k = e^{2k-1} + i e^{2k}."""
    rows = []
    for k in range(n):
        r = [Fraction(0)] * (2 * n)
        r[2 * k] = Fraction(1)
        r[2 * k + 1] = I
        rows.append(r)
    return rows


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Gauss))


def _to_sympy(x):
    if isinstance(x, Gauss):
        return sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return sp.Rational(x.numerator, x.denominator)
    return sp.sympify(x)


def _from_sympy(x):
    x = sp.nsimplify(sp.expand(x))
    re, im = x.as_real_imag()
    re, im = sp.nsimplify(re), sp.nsimplify(im)
    if not (re.is_Rational and im.is_Rational):
        raise NotReal(f"coefficient {x} is not a Gaussian rational")
    return simplify(Gauss(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))


def antisym(f: KForm, n: int):
    """Antisymmetric coefficient matrix W of a 2-form, f = sum_{a<b} W[a,b] e^ab."""
    w = zeros(n, n)
    for (a, b), c in f.coeffs.items():
        w[a, b] = c
        w[b, a] = -c
    return w


def realify(p: CoframePresentation, basis=None, name=None):
    """Real Lie algebra and J for the presentation in the real coframe e.

    ``basis[k]`` gives w^k in terms of e^1..e^2n.  Entries may be sympy
    numbers (e.g. sqrt(2)/2); the resulting structure constants must be
    rational or NotReal is raised.
    """
    n = p.n
    m = 2 * n
    q = default_basis(n) if basis is None else [list(r) for r in basis]
    exact = all(_is_exact(v) for r in q for v in r)
    if exact:
        theta = matrix([[simplify(Gauss.coerce(v)) for v in r] for r in q] + [[simplify(conj(Gauss.coerce(v))) for v in r] for r in q])
        try:
            tinv = inverse(theta)
        except ZeroDivisionError:
            raise SingularLambda("basis change is singular") from None
        ws = [antisym(f, m) for f in p.d.gens]
        de = []
        for j in range(m):
            acc = zeros(m, m)
            for a in range(m):
                if tinv[j, a] != 0:
                    acc = acc + ws[a] * tinv[j, a]
            de.append(matmul(matmul(theta.T, acc), theta))
        s = zeros(m, m)
        for a in range(m):
            s[a, a] = I if a < n else -I
        jm = matmul(matmul(tinv, s), theta)
        conv = simplify
    else:
        theta = sp.Matrix([[_to_sympy(v) for v in r] for r in q] + [[sp.conjugate(_to_sympy(v)) for v in r] for r in q])
        tinv = theta.inv()
        ws = [sp.Matrix(m, m, lambda a, b: _to_sympy(antisym(f, m)[a, b])) for f in p.d.gens]
        de = []
        for j in range(m):
            acc = sp.zeros(m, m)
            for a in range(m):
                if tinv[j, a] != 0:
                    acc += ws[a] * tinv[j, a]
            de.append(theta.T * acc * theta)
        s = sp.diag(*([sp.I] * n + [-sp.I] * n))
        jm = tinv * s * theta
        conv = _from_sympy
    gens = []
    for j in range(m):
        coeffs = {}
        for a, b in combinations(range(m), 2):
            v = conv(de[j][a, b])
            if isinstance(v, Gauss):
                raise NotReal(f"de^{j + 1} has complex coefficient {v} on e^{a + 1}{b + 1}")
            if v != 0:
                coeffs[(a, b)] = v
        gens.append(KForm(m, coeffs))
    jr = np.empty((m, m), dtype=object)
    for a in range(m):
        for b in range(m):
            v = conv(jm[a, b])
            if isinstance(v, Gauss):
                raise NotReal("J is not real in this basis")
            jr[a, b] = v
    return LieAlgebra(gens, name), RealJ(jr)


def complexify(g: LieAlgebra, J: RealJ, name=None) -> tuple[CoframePresentation, list]:
    """A (1,0)-coframe for (g, J) and its rows in the e-basis."""
    n = g.dim
    if n % 2:
        raise NotAlmostComplex("odd dimension")
    # (1,0)-forms alpha satisfy alpha(JX) = i alpha(X), i.e. alpha (J - i) = 0
    m = np.array(J.matrix, dtype=object) - identity(n) * I
    rows = kernel(m.T, n)
    rows = [list(r) for r in rows]
    if len(rows) != n // 2:
        raise NotAlmostComplex("i-eigenspace has the wrong dimension")
    h = n // 2
    theta = matrix([[simplify(v) for v in r] for r in rows] + [[simplify(conj(v)) for v in r] for r in rows])
    tinv = inverse(theta)
    e_in_theta = [KForm(n, {(a,): tinv[j, a] for a in range(n)}, h) for j in range(n)]
    d_omega = []
    for k in range(h):
        f = KForm.zero(n, h)
        for j in range(n):
            if rows[k][j] != 0:
                f = f + substitute(g.d_gens[j], e_in_theta) * rows[k][j]
        d_omega.append(KForm(n, f.coeffs, h))
    return CoframePresentation(d_omega, name, check=False), rows


# ---------------------------------------------------------------------------
# Nijenhuis


def nijenhuis(g: LieAlgebra, J: RealJ) -> dict:
    """Nonzero N_J(e_i, e_j), i < j; an empty dict means J is integrable."""
    out = {}
    n = g.dim
    cols = [J.apply(unit(n, i)) for i in range(n)]
    for i, j in combinations(range(n), 2):
        x, y = unit(n, i), unit(n, j)
        jx, jy = cols[i], cols[j]
        a = g.bracket(x, y)
        b = J.apply(g.bracket(jx, y))
        c = J.apply(g.bracket(x, jy))
        d = g.bracket(jx, jy)
        v = [simplify(a[k] + b[k] + c[k] - d[k]) for k in range(n)]
        if any(t != 0 for t in v):
            out[(i, j)] = v
    return out


def is_integrable(g: LieAlgebra, J: RealJ) -> bool:
    return not nijenhuis(g, J)


# ---------------------------------------------------------------------------
# ascending J-compatible series


NILPOTENT = "Nilpotent"
WNN = "WeaklyNonNilpotent"
SNN = "StronglyNonNilpotent"


@dataclass
class JType:
    tag: str
    series_dims: list
    t: int

    @property
    def short(self) -> str:
        return {NILPOTENT: "N", WNN: "WnN", SNN: "SnN"}[self.tag]


def j_compatible_series(g: LieAlgebra, J: RealJ):
    """a_0 = 0, a_k = {X : [X,g], [JX,g] in a_{k-1}}; returns (Flag, JType)."""
    n = g.dim
    terms = [Subspace.zero(n)]
    while True:
        nxt = _preimage_condition(g, terms[-1], extra=J.matrix)
        if nxt.dim == terms[-1].dim:
            break
        terms.append(nxt)
    for t in terms:
        assert t.dim % 2 == 0, "a_k(J) must be even dimensional"
        assert t.map(J.matrix) == t, "a_k(J) must be J-invariant"
    dims = [t.dim for t in terms[1:]]
    top = terms[-1].dim
    if top == n:
        tag = NILPOTENT
    elif top == 0:
        tag = SNN
    else:
        tag = WNN
    shown = dims + ([top] if top != n else [])
    return Flag(terms), JType(tag, shown, len(terms) - 1)


def classify(g: LieAlgebra, J: RealJ) -> JType:
    return j_compatible_series(g, J)[1]


def induced_quotient(g: LieAlgebra, J: RealJ, q: int):
    """(g / a_q(J), induced J); checks a_l(J~) = a_{q+l}(J) / a_q(J)."""
    flag, _ = j_compatible_series(g, J)
    if q >= len(flag.terms):
        q = len(flag.terms) - 1
    aq = flag.terms[q]
    if aq.dim == g.dim:
        raise QuotientIsZero(f"a_{q}(J) is the whole algebra")
    h, proj = quotient(g, aq)
    keep = aq.complement_indices()
    m = len(keep)
    jt = zeros(m, m)
    for a, k in enumerate(keep):
        img = proj.dot(np.array(J.apply(unit(g.dim, k)), dtype=object))
        for b in range(m):
            jt[b, a] = simplify(img[b])
    Jq = RealJ(jt)
    qflag, _ = j_compatible_series(h, Jq)
    for ell in range(1, len(qflag.terms)):
        src = flag.terms[min(q + ell, len(flag.terms) - 1)]
        assert src.map(proj) == qflag.terms[ell], "induced series does not match the quotient of the series"
    return h, Jq, proj


# ---------------------------------------------------------------------------
# intertwiners


def intertwiner_images(p: CoframePresentation, lam) -> list[KForm]:
    """Images of w'^i and their conjugates under F(w'^i) = sum_j lam[i][j] w^j."""
    n = p.n
    m = 2 * n
    ims = []
    for i in range(n):
        ims.append(KForm(m, {(j,): lam[i][j] for j in range(n)}, n))
    return ims + [f.conjugate() for f in ims]


def check_intertwiner(p: CoframePresentation, p2: CoframePresentation, lam):
    """Residuals d(F w'^i) - F(d w'^i); ``(True, [])`` when F commutes with d.

    ``p`` is the target presentation (the w), ``p2`` the source (the w').
    """
    if p.n != p2.n:
        raise ValueError("presentations of different dimension")
    lam = [[simplify(v) if not isinstance(v, int) else Fraction(v) for v in r] for r in lam]
    if det(matrix(lam)) == 0:
        raise SingularLambda("Lambda is singular")
    ims = intertwiner_images(p, lam)
    res = []
    for i in range(p2.n):
        r = p.differential(ims[i]) - substitute(p2.d_omega[i], ims)
        res.append(r)
    ok = all(not r for r in res)
    return ok, ([] if ok else res)


def transport_matrix(rows_src, rows_dst, lam) -> np.ndarray:
    """Real isomorphism f: g -> g' (on vectors) induced by Lambda.

    rows_src/rows_dst are the w / w' rows in their real bases; the dual map
    f^* sends w'^i to sum_j lam[i][j] w^j.
    """
    n = len(rows_src) * 2
    h = n // 2
    th = matrix([list(r) for r in rows_src] + [[conj(v) for v in r] for r in rows_src])
    th2 = matrix([list(r) for r in rows_dst] + [[conj(v) for v in r] for r in rows_dst])
    L = zeros(n, n)
    for i in range(h):
        for j in range(h):
            L[i, j] = lam[i][j]
            L[i + h, j + h] = conj(lam[i][j])
    # f^* on e'-rows: e'^a = th2^{-1} w', f^*(w') = L w, w = th e
    fstar = matmul(matmul(inverse(th2), L), th)
    out = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            v = simplify(fstar[a, b])
            if isinstance(v, Gauss):
                raise NotReal("induced map is not real")
            out[a, b] = v
    # f^*(e'^a) = sum_b fstar[a,b] e^b  <=>  e'^a(f e_b) = fstar[a,b]
    return out
