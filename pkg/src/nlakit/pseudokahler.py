"""Pseudo-Kahler structures on complex coframes.

A real (1,1)-form is
    F = sum_k i x_kk w^{k~k} + sum_{k<l} (x_kl w^{k~l} - conj(x_kl) w^{l~k}),
with x_kk real.  Its n^2 real coordinates are ordered x_11..x_nn, then
Re x_kl, Im x_kl for k<l in lexicographic order.

Geometry runs in the complex frame X_0..X_{2n-1} = Z_1..Z_n, Zbar_1..Zbar_n
dual to (w, wbar), with J Z = i Z and g(U, V) = F(JU, V).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

import numpy as np

from .cpxstruct import CoframePresentation, default_basis, realify
from .errors import Degenerate
from .exactnum import (
    Gauss,
    I,
    Subspace,
    conj,
    fmt,
    im_part,
    inverse,
    kernel,
    matmul,
    matrix,
    re_part,
    signature_symmetric,
    simplify,
    zeros,
)
from .forms import KForm, del_delbar, substitute, wedge

# ---------------------------------------------------------------------------
# (1,1)-forms


def _pairs(n):
    return list(itertools.combinations(range(n), 2))


def unknown_labels(n: int) -> list[str]:
    out = [f"x{k + 1}{k + 1}" for k in range(n)]
    for k, l in _pairs(n):
        out += [f"Re x{k + 1}{l + 1}", f"Im x{k + 1}{l + 1}"]
    return out


@dataclass
class Hermitian11Form:
    """Coefficients x[k][l] (k <= l) of a real (1,1)-form; x[k][k] real."""

    x: list

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def from_real(cls, n: int, vec) -> "Hermitian11Form":
        x = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            x[k][k] = Fraction(vec[k])
        pos = n
        for k, l in _pairs(n):
            x[k][l] = simplify(Gauss(vec[pos], vec[pos + 1]))
            pos += 2
        return cls(x)

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "Hermitian11Form":
        """entries maps 1-based (k, l), k <= l, to x_{k lbar}."""
        x = [[Fraction(0)] * n for _ in range(n)]
        for (k, l), v in entries.items():
            x[k - 1][l - 1] = simplify(Gauss.coerce(v))
        return cls(x)

    def real_vector(self) -> list:
        n = self.n
        v = [re_part(self.x[k][k]) for k in range(n)]
        for k, l in _pairs(n):
            v += [re_part(self.x[k][l]), im_part(self.x[k][l])]
        return v

    def form(self) -> KForm:
        n = self.n
        c = {}
        for k in range(n):
            if self.x[k][k] != 0:
                if im_part(self.x[k][k]) != 0:
                    raise ValueError("diagonal coefficients must be real")
                c[(k, k + n)] = simplify(I * self.x[k][k])
        for k, l in _pairs(n):
            v = self.x[k][l]
            if v != 0:
                c[(k, l + n)] = v
                c[(l, k + n)] = simplify(-conj(v))
        return KForm(2 * n, c, n)

    def __str__(self):
        return self.form().render()


def _basis_forms(n: int) -> list[KForm]:
    out = []
    for j in range(n * n):
        v = [Fraction(0)] * (n * n)
        v[j] = Fraction(1)
        out.append(Hermitian11Form.from_real(n, v).form())
    return out


# ---------------------------------------------------------------------------
# top-degree polynomials


def _top(n2: int) -> tuple:
    return tuple(range(n2))


def power_polynomial(forms: list[KForm], k: int) -> dict:
    """Coefficients of (sum_i t_i forms[i])^k on the top monomial, keyed by exponent tuples."""
    m = len(forms)
    if m == 0:
        return {}
    amb = forms[0].ambient
    top = _top(amb)
    out = {}
    cache = {(): KForm.scalar(amb, Fraction(1), forms[0].cdim)}
    for combo in itertools.combinations_with_replacement(range(m), k):
        w = cache.get(combo[:-1])
        if w is None:
            w = cache[()]
            for i in combo[:-1]:
                w = wedge(w, forms[i])
            cache[combo[:-1]] = w
        w = wedge(w, forms[combo[-1]])
        c = w[top] if len(top) == 2 * k else w.part(2 * k)
        if not isinstance(c, KForm) and c != 0:
            exps = [0] * m
            for i in combo:
                exps[i] += 1
            mult = factorial(k) // prod(factorial(e) for e in exps)
            out[tuple(exps)] = simplify(c * mult)
    return out


def eval_polynomial(poly: dict, t) -> object:
    s = Fraction(0)
    for exps, c in poly.items():
        term = c
        for ti, e in zip(t, exps):
            if e:
                term = term * ti ** e
        s = s + term
    return simplify(s)


def _candidates(poly: dict, dim: int, height: int, seed: int, tries: int = 400):
    """Points of Z^dim with poly != 0: small points first, then seeded random ones."""
    if not poly:
        return
    for h in range(1, min(height, 2) + 1):
        if dim <= 6:
            for t in itertools.product(range(-h, h + 1), repeat=dim):
                if eval_polynomial(poly, t) != 0:
                    yield list(t)
    rnd = random.Random(seed)
    for _ in range(tries):
        t = [rnd.randint(-height, height) for _ in range(dim)]
        if eval_polynomial(poly, t) != 0:
            yield t


def _search(poly: dict, dim: int, height: int, seed: int, tries: int = 400):
    return next(_candidates(poly, dim, height, seed, tries), None)


# ---------------------------------------------------------------------------
# solver


@dataclass
class PKSolution:
    presentation: CoframePresentation
    form: Hermitian11Form
    params_used: dict = field(default_factory=dict)
    metric: np.ndarray | None = None
    signature: tuple | None = None

    def __post_init__(self):
        if self.metric is None:
            self.metric, self.signature = metric_and_signature(self)


@dataclass
class PKResult:
    closed_space: Subspace
    witness: PKSolution | None
    top_polynomial: dict
    labels: list

    def __iter__(self):
        return iter((self.closed_space, self.witness))

    @property
    def kernel_dim(self) -> int:
        return self.closed_space.dim

    @property
    def exists(self) -> bool:
        return self.witness is not None

    @property
    def certificate(self) -> str | None:
        """Set when F^n vanishes identically on the closed space."""
        if self.top_polynomial:
            return None
        return f"F^n = 0 for every closed F: all coefficients vanish on the {self.kernel_dim}-dim kernel"


def del_matrix(p: CoframePresentation) -> np.ndarray:
    """Real matrix of x -> (Re, Im) coordinates of del F."""
    n = p.n
    rows: dict = {}
    cols = []
    for f in _basis_forms(n):
        dl, _ = del_delbar(p, f)
        cols.append(dl)
        for mono in dl.coeffs:
            rows.setdefault(mono, len(rows))
    m = zeros(2 * len(rows), n * n)
    for j, dl in enumerate(cols):
        for mono, c in dl.coeffs.items():
            r = rows[mono]
            m[2 * r, j] = re_part(c)
            m[2 * r + 1, j] = im_part(c)
    return m


def pk_solve(p: CoframePresentation, height: int = 4, seed: int = 0, params: dict | None = None,
             prefer_neutral: bool = True, neutral_budget: int = 40) -> PKResult:
    """Closed real (1,1)-forms and a nondegenerate one if there is any.

    With ``prefer_neutral`` the first witness of signature (n, n) among the
    first ``neutral_budget`` candidates wins; otherwise the first candidate.
    """
    n = p.n
    m = del_matrix(p)
    ker = kernel(m, n * n) if m.shape[0] else matrix([[Fraction(int(i == j)) for j in range(n * n)] for i in range(n * n)])
    space = Subspace.from_rows(n * n, [list(r) for r in ker])
    basis = [Hermitian11Form.from_real(n, v).form() for v in space.vectors()]
    for f in basis:
        assert not p.differential(f), "del F = 0 but dF != 0"
    poly = power_polynomial(basis, n)
    wit = None
    # neutral metrics are the interesting ones, so look a little further for one
    for k, t in enumerate(_candidates(poly, len(basis), height, seed)):
        vec = [sum((Fraction(ti) * v[j] for ti, v in zip(t, space.vectors())), Fraction(0)) for j in range(n * n)]
        sol = PKSolution(p, Hermitian11Form.from_real(n, vec), dict(params or {}, point=t))
        if wit is None:
            wit = sol
        if not prefer_neutral or sol.signature == (n, n):
            wit = sol
            break
        if k >= neutral_budget:
            break
    return PKResult(space, wit, poly, unknown_labels(n))


def theorem_family(delta, a, r, s, u, v) -> Hermitian11Form:
    """The closed forms on the eps=0, nu=1 WnN structures."""
    r, s = Fraction(r), Fraction(s)
    return Hermitian11Form.from_entries(4, {
        (1, 1): u, (2, 2): -s, (3, 3): -delta * r, (1, 2): v,
        (1, 3): I * a * delta * Gauss(r, -s), (1, 4): Gauss(r, s),
    })


def family_ii_form(r, s, u, v) -> Hermitian11Form:
    """Closed forms on the SnN family II structure with eps=1 and the rest zero."""
    return Hermitian11Form.from_entries(4, {
        (1, 1): r, (4, 4): s, (1, 2): u, (1, 3): v, (2, 3): -s,
    })


def top_coefficient(p: CoframePresentation, form: Hermitian11Form):
    n = p.n
    f = form.form()
    w = KForm.scalar(2 * n, Fraction(1), n)
    for _ in range(n):
        w = wedge(w, f)
    return w[_top(2 * n)]


def volume_monomial_sign(n: int) -> int:
    """w^{1 1bar ... n nbar} = sign * w^{1..n 1bar..nbar}."""
    idx = []
    for k in range(n):
        idx += [k, k + n]
    inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# real metric


def real_form(p: CoframePresentation, f: KForm, rows=None) -> KForm:
    """f rewritten in the real coframe e with w^k = sum rows[k][j] e^j."""
    n = p.n
    rows = default_basis(n) if rows is None else rows
    ims = [KForm(2 * n, {(j,): c for j, c in enumerate(r) if c != 0}) for r in rows]
    ims = ims + [KForm(2 * n, {(j,): conj(c) for j, c in enumerate(r) if c != 0}) for r in rows]
    out = substitute(f, ims)
    for mono, c in out.coeffs.items():
        if isinstance(simplify(c), Gauss):
            raise ValueError(f"form is not real: coefficient {fmt(c)} on {mono}")
    return KForm(2 * n, {k: simplify(v) for k, v in out.coeffs.items()})


def _antisym(f: KForm, n: int) -> np.ndarray:
    w = zeros(n, n)
    for (a, b), c in f.coeffs.items():
        w[a, b] = c
        w[b, a] = -c
    return w


def metric_and_signature(sol) -> tuple[np.ndarray, tuple]:
    """g(x, y) = F(Jx, y) in the real coframe w^k = e^{2k-1} + i e^{2k}."""
    p = sol.presentation
    g, J = realify(p)
    fe = real_form(p, sol.form.form())
    assert not g.differential(fe), "F is not closed on the real algebra"
    W = _antisym(fe, g.dim)
    G = matmul(J.matrix.T, W)
    jt = matmul(matmul(J.matrix.T, G), J.matrix)
    assert all(G[i, j] == G[j, i] for i in range(g.dim) for j in range(g.dim)), "g is not symmetric"
    assert all(jt[i, j] == G[i, j] for i in range(g.dim) for j in range(g.dim)), "g is not J-invariant"
    sig = signature_symmetric(G)
    if sig[2]:
        raise Degenerate(f"metric has a {sig[2]}-dimensional null space")
    return G, sig[:2]


def neutral_matrix(delta, a, r, s, u, v) -> np.ndarray:
    """The 8x8 matrix printed for the eps=0, nu=1 family, entry by entry."""
    d = delta
    rows = [
        [2 * u, 0, 0, -2 * v, 2 * a * d * r, -2 * a * d * s, 2 * s, -2 * r],
        [0, 2 * u, 2 * v, 0, 2 * a * d * s, 2 * a * d * r, 2 * r, 2 * s],
        [0, 2 * v, -2 * s, 0, 0, 0, 0, 0],
        [-2 * v, 0, 0, -2 * s, 0, 0, 0, 0],
        [2 * a * d * r, 2 * a * d * s, 0, 0, -2 * d * r, 0, 0, 0],
        [-2 * a * d * s, 2 * a * d * r, 0, 0, 0, -2 * d * r, 0, 0],
        [2 * s, 2 * r, 0, 0, 0, 0, 0, 0],
        [-2 * r, 2 * s, 0, 0, 0, 0, 0, 0],
    ]
    return matrix([[Fraction(x) for x in row] for row in rows])


# ---------------------------------------------------------------------------
# connection and curvature


def frame_brackets(p: CoframePresentation) -> np.ndarray:
    """br[a, b, :] = [X_a, X_b] from d theta(X, Y) = -theta([X, Y])."""
    m = 2 * p.n
    br = np.empty((m, m, m), dtype=object)
    br.fill(Fraction(0))
    for k, f in enumerate(p.d.gens):
        for (a, b), c in f.coeffs.items():
            br[a, b, k] = simplify(br[a, b, k] - c)
            br[b, a, k] = simplify(br[b, a, k] + c)
    return br


def frame_metric(p: CoframePresentation, form: Hermitian11Form) -> np.ndarray:
    """G[a, b] = g(X_a, X_b) = F(J X_a, X_b)."""
    n = p.n
    W = _antisym(form.form(), 2 * n)
    G = zeros(2 * n, 2 * n)
    for a in range(2 * n):
        ja = I if a < n else -I
        for b in range(2 * n):
            G[a, b] = simplify(ja * W[a, b])
    return G


def _label(a: int, n: int) -> str:
    return f"Z{a + 1}" if a < n else f"Z~{a - n + 1}"


def _index(label, n: int) -> int:
    """1-based label, negative = barred."""
    return label - 1 if label > 0 else n - label - 1


@dataclass
class ConnectionTable:
    n: int
    gamma: np.ndarray  # gamma[a, b, c]: nabla_{X_a} X_b = sum_c gamma[a,b,c] X_c
    metric: np.ndarray
    brackets: np.ndarray

    def nabla(self, u: int, v: int) -> list:
        """nabla_U V for 1-based labels (negative = barred)."""
        a, b = _index(u, self.n), _index(v, self.n)
        return [simplify(x) for x in self.gamma[a, b]]

    def render(self, u: int, v: int) -> str:
        vec = self.nabla(u, v)
        parts = [f"({fmt(c)}) {_label(k, self.n)}" for k, c in enumerate(vec) if c != 0]
        return " + ".join(parts) if parts else "0"

    def torsion(self) -> list:
        m = 2 * self.n
        bad = []
        for a in range(m):
            for b in range(m):
                t = [simplify(self.gamma[a, b, k] - self.gamma[b, a, k] - self.brackets[a, b, k]) for k in range(m)]
                if any(t):
                    bad.append((a, b, t))
        return bad

    def metric_defect(self) -> list:
        m = 2 * self.n
        G = self.metric
        bad = []
        for a in range(m):
            low = self.gamma[a].dot(G)  # low[b, c] = g(nabla_a X_b, X_c)
            for b in range(m):
                for c in range(m):
                    if simplify(low[b, c] + low[c, b]) != 0:
                        bad.append((a, b, c))
        return bad

    def j_defect(self) -> list:
        n, m = self.n, 2 * self.n
        return [(a, b, c) for a in range(m) for b in range(m) for c in range(m)
                if (b < n) != (c < n) and self.gamma[a, b, c] != 0]


def levi_civita(sol) -> ConnectionTable:
    """Koszul: 2 g(nabla_U V, W) = g([U,V],W) - g([V,W],U) + g([W,U],V)."""
    p = sol.presentation
    m = 2 * p.n
    G = frame_metric(p, sol.form)
    try:
        Ginv = inverse(G)
    except ZeroDivisionError:
        raise Degenerate("F is degenerate") from None
    br = frame_brackets(p)
    low = br.dot(G)  # low[a, b, w] = g([X_a, X_b], X_w)
    K = np.empty((m, m, m), dtype=object)
    half = Fraction(1, 2)
    for a in range(m):
        for b in range(m):
            for w in range(m):
                K[a, b, w] = (low[a, b, w] - low[b, w, a] + low[w, a, b]) * half
    gamma = K.dot(Ginv)
    for idx, v in np.ndenumerate(gamma):
        gamma[idx] = simplify(v)
    conn = ConnectionTable(p.n, gamma, G, br)
    assert not conn.torsion(), "connection has torsion"
    assert not conn.metric_defect(), "connection is not metric"
    assert not conn.j_defect(), "nabla J != 0"
    return conn


@dataclass
class Curvature:
    conn: ConnectionTable
    rvec: np.ndarray  # rvec[a, b, c, :] = R(X_a, X_b) X_c
    ricci: np.ndarray

    def __call__(self, u, v, w, t):
        """R(U, V, W, T) = g(R(U,V)W, T) on 1-based labels."""
        n = self.conn.n
        a, b, c, d = (_index(x, n) for x in (u, v, w, t))
        return simplify(self.rvec[a, b, c].dot(self.conn.metric[:, d]))

    def lowered(self) -> np.ndarray:
        return self.rvec.dot(self.conn.metric)

    @property
    def flat(self) -> bool:
        return not any(v != 0 for v in self.rvec.flat)

    @property
    def ricci_flat(self) -> bool:
        return not any(v != 0 for v in self.ricci.flat)


def curvature(sol, conn: ConnectionTable | None = None) -> Curvature:
    conn = conn or levi_civita(sol)
    gam, br = conn.gamma, conn.brackets
    m = 2 * conn.n
    rvec = np.empty((m, m, m, m), dtype=object)
    for a in range(m):
        for b in range(m):
            nb = br[a, b]
            for c in range(m):
                v = gam[b, c].dot(gam[a]) - gam[a, c].dot(gam[b]) - nb.dot(gam[:, c, :])
                rvec[a, b, c] = [simplify(x) for x in v]
    ric = zeros(m, m)
    for b in range(m):
        for c in range(m):
            ric[b, c] = simplify(sum((rvec[a, b, c, a] for a in range(m)), Fraction(0)))
    return Curvature(conn, rvec, ric)


def parallel_volume_check(sol, conn: ConnectionTable | None = None) -> bool:
    """nabla (w^1 ^ ... ^ w^n) = 0, with (nabla_U w^k)(X_b) = -w^k(nabla_U X_b)."""
    conn = conn or levi_civita(sol)
    n, m = conn.n, 2 * conn.n
    gens = [KForm.gen(m, k, cdim=n) for k in range(n)]
    for a in range(m):
        total = KForm.zero(m, n)
        for k in range(n):
            dk = KForm(m, {(b,): simplify(-conn.gamma[a, b, k]) for b in range(m) if conn.gamma[a, b, k] != 0}, n)
            w = KForm.scalar(m, Fraction(1), n)
            for j in range(n):
                w = wedge(w, dk if j == k else gens[j])
            total = total + w
        if total:
            return False
    return True


# ---------------------------------------------------------------------------
# complex symplectic


@dataclass
class SymplResult:
    closed_space: list  # Gaussian coefficient vectors over the w^{kl}, k<l
    labels: list
    nondegenerate: bool
    forced_zero: list
    example: KForm | None = None


def complex_symplectic_solve(p: CoframePresentation) -> SymplResult:
    """Closed (2,0)-forms and whether some power Omega^{n/2} survives."""
    n = p.n
    pairs = _pairs(n)
    labels = [f"w{k + 1}{l + 1}" for k, l in pairs]
    forms = [KForm.gen(2 * n, k, l, cdim=n) for k, l in pairs]
    rows: dict = {}
    cols = []
    for f in forms:
        df = p.differential(f)
        cols.append(df)
        for mono in df.coeffs:
            rows.setdefault(mono, len(rows))
    m = zeros(max(len(rows), 1), len(forms))
    for j, df in enumerate(cols):
        for mono, c in df.coeffs.items():
            m[rows[mono], j] = c
    ker = [list(r) for r in kernel(m, len(forms))]
    forced = [labels[j] for j in range(len(forms)) if all(v[j] == 0 for v in ker)]
    basis = [KForm(2 * n, {pairs[j]: c for j, c in enumerate(v) if c != 0}, n) for v in ker]
    if n % 2:
        return SymplResult(ker, labels, False, forced)
    poly = {}
    if basis:
        amb = 2 * n
        half = n // 2
        target = tuple(range(n))
        for combo in itertools.combinations_with_replacement(range(len(basis)), half):
            w = KForm.scalar(amb, Fraction(1), n)
            for i in combo:
                w = wedge(w, basis[i])
            c = w[target]
            if c != 0:
                poly[combo] = c
    example = None
    if poly:
        for t in itertools.product(range(-2, 3), repeat=len(basis)):
            om = KForm.zero(2 * n, n)
            for ti, b in zip(t, basis):
                if ti:
                    om = om + b * ti
            w = KForm.scalar(2 * n, Fraction(1), n)
            for _ in range(n // 2):
                w = wedge(w, om)
            if w:
                example = om
                break
    return SymplResult(ker, labels, example is not None, forced, example)


# ---------------------------------------------------------------------------
# report


def pk_report(p: CoframePresentation, algebra: str = "", params: dict | None = None,
              height: int = 4, seed: int = 0) -> dict:
    """Plain dict with the fields of the shipped JSON schema."""
    res = pk_solve(p, height, seed, params)
    out = {
        "algebra": algebra or (p.name or ""),
        "J_params": {k: fmt(v) if not isinstance(v, (int, str)) else v for k, v in (params or {}).items()},
        "pk_exists": res.exists,
        "kernel_dim": res.kernel_dim,
        "witness": None,
        "signature": None,
        "ricci_flat": None,
        "flat": None,
        "complex_symplectic": complex_symplectic_solve(p).nondegenerate,
    }
    if res.witness is not None:
        sol = res.witness
        curv = curvature(sol)
        out["witness"] = {lab: fmt(v) for lab, v in zip(res.labels, sol.form.real_vector()) if v != 0}
        out["signature"] = list(sol.signature)
        out["ricci_flat"] = curv.ricci_flat
        out["flat"] = curv.flat
    return out
