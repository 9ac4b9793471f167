"""Isomorphism invariants: Betti numbers, central-series types, n_d and n_I."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .errors import OracleDisagreement
from .exactnum import Subspace, matrix, rank, rref
from .forms import KForm
from .liealg import LieAlgebra, ascending_type, descending_type

ND_PRIMES = (7, 11, 13)
CASIMIR_PRIMES = [p for p in range(2, 98) if all(p % q for q in range(2, p))]


# ---------------------------------------------------------------------------
# cohomology


def d_rank(g: LieAlgebra, k: int) -> int:
    """rank of d : Lambda^k -> Lambda^{k+1}."""
    if k < 0 or k >= g.dim:
        return 0
    return rank(matrix(g.d.matrix(k)))


def betti(g: LieAlgebra, k: int) -> int:
    n = g.dim
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} outside 0..{n}")
    return comb(n, k) - d_rank(g, k) - d_rank(g, k - 1)


def betti_numbers(g: LieAlgebra, upto: int | None = None) -> tuple:
    upto = g.dim if upto is None else upto
    ranks = [d_rank(g, k) for k in range(upto + 1)]
    return tuple(comb(g.dim, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(upto + 1))


# ---------------------------------------------------------------------------
# n_d


def exact_basis(g: LieAlgebra) -> list[int]:
    """Indices k such that the de^k form a basis of d(Lambda^1)."""
    vecs = [f.vector(2) for f in g.d_gens]
    if not any(any(v != 0 for v in row) for row in vecs):
        return []
    # pivots of the matrix whose columns are the de^k
    cols = matrix([[vecs[k][r] for k in range(g.dim)] for r in range(len(vecs[0]))])
    _, piv = rref(cols)
    return piv


def _pfaffian_terms(n: int):
    """For each 4-subset a<b<c<d of 0..n-1, the three index pairs of the 2x2 Pfaffian."""
    pairs = {p: i for i, p in enumerate(itertools.combinations(range(n), 2))}
    out = []
    for a, b, c, d in itertools.combinations(range(n), 4):
        out.append(((pairs[a, b], pairs[c, d], 1), (pairs[a, c], pairs[b, d], -1), (pairs[a, d], pairs[b, c], 1)))
    return out


def _decomposable_rows(alpha: np.ndarray, terms, p: int | None) -> np.ndarray:
    """Indices of rows of alpha (2-form coordinates) whose square vanishes (mod p if given)."""
    idx = np.arange(alpha.shape[0])
    for t in terms:
        if idx.size == 0:
            break
        a = alpha[idx]
        s = np.zeros(idx.size, dtype=np.int64)
        for i, j, sg in t:
            s += sg * a[:, i] * a[:, j]
        if p is not None:
            s %= p
        idx = idx[s == 0]
    return idx


def _rank_mod_p(rows: np.ndarray, p: int) -> int:
    a = rows.copy() % p
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        f = a[:, c].copy()
        f[r] = 0
        a = (a - np.outer(f, a[r])) % p
        r += 1
    return r


def _integer_rows(g: LieAlgebra, basis: list[int]) -> np.ndarray:
    """de^k coordinate vectors scaled to integers (scaling keeps decomposability)."""
    rows = []
    for k in basis:
        v = g.d_gens[k].vector(2)
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // np.gcd(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in v])
    return np.array(rows, dtype=np.int64)


def nd_lower_bound(g: LieAlgebra, height: int = 4, chunk: int = 200000):
    """Span dimension of decomposable exact 2-forms found among integer points.

    Points are t in [-height, height]^m in the basis {de^k : k in basis};
    each hit alpha = d(sum t_i e^k_i) is a certified witness.
    """
    basis = exact_basis(g)
    m = len(basis)
    if m == 0:
        return 0, []
    E = _integer_rows(g, basis)
    terms = _pfaffian_terms(g.dim)
    rng = np.arange(-height, height + 1, dtype=np.int64)
    found = []
    span = Subspace.zero(m)
    grid = itertools.product(rng, repeat=m)
    while True:
        block = np.array(list(itertools.islice(grid, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        nz = block != 0
        first = np.argmax(nz, axis=1)
        keep = nz.any(axis=1) & (block[np.arange(block.shape[0]), first] > 0)
        block = block[keep]
        alpha = block @ E
        hits = block[_decomposable_rows(alpha, terms, None)]
        for t in hits:
            v = [Fraction(int(x)) for x in t]
            if not span.contains(v):
                span = span + Subspace.from_rows(m, [v])
                found.append(v)
                if span.dim == m:
                    break
        if span.dim == m:
            break
    witnesses = []
    for t in found:
        gamma = KForm(g.dim, {(k,): c for k, c in zip(basis, t)})
        witnesses.append(g.d(gamma))
    return span.dim, witnesses


def nd_mod_p(g: LieAlgebra, p: int, chunk: int = 100000) -> int:
    """Span dimension of the decomposable locus of d(Lambda^1) over F_p, by enumeration."""
    basis = exact_basis(g)
    m = len(basis)
    if m == 0:
        return 0
    rows = []
    for k in basis:
        v = g.d_gens[k].vector(2)
        rows.append([int(Fraction(x).numerator * pow(Fraction(x).denominator, -1, p)) % p for x in v])
    E = np.array(rows, dtype=np.int64)
    if _rank_mod_p(E, p) < m:
        raise OracleDisagreement("bad reduction of d(Lambda^1)", {"p": p, "algebra": g.render()})
    terms = _pfaffian_terms(g.dim)
    pts = []
    # the decomposable locus is a cone, so projective representatives suffice
    for lead in range(m):
        tail = np.array(list(itertools.product(range(p), repeat=m - 1 - lead)), dtype=np.int64)
        tail = tail.reshape(p ** (m - 1 - lead), m - 1 - lead)
        block = np.zeros((tail.shape[0], m), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        for start in range(0, block.shape[0], chunk):
            b = block[start:start + chunk]
            alpha = b @ E % p
            pts.append(b[_decomposable_rows(alpha, terms, p)])
    return _rank_mod_p(np.vstack(pts), p)


def decomposable_generator_count(g: LieAlgebra) -> int:
    """How many of the presented de^k are themselves decomposable (basis dependent)."""
    return sum(1 for f in g.d_gens if f and not (f ^ f))


@dataclass
class NdResult:
    value: int
    witnesses: list
    lower_bound: int
    mod_p: dict
    confidence: str

    def __int__(self):
        return self.value


def nd_invariant(g: LieAlgebra, height: int = 4, primes=ND_PRIMES, strict: bool = True) -> NdResult:
    """n_d = dim span of decomposable forms in d(Lambda^1).

    Two sides: certified rational witnesses (a lower bound) and full F_p
    enumerations.  Disagreement raises OracleDisagreement when ``strict``;
    otherwise the rational value is returned with confidence "disputed".
    """
    lb, wit = nd_lower_bound(g, height)
    for w in wit:
        assert not (w ^ w), "witness is not decomposable"
    modp = {p: nd_mod_p(g, p) for p in primes}
    data = {"algebra": g.name or g.render(), "lower_bound": lb, "mod_p": modp, "height": height}
    vals = set(modp.values())
    problem = None
    if len(vals) > 1:
        problem = "n_d oracles disagree across primes"
    elif vals and min(vals) < lb:
        problem = "F_p span below the rational lower bound"
    elif vals and min(vals) != lb:
        problem = "rational search stays below the F_p value"
    if problem:
        if strict:
            raise OracleDisagreement(problem, data)
        return NdResult(lb, wit, lb, modp, f"disputed: {problem}")
    conf = "exact-lower-bound + finite-field-confirmed" if modp else "exact-lower-bound"
    return NdResult(lb, wit, lb, modp, conf)


# ---------------------------------------------------------------------------
# Casimir count


def casimir_matrix(g: LieAlgebra, x) -> np.ndarray:
    """C[k, i] = sum_j c^j_ki x_j, with c^j_ki the coordinates of [e_k, e_i]."""
    t = g.bracket_table()
    n = g.dim
    out = np.empty((n, n), dtype=object)
    for k in range(n):
        for i in range(n):
            out[k, i] = sum((t[k, i, j] * x[j] for j in range(n)), Fraction(0))
    return out


def casimir_points(n: int, draws: int = 5, seed: int = 0) -> list:
    rnd = random.Random(seed)
    return [[Fraction(rnd.choice(CASIMIR_PRIMES)) for _ in range(n)] for _ in range(draws)]


def casimir_count(g: LieAlgebra, draws: int = 5, seed: int = 0):
    """n_I = dim - generic rank of C, the rank taken as a max over seeded points."""
    best, best_pt = -1, None
    for pt in casimir_points(g.dim, draws, seed):
        r = rank(casimir_matrix(g, pt))
        if r > best:
            best, best_pt = r, pt
    return g.dim - best, casimir_matrix(g, best_pt)


# ---------------------------------------------------------------------------
# fingerprints

FIELDS = ("ascending", "descending", "betti", "n_d", "n_I")


@dataclass
class Fingerprint:
    ascending: tuple
    descending: tuple
    betti: tuple
    n_d: int
    n_I: int
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("extra")
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def fingerprint(g: LieAlgebra, height: int = 4, seed: int = 0) -> Fingerprint:
    nd = nd_invariant(g, height, strict=False)
    nI, _ = casimir_count(g, seed=seed)
    b = betti_numbers(g, 4)[1:]
    return Fingerprint(ascending_type(g), descending_type(g), b, nd.value, nI,
                       extra={"nd": nd})


def distinguish(a, b):
    """First fingerprint field that differs, as (field, value_a, value_b)."""
    fa = a if isinstance(a, Fingerprint) else fingerprint(a)
    fb = b if isinstance(b, Fingerprint) else fingerprint(b)
    for name in FIELDS:
        va, vb = getattr(fa, name), getattr(fb, name)
        if va != vb:
            if name == "betti":
                k = next(i for i in range(4) if va[i] != vb[i])
                return (f"betti b{k + 1}", va[k], vb[k])
            return (name, va, vb)
    return "indistinguishable by fingerprint"
