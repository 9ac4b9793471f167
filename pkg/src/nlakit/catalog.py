"""Named algebras and the parametrized families of 8-dimensional WnN and SnN
complex structures, with their normalising basis changes.

Tuples follow the order (eps, delta, nu, a, B).  Table rows are keyed by
(eps, nu, a, B) exactly as in the real-basis table of the classification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from .cpxstruct import CoframePresentation, RealJ, check_intertwiner, default_basis, realify
from .errors import InadmissibleParams, IrrationalRotation, RowMismatch
from .exactnum import Gauss, I, conj, gauss, im_part, re_part, simplify
from .forms import KForm
from .liealg import LieAlgebra, parse_algebra

# ---------------------------------------------------------------------------
# builtin real algebras

BUILTIN_TEXT = {
    "f1": "(0,0,0,12,23,14-35,0,0)",
    "f2": "(0,0,12,13,23,14+25,0,0)",
    "f3": "(0,0,0,12,13,23,15+26,0)",
    "f4^0": "(0,0,0,13,14,23,26,16+24)",
    "f4^1": "(0,0,12,13,14,23,26,16+24)",
    "f5^0": "(0,0,0,13,23,34,35,14+25)",
    "f5^1": "(0,0,0,13,23,34,1/2.12+35,14+25)",
    "f6": "(0,0,12,13,23,14+25,16+35,26-34)",
    "f7^0": "(0,0,0,13,23,14+25,2.14+34,15+24+35)",
    "f7^1": "(0,0,0,13,23,14+25,12+2.14+34,15+24+35)",
    "f8": "(0,0,12,13,23,14+25,2.14-26+34,15+16+24+35)",
    "g10^0": "(0,0,0,13,23,14+25,15+24,16+27)",
    "h19^-": "(0,0,0,12,23,14-35)",
    "h26^+": "(0,0,12,13,23,14+25)",
}

TABLE2_NAMES = ["f1", "f2", "f3", "f4^0", "f4^1", "f5^0", "f5^1", "f6", "f7^0", "f7^1", "f8"]

_cache: dict = {}


def builtin(name: str) -> LieAlgebra:
    key = normalize_name(name)
    if key not in BUILTIN_TEXT:
        raise KeyError(f"unknown algebra {name!r}")
    if key not in _cache:
        _cache[key] = parse_algebra(BUILTIN_TEXT[key], key)
    return _cache[key]


def normalize_name(name: str) -> str:
    s = name.strip().replace("_", "^").replace("{", "").replace("}", "")
    s = s.replace("mathfrak", "").replace("\\", "").replace(" ", "").lower()
    return s


# ---------------------------------------------------------------------------
# parameters


def _real(x, what):
    x = simplify(gauss(x) if isinstance(x, str) else x)
    if isinstance(x, Gauss):
        raise InadmissibleParams(f"{what} must be real, got {x}")
    return Fraction(x)


@dataclass(frozen=True)
class WnNParams:
    eps: int
    delta: int
    nu: int
    a: Fraction
    B: object

    def __post_init__(self):
        object.__setattr__(self, "a", _real(self.a, "a"))
        object.__setattr__(self, "B", simplify(gauss(self.B)))
        if self.eps not in (0, 1) or self.nu not in (0, 1):
            raise InadmissibleParams("eps and nu must lie in {0,1}")
        if self.delta not in (1, -1):
            raise InadmissibleParams("delta must be 1 or -1")
        self.branch()

    def branch(self) -> int:
        """Which of the four admissible (nu, a, B) branches holds (1..4)."""
        e, nu, a, B = self.eps, self.nu, self.a, self.B
        breal = not isinstance(B, Gauss)
        if nu == 0 and a == 0 and B == 0:
            return 1
        if nu == 0 and a == 0 and B == 1:
            return 2
        if a == 1 - nu:
            if not breal or B < 0:
                raise InadmissibleParams(f"branch a=1-nu needs real B >= 0, got B={B}")
            if e == 0 and B not in (0, 1):
                raise InadmissibleParams(f"branch a=1-nu with eps=0 needs B in {{0,1}}, got B={B}")
            return 3
        if nu == 1 and a > 0:
            if e == 0 and a != 1:
                raise InadmissibleParams(f"branch nu=1, a>0 with eps=0 needs a=1 (a in {{0,1}}), got a={a}")
            if e == 0 and im_part(B) < 0:
                raise InadmissibleParams(f"branch nu=1, a>0 with eps=0 needs Im B >= 0, got B={B}")
            return 4
        if nu == 0:
            raise InadmissibleParams(f"nu=0 allows (a,B) in {{(0,0),(0,1)}} or a=1 with B >= 0; got a={a}, B={B}")
        raise InadmissibleParams(f"nu=1 needs a=0 with B >= 0 or a>0; got a={a}, B={B}")

    def as_tuple(self):
        return (self.eps, self.delta, self.nu, self.a, self.B)

    def __str__(self):
        from .exactnum import fmt

        return f"wnn({self.eps},{self.delta},{self.nu},{fmt(self.a)},{fmt(self.B)})"


@dataclass(frozen=True)
class GenericExtParams:
    eps: int
    delta: int
    nu: int
    A: object
    B: object

    def __post_init__(self):
        object.__setattr__(self, "A", simplify(gauss(self.A)))
        object.__setattr__(self, "B", simplify(gauss(self.B)))
        if self.eps not in (0, 1) or self.nu not in (0, 1) or self.delta not in (1, -1):
            raise InadmissibleParams("eps, nu in {0,1} and delta = +-1")


@dataclass(frozen=True)
class SnNParams:
    family: str
    delta: int = 1
    eps: int = 0
    mu: int = 0
    nu: int = 0
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _real(self.a, "a"))
        object.__setattr__(self, "b", _real(self.b, "b"))
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        if fam not in ("I", "II"):
            raise InadmissibleParams("family must be I or II")
        if self.eps not in (0, 1) or self.nu not in (0, 1) or self.mu not in (0, 1):
            raise InadmissibleParams("eps, mu, nu must lie in {0,1}")
        if fam == "I":
            if self.delta not in (1, -1):
                raise InadmissibleParams("family I needs delta = +-1")
            if self.a == 0 and self.b == 0:
                raise InadmissibleParams("family I needs (a,b) != (0,0)")
            if self.a < 0:
                raise InadmissibleParams("family I needs a >= 0")
            if self.mu:
                raise InadmissibleParams("family I has no mu")
        else:
            if self.eps == 0 and self.mu == 0:
                raise InadmissibleParams("family II needs (eps,mu) != (0,0)")
            if self.mu * self.nu:
                raise InadmissibleParams("family II needs mu*nu = 0")


# ---------------------------------------------------------------------------
# presentations


def _pres(n, eqs, name=None, check=True):
    return CoframePresentation.from_terms(n, eqs, name, check)


def _wnn_eqs(eps, delta, nu, A, B):
    return [
        {},
        {"13": 1, "1~3": 1},
        {"1~1": I * eps, "1~2": I * delta, "2~1": -I * delta},
        {"12": A, "1~1": B, "23": nu, "1~3": 2 * delta * eps * nu, "2~3": nu},
    ]


def build_wnn(p) -> CoframePresentation:
    """Normal-form WnN structure equations for an admissible tuple."""
    if not isinstance(p, WnNParams):
        p = WnNParams(*p)
    return _pres(4, _wnn_eqs(p.eps, p.delta, p.nu, p.a, p.B), str(p))


def build_generic(p) -> CoframePresentation:
    """The extension with free complex A, B (the eta coframe)."""
    if not isinstance(p, GenericExtParams):
        p = GenericExtParams(*p)
    return _pres(4, _wnn_eqs(p.eps, p.delta, p.nu, p.A, p.B), "generic")


def build_tau(eps, delta, A: dict, B: dict, check=False) -> CoframePresentation:
    """dtau^4 with arbitrary A_ij (keys "12","13","23") and B_rs (keys "1~1", ...).

    d^2 = 0 is not imposed, so this is a probe for the integrability constraints.
    """
    eqs = _wnn_eqs(eps, delta, 0, 0, 0)
    eqs[3] = {**{k: v for k, v in A.items()}, **{k: v for k, v in B.items()}}
    return _pres(4, eqs, "tau", check)


def tau_constraints_hold(eps, delta, A: dict, B: dict) -> bool:
    """The closed-form conditions under which dtau^4 squares to zero."""
    A = {k: gauss(A.get(k, 0)) for k in ("12", "13", "23")}
    b = lambda k: gauss(B.get(k, 0))
    return (
        b("2~2") == 0 and b("3~1") == 0 and b("3~2") == 0 and b("3~3") == 0
        and b("2~3") == A["23"]
        and b("1~3") == A["13"] + 2 * delta * eps * A["23"]
        and b("2~1") == -b("1~2")
    )


def tau_to_eta(eps, delta, A: dict, B: dict):
    """Generic parameters and the tau -> eta change (rows: eta in terms of tau)."""
    a12, a13, a23 = (gauss(A.get(k, 0)) for k in ("12", "13", "23"))
    b11, b12 = gauss(B.get("1~1", 0)), gauss(B.get("1~2", 0))
    s = 1 if a23 == 0 else 1 / a23
    lam = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -a13 * s, I * delta * b12 * s, s]]
    nu = 0 if a23 == 0 else 1
    return GenericExtParams(eps, delta, nu, a12 * s, (b11 - eps * delta * b12) * s), lam


# ---------------------------------------------------------------------------
# reduction to the normal form


def _sqrt_q(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x < 0:
        raise IrrationalRotation(f"negative radicand {x}")
    n, d = sp.integer_nthroot(x.numerator, 2), sp.integer_nthroot(x.denominator, 2)
    if not (n[1] and d[1]):
        raise IrrationalRotation(f"sqrt({x}) is irrational")
    return Fraction(int(n[0]), int(d[0]))


def _abs(z) -> Fraction:
    return _sqrt_q(gauss(z).norm())


def _unit(z):
    """z / |z| as an exact Gaussian rational."""
    return simplify(gauss(z) / _abs(z))


def _gauss_sqrt(z):
    """A square root of z in Q(i), principal branch."""
    z = gauss(z)
    r = _abs(z)
    u = _sqrt_q((r + z.re) / 2)
    v = _sqrt_q((r - z.re) / 2)
    if z.im < 0:
        v = -v
    return simplify(Gauss(u, v))


def _diag(c1, c2, c3, c4):
    return [[c1, 0, 0, 0], [0, c2, 0, 0], [0, 0, c3, 0], [0, 0, 0, c4]]


def reduce_to_normal_form(p, verify: bool = True):
    """Normal-form tuple and Lambda with omega^i = sum_j Lambda[i][j] eta^j.

    Raises IrrationalRotation when a needed e^{i alpha} or square root leaves Q(i).
    """
    if not isinstance(p, GenericExtParams):
        p = GenericExtParams(*p)
    e, d, nu, A, B = p.eps, p.delta, p.nu, gauss(p.A), gauss(p.B)
    one = Fraction(1)
    if nu == 0:
        if A == 0 and B == 0:
            lam, out = _diag(one, one, one, one), (e, d, 0, 0, 0)
        elif A == 0:
            lam, out = _diag(one, one, one, 1 / B), (e, d, 0, 0, 1)
        else:
            ua = gauss(_unit(A))
            ub = gauss(_unit(B)) if B != 0 else ua
            c = _gauss_sqrt(ua / ub)  # e^{-i(beta-alpha)/2}
            b = _abs(B) / _abs(A)
            lam = _diag(c, c, one, conj(ub) / _abs(A))
            if e == 0 and b != 0:
                t = 1 / b
                lam = [[lam[i][j] * (t if i > 0 else 1) for j in range(4)] for i in range(4)]
                b = one
            out = (e, d, 0, 1, b)
    else:
        if A == 0:
            if B == 0:
                lam, out = _diag(one, one, one, one), (e, d, 1, 0, 0)
            elif e == 0:
                u = conj(gauss(_unit(B)))  # e^{-i beta}
                b = _abs(B)
                rb = _sqrt_q(b)
                lam, out = _diag(u, u / rb, 1 / rb, u / b), (0, d, 1, 0, 1)
            else:
                u = conj(gauss(_unit(B)))
                lam, out = _diag(u, u, one, u), (1, d, 1, 0, _abs(B))
        else:
            c = gauss(_unit(A))  # e^{i alpha}
            a = _abs(A)
            if e == 0:
                sigma = 1 if im_part(B * c) >= 0 else -1
                lam = _diag(sigma * c, c / a, Fraction(sigma) / a, sigma * c / (a * a))
                out = (0, d, 1, 1, sigma * c * B / (a * a))
            else:
                lam, out = _diag(c, c, one, c), (1, d, 1, a, c * B)
    lam = [[simplify(gauss(x)) for x in row] for row in lam]
    q = WnNParams(*out)
    if verify:
        ok, res = check_intertwiner(build_generic(p), build_wnn(q), lam)
        assert ok, f"reduction does not intertwine: {res}"
    return q, lam


# ---------------------------------------------------------------------------
# real table: basis changes omega^k = sum_j Q[k][j] e^j


def _row(**kw):
    """_row(e1=1, e2=I) -> length-8 row."""
    r = [Fraction(0)] * 8
    for k, v in kw.items():
        r[int(k[1:]) - 1] = v
    return r


def _lin(*pairs):
    r = [Fraction(0)] * 8
    for j, v in pairs:
        r[j - 1] = r[j - 1] + v
    return [simplify(gauss(x)) if not isinstance(x, sp.Basic) else x for x in r]


def table_row(p: WnNParams):
    """(target name, basis rows) for the tuple's row of the real table."""
    e, d, nu, a, B = p.as_tuple()
    i = I
    if nu == 0 and a == 0:
        if B == 0 and e == 0:
            return "f1", [_lin((1, 1), (3, -i)), _lin((4, 1), (5, i)),
                          _lin((2, Fraction(1, 2)), (6, 2 * i * d)), _lin((7, 1), (8, -i))]
        if B == 0:
            s2 = sp.sqrt(2)
            return "f2", [[s2 / 2, sp.I * s2 / 2, 0, 0, 0, 0, 0, 0],
                          [0, 0, 0, s2, sp.I * s2, 0, 0, 0],
                          _lin((3, 1), (6, 2 * i * d)), _lin((7, 1), (8, -i))]
        if e == 0:
            return "f3", [_lin((1, 1), (2, i)), _lin((5, 4), (6, 4 * i)),
                          _lin((3, 2), (7, 8 * i * d)), _lin((8, 2), (4, -2 * i))]
        return "f2", [_lin((1, 1), (2, i)), _lin((4, 4), (5, 4 * i)),
                      _lin((3, 2), (6, 8 * i * d)), _lin((7, 2), (3, -2 * i), (8, 2 * i))]
    if nu == 0:  # a = 1
        return f"f4^{e}", [_lin((1, 1), (2, i)),
                          _lin((4, 4), (6, 4 * i), (2, 2 * i * B * (1 - e))),
                          _lin((3, 2), (5, 8 * i * d), (7, 8 * i * d)),
                          _lin((5, 4), (7, -4), (8, 4 * i), (3, -2 * i * e * B))]
    if a == 0:
        if e == 0:
            return f"f5^{B}", [_lin((1, 1), (2, i)), _lin((4, 2), (5, 2 * i)),
                               _lin((3, 1), (8, 4 * i * d)), _lin((6, -4), (7, -4 * i))]
        return "f6", [_lin((1, 1), (2, i)), _lin((4, 4), (5, 4 * i)), _lin((3, 2), (6, 8 * i * d)),
                      _lin((8, 16), (7, -16 * i), (4, 4 * d), (5, 4 * i * d), (3, -2 * i * B))]
    if e == 0:
        b1, b2 = re_part(B), im_part(B)
        if b2 == 0:
            return "f7^0", [_lin((1, -1), (2, -i)), _lin((4, -1), (1, 2 * b1), (5, -i)),
                            _lin((3, Fraction(1, 2)), (6, 2 * i * d)),
                            _lin((7, 1), (6, -1), (4, 2 * b1), (1, -4 * b1 * b1), (8, i))]
        return "f7^1", [_lin((1, -2 * b2), (2, -2 * b2 * i)),
                        _lin((4, -4 * b2 * b2), (1, 4 * b2 * b1), (5, -4 * b2 * b2 * i)),
                        _lin((3, b2), (6, 16 * i * d * b2 ** 3)),
                        _lin((7, 8 * b2 ** 3), (6, -8 * b2 ** 3), (4, 8 * b2 * b2 * b1),
                             (1, -8 * b2 * b1 * b1), (8, 8 * i * b2 ** 3))]
    return "f8", [_lin((1, -a / 4), (2, -i * a / 4)),
                  _lin((4, -a ** 3 / 16), (5, -i * a ** 3 / 16)),
                  _lin((3, a * a / 8), (6, i * d * a ** 4 / 32)),
                  _lin((7, a ** 5 / 64), (6, -a ** 5 / 64), (8, i * a ** 5 / 64),
                       (3, -i * a * a * B / 8), (4, -d * a ** 3 / 16), (5, -i * d * a ** 3 / 16))]


def realify_table1(p) -> tuple[LieAlgebra, RealJ, str]:
    """Realify through the table's basis change and demand the named algebra verbatim."""
    if not isinstance(p, WnNParams):
        p = WnNParams(*p)
    name, rows = table_row(p)
    g, J = realify(build_wnn(p), rows, name)
    target = builtin(name)
    if g != target:
        raise RowMismatch(f"{p}: got {g.render()}, table names {name} = {target.render()}")
    return g, J, name


# ---------------------------------------------------------------------------
# SnN families


def build_snn(p) -> CoframePresentation:
    if not isinstance(p, SnNParams):
        p = SnNParams(*p)
    i = I
    if p.family == "I":
        e, d, nu, a, b = p.eps, p.delta, p.nu, p.a, p.b
        eqs = [
            {},
            {"1~1": e},
            {"14": 1, "1~4": 1, "2~1": a, "1~2": i * d * e * b},
            {"1~1": i * nu, "2~2": b, "1~3": i * d, "3~1": -i * d},
        ]
        name = f"snn(I,{d},{e},{nu},{a},{b})"
    else:
        e, mu, nu, a, b = p.eps, p.mu, p.nu, p.a, p.b
        eqs = [
            {},
            {"14": 1, "1~4": 1},
            {"1~1": a, "12": e, "1~2": e, "2~1": -e, "24": i * mu, "2~4": i * mu},
            {"1~1": i * nu, "2~2": -mu, "1~2": i * b, "2~1": -i * b, "1~3": i, "3~1": -i},
        ]
        name = f"snn(II,{e},{mu},{nu},{a},{b})"
    return _pres(4, eqs, name)


def build_snn6_presentation(eps, delta) -> CoframePresentation:
    return _pres(3, [{}, {"13": 1, "1~3": 1}, {"1~1": I * eps, "1~2": I * delta, "2~1": -I * delta}],
                 f"snn6({eps},{delta})")


def build_snn6(eps, delta) -> tuple[LieAlgebra, RealJ]:
    """The 6-dimensional SnN family, realified in the default coframe."""
    if eps not in (0, 1) or delta not in (1, -1):
        raise InadmissibleParams("eps in {0,1}, delta = +-1")
    return realify(build_snn6_presentation(eps, delta), default_basis(3), f"snn6({eps},{delta})")


# ---------------------------------------------------------------------------
# references

_CALL = re.compile(r"^\s*(wnn|snn|generic|snn6)\s*\((.*)\)\s*$", re.I)


def _args(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def resolve(ref: str):
    """Algebra (LieAlgebra) or complex structure (CoframePresentation) from text.

    Builtin names, "wnn(e,d,n,a,B)", "generic(e,d,n,A,B)", "snn(I,d,e,n,a,b)",
    "snn(II,e,m,n,a,b)", "snn6(e,d)", or the (0,0,12,...) shorthand.
    """
    m = _CALL.match(ref)
    if m:
        kind, args = m[1].lower(), _args(m[2])
        if kind == "wnn":
            if len(args) != 5:
                raise InadmissibleParams("wnn takes (eps,delta,nu,a,B)")
            e, d, n = (int(x) for x in args[:3])
            return build_wnn(WnNParams(e, d, n, gauss(args[3]), gauss(args[4])))
        if kind == "generic":
            e, d, n = (int(x) for x in args[:3])
            return build_generic(GenericExtParams(e, d, n, gauss(args[3]), gauss(args[4])))
        if kind == "snn6":
            return build_snn6_presentation(int(args[0]), int(args[1]))
        fam = args[0].upper()
        if fam == "I":
            d, e, n = (int(x) for x in args[1:4])
            return build_snn(SnNParams("I", delta=d, eps=e, nu=n, a=gauss(args[4]), b=gauss(args[5])))
        if fam == "II":
            e, mu, n = (int(x) for x in args[1:4])
            return build_snn(SnNParams("II", eps=e, mu=mu, nu=n, a=gauss(args[4]), b=gauss(args[5])))
        raise InadmissibleParams(f"unknown SnN family {args[0]!r}")
    key = normalize_name(ref)
    if key in BUILTIN_TEXT:
        return builtin(key)
    return parse_algebra(ref)


def structures_by_algebra() -> dict:
    """Table algebra name -> sample WnN tuples realising it."""
    samples = {}
    for p in table_samples():
        name, _ = table_row(p)
        samples.setdefault(name, []).append(p)
    return samples


def table_samples():
    """One or more admissible tuples per table row, both deltas."""
    out = []
    for d in (1, -1):
        out += [WnNParams(0, d, 0, 0, 0), WnNParams(1, d, 0, 0, 0), WnNParams(0, d, 0, 0, 1),
                WnNParams(1, d, 0, 0, 1), WnNParams(0, d, 0, 1, 0), WnNParams(0, d, 0, 1, 1),
                WnNParams(1, d, 0, 1, 0), WnNParams(1, d, 0, 1, Fraction(3, 2)),
                WnNParams(0, d, 1, 0, 0), WnNParams(0, d, 1, 0, 1), WnNParams(1, d, 1, 0, 0),
                WnNParams(1, d, 1, 0, 2), WnNParams(0, d, 1, 1, 0), WnNParams(0, d, 1, 1, -3),
                WnNParams(0, d, 1, 1, Gauss(1, 1)), WnNParams(0, d, 1, 1, Gauss(0, 2)),
                WnNParams(1, d, 1, 1, 0), WnNParams(1, d, 1, 2, Gauss(1, -3))]
    return out


# ---------------------------------------------------------------------------
# g10^0 and the family II structure


def _sym_w(f: KForm, n: int) -> sp.Matrix:
    m = sp.zeros(n, n)
    for (a, b), c in f.coeffs.items():
        c = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
        m[a, b], m[b, a] = c, -c
    return m


def is_isomorphism(src: LieAlgebra, dst: LieAlgebra, P) -> bool:
    """f^k = sum_j P[k,j] e^j with d_dst f^k computed in src: the dual map commutes with d."""
    n = src.dim
    P = sp.Matrix(P)
    if P.shape != (n, n) or P.det() == 0:
        return False
    ws = [_sym_w(f, n) for f in src.d_gens]
    for k in range(n):
        lhs = sp.zeros(n, n)
        for j in range(n):
            if P[k, j] != 0:
                lhs += P[k, j] * ws[j]
        rhs = P.T * _sym_w(dst.d_gens[k], n) * P
        if sp.simplify(lhs - rhs) != sp.zeros(n, n):
            return False
    return True


def g10_structure():
    """(g, J, P): family II with eps=1 realified in the default coframe, and a
    real isomorphism onto g10^0 given by f = P e.  P needs sqrt(3); there is
    no rational one of this shape, so J on g10^0 itself is not rational.
    """
    g, J = realify(build_snn(SnNParams("II", eps=1)), default_basis(4), "snn(II,1,0,0,0,0)")
    r3 = sp.sqrt(3)
    P = sp.zeros(8, 8)
    for k, j, v in [(0, 0, r3), (1, 1, 1), (2, 6, 1), (3, 2, r3 / 2), (4, 3, sp.Rational(1, 2)),
                    (5, 4, sp.Rational(1, 2)), (6, 5, r3 / 2), (7, 7, r3 / 4)]:
        P[k, j] = v
    if not is_isomorphism(g, builtin("g10^0"), P):
        raise RowMismatch("family II structure is not carried onto g10^0")
    return g, J, P
