"""Sparse exterior forms, the Chevalley-Eilenberg differential, and bidegrees.

A ``KForm`` lives in the exterior algebra of an ``ambient``-dimensional
space with generators numbered 0..ambient-1.  For complexified duals of a
complex structure the first ``cdim`` generators are the (1,0)-forms
w^1..w^n and the next ``cdim`` are their conjugates; this ordering is
what ``cdim`` records.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exactnum import Gauss, conj, fmt, simplify


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the permutation sorting a+b (both increasing, disjoint)."""
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return -1 if inv & 1 else 1


def wedge_monomials(a: tuple, b: tuple):
    """(sign, monomial) of e^a ^ e^b, or (0, None) if they share an index."""
    if set(a) & set(b):
        return 0, None
    return _merge_sign(a, b), tuple(sorted(a + b))


def sort_sign(idx) -> tuple[int, tuple | None]:
    """Sign and sorted tuple for an arbitrary index sequence; 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class KForm:
    """Homogeneous or mixed-degree exterior form with exact coefficients."""

    __slots__ = ("ambient", "coeffs", "cdim")

    def __init__(self, ambient: int, coeffs=None, cdim: int | None = None):
        self.ambient = ambient
        self.cdim = cdim
        out = {}
        for mono, c in (coeffs or {}).items():
            mono = tuple(mono)
            if mono != tuple(sorted(mono)) or len(set(mono)) != len(mono):
                sign, s = sort_sign(mono)
                if sign == 0:
                    continue
                mono, c = s, sign * c
            if mono and (mono[0] < 0 or mono[-1] >= ambient):
                raise ValueError(f"index out of range in {mono} for ambient {ambient}")
            c = out.get(mono, 0) + c
            if c == 0:
                out.pop(mono, None)
            else:
                out[mono] = simplify(c)
        self.coeffs = out

    # construction helpers

    @classmethod
    def zero(cls, ambient: int, cdim: int | None = None) -> "KForm":
        return cls(ambient, {}, cdim)

    @classmethod
    def gen(cls, ambient: int, *idx, coeff=1, cdim: int | None = None) -> "KForm":
        """coeff * e^{idx[0]} ^ e^{idx[1]} ^ ... (0-based indices)."""
        return cls(ambient, {tuple(idx): Fraction(coeff) if isinstance(coeff, int) else coeff}, cdim)

    @classmethod
    def scalar(cls, ambient: int, c, cdim: int | None = None) -> "KForm":
        return cls(ambient, {(): c}, cdim)

    # arithmetic

    def _like(self, coeffs) -> "KForm":
        return KForm(self.ambient, coeffs, self.cdim)

    def _check(self, other: "KForm"):
        if self.ambient != other.ambient:
            raise ValueError(f"forms live in different ambients ({self.ambient} vs {other.ambient})")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return KForm(self.ambient, out, self.cdim if self.cdim is not None else other.cdim)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return self._like({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, s) -> "KForm":
        if isinstance(s, KForm):
            return self ^ s
        return self._like({m: c * s for m, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.ambient == other.ambient and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ambient, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(sorted(self.coeffs.items()))

    def __getitem__(self, mono):
        sign, s = sort_sign(mono)
        if sign == 0:
            return Fraction(0)
        return sign * self.coeffs.get(s, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degrees(self) -> set[int]:
        return {len(m) for m in self.coeffs}

    @property
    def degree(self) -> int:
        ds = self.degrees
        if len(ds) > 1:
            raise ValueError("mixed-degree form has no single degree")
        return ds.pop() if ds else 0

    def part(self, k: int) -> "KForm":
        return self._like({m: c for m, c in self.coeffs.items() if len(m) == k})

    # complex structure bookkeeping

    def bidegree_of(self, mono: tuple) -> tuple[int, int]:
        if self.cdim is None:
            raise ValueError("form has no complex coframe attached")
        p = sum(1 for i in mono if i < self.cdim)
        return p, len(mono) - p

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.bidegree_of(m) for m in self.coeffs}

    def component(self, p: int, q: int) -> "KForm":
        return self._like({m: c for m, c in self.coeffs.items() if self.bidegree_of(m) == (p, q)})

    def conjugate(self) -> "KForm":
        """Complex conjugate: w^k <-> w^{k bar}, coefficients conjugated."""
        if self.cdim is None:
            return self._like({m: conj(c) for m, c in self.coeffs.items()})
        n = self.cdim
        swap = lambda i: i + n if i < n else i - n  # noqa: E731
        return self._like({tuple(swap(i) for i in m): conj(c) for m, c in self.coeffs.items()})

    def is_real(self) -> bool:
        return self == self.conjugate()

    def vector(self, k: int) -> list:
        """Coefficient vector on the lexicographic basis of degree-k monomials."""
        return [self.coeffs.get(m, Fraction(0)) for m in combinations(range(self.ambient), k)]

    @classmethod
    def from_vector(cls, ambient: int, k: int, vec, cdim: int | None = None) -> "KForm":
        return cls(ambient, dict(zip(combinations(range(ambient), k), vec)), cdim)

    def render(self, style: str = "plain", letter: str | None = None) -> str:
        return render(self, style, letter)

    def __repr__(self):
        return f"KForm({render(self)})"

    __str__ = lambda self: render(self)  # noqa: E731


def wedge(a: KForm, b: KForm) -> KForm:
    a._check(b)
    out: dict = {}
    for ma, ca in a.coeffs.items():
        sa = set(ma)
        for mb, cb in b.coeffs.items():
            if sa.intersection(mb):
                continue
            sign = _merge_sign(ma, mb)
            m = tuple(sorted(ma + mb))
            v = ca * cb
            out[m] = out.get(m, 0) + (v if sign > 0 else -v)
    return KForm(a.ambient, out, a.cdim if a.cdim is not None else b.cdim)


def wedge_all(forms, ambient: int, cdim: int | None = None) -> KForm:
    out = KForm.scalar(ambient, Fraction(1), cdim)
    for f in forms:
        out = wedge(out, f)
    return out


def power(a: KForm, k: int) -> KForm:
    out = KForm.scalar(a.ambient, Fraction(1), a.cdim)
    for _ in range(k):
        out = wedge(out, a)
    return out


# ---------------------------------------------------------------------------
# differentials


class Differential:
    """Degree +1 antiderivation determined by its values on the generators.

    ``gens[k]`` is d of the k-th generator (a 2-form).  Values on monomials
    are cached; the object is otherwise immutable.
    """

    def __init__(self, gens: list[KForm], cdim: int | None = None):
        self.gens = list(gens)
        self.ambient = len(self.gens)
        self.cdim = cdim
        self._cache: dict = {}

    def of_monomial(self, mono: tuple) -> dict:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        out: dict = {}
        for pos, i in enumerate(mono):
            sign0 = -1 if pos & 1 else 1
            before = mono[:pos]
            after = mono[pos + 1:]
            rest = before + after
            rest_set = set(rest)
            for m2, c in self.gens[i].coeffs.items():
                if rest_set.intersection(m2):
                    continue
                # before ^ m2 ^ after
                s1 = _merge_sign(before, m2)
                left = tuple(sorted(before + m2))
                s2 = _merge_sign(left, after)
                m = tuple(sorted(left + after))
                v = c if sign0 * s1 * s2 > 0 else -c
                out[m] = out.get(m, 0) + v
        out = {m: c for m, c in out.items() if c != 0}
        self._cache[mono] = out
        return out

    def __call__(self, a: KForm) -> KForm:
        if a.ambient != self.ambient:
            raise ValueError(f"form ambient {a.ambient} != {self.ambient}")
        out: dict = {}
        for m, c in a.coeffs.items():
            for m2, c2 in self.of_monomial(m).items():
                out[m2] = out.get(m2, 0) + c * c2
        return KForm(self.ambient, out, a.cdim if a.cdim is not None else self.cdim)

    def matrix(self, k: int):
        """Matrix of d: Lambda^k -> Lambda^{k+1} on lexicographic monomial bases."""
        src = list(combinations(range(self.ambient), k))
        dst = {m: i for i, m in enumerate(combinations(range(self.ambient), k + 1))}
        rows = [[Fraction(0)] * len(src) for _ in dst]
        for j, m in enumerate(src):
            for m2, c in self.of_monomial(m).items():
                rows[dst[m2]][j] = c
        return rows

    def residuals(self) -> list[KForm]:
        """d(d e^k) for every generator."""
        return [self(g) for g in self.gens]


def ce_differential(g, a: KForm) -> KForm:
    """Chevalley-Eilenberg differential of ``a`` on the algebra (or coframe) ``g``."""
    return g.differential(a)


def del_delbar(p, a: KForm) -> tuple[KForm, KForm]:
    """Split d a = (del a) + (delbar a) by bidegree for an integrable coframe ``p``."""
    p.check_integrable()
    da = p.differential(a)
    dl = KForm.zero(da.ambient, p.n)
    db = KForm.zero(da.ambient, p.n)
    dl_c, db_c = {}, {}
    for m, c in a.coeffs.items():
        pa, _ = a.bidegree_of(m) if a.cdim is not None else KForm(a.ambient, {}, p.n).bidegree_of(m)
        for m2, c2 in p.d.of_monomial(m).items():
            p2 = sum(1 for i in m2 if i < p.n)
            tgt = dl_c if p2 == pa + 1 else db_c
            tgt[m2] = tgt.get(m2, 0) + c * c2
    dl = KForm(da.ambient, dl_c, p.n)
    db = KForm(da.ambient, db_c, p.n)
    return dl, db


def substitute(a: KForm, images: list[KForm]) -> KForm:
    """Image of ``a`` under the algebra map sending generator k to images[k]."""
    if len(images) != a.ambient:
        raise ValueError("need one image per generator")
    target = images[0].ambient if images else 0
    cdim = images[0].cdim if images else None
    out = KForm.zero(target, cdim)
    cache: dict = {}
    for m, c in a.coeffs.items():
        prod = KForm.scalar(target, Fraction(1), cdim)
        for k, i in enumerate(m):
            key = m[: k + 1]
            hit = cache.get(key)
            if hit is None:
                hit = wedge(prod, images[i])
                cache[key] = hit
            prod = hit
        out = out + prod * c
    return out


# ---------------------------------------------------------------------------
# text


def _plain_index(i: int, cdim: int | None) -> str:
    if cdim is None:
        return str(i + 1)
    return str(i + 1) if i < cdim else f"~{i - cdim + 1}"


def _tex_index(i: int, cdim: int | None) -> str:
    if cdim is None:
        return str(i + 1)
    return str(i + 1) if i < cdim else f"\\bar{{{i - cdim + 1}}}"


def render(a: KForm, style: str = "plain", letter: str | None = None) -> str:
    """Text of a form.

    plain: ``2*e13 - e24`` for real forms, ``w12 + (1+i)*w1~1`` for complex
    coframes (``~`` marks a barred index).  tex: ``2\\,e^{13}`` and
    ``\\omega^{1\\bar{1}}``.
    """
    if not a.coeffs:
        return "0"
    if letter is None:
        letter = "w" if a.cdim is not None else "e"
    terms = []
    for m, c in sorted(a.coeffs.items()):
        c = simplify(c)
        if style == "tex":
            idx = "".join(_tex_index(i, a.cdim) for i in m)
            base = ("\\omega" if letter == "w" else letter) + (f"^{{{idx}}}" if m else "")
        else:
            base = letter + "".join(_plain_index(i, a.cdim) for i in m)
        if not m:
            terms.append((c, ""))
            continue
        terms.append((c, base))
    out = ""
    for k, (c, base) in enumerate(terms):
        neg = False
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            cs = "" if mag == 1 and base else str(mag)
        elif isinstance(c, Gauss) and c.re == 0:
            neg = c.im < 0
            mag = Gauss(0, -c.im) if neg else c
            cs = fmt(mag)
        else:
            cs = f"({fmt(c)})"
        sep = ("\\," if style == "tex" else "*") if cs and base else ""
        piece = f"{cs}{sep}{base}"
        if k == 0:
            out = ("-" if neg else "") + piece
        else:
            out += (" - " if neg else " + ") + piece
    return out
