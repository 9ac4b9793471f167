import itertools
from fractions import Fraction

import pytest

from nlakit.catalog import GenericExtParams, SnNParams, build_generic, build_snn, build_wnn, realify_table1
from nlakit.cpxstruct import (
    NILPOTENT,
    SNN,
    WNN,
    CoframePresentation,
    RealJ,
    check_intertwiner,
    classify,
    default_basis,
    induced_quotient,
    j_compatible_series,
    nijenhuis,
    realify,
    transport_matrix,
)
from nlakit.errors import NotAlmostComplex, QuotientIsZero, SingularLambda
from nlakit.exactnum import Gauss, I, zeros
from nlakit.liealg import LieAlgebra, ascending_series, parse_algebra

U = Gauss(Fraction(3, 5), Fraction(4, 5))  # rational point on the unit circle


def rotation_pairs(pairs, n):
    m = zeros(n, n)
    for a, b in pairs:
        m[b - 1, a - 1] = Fraction(1)
        m[a - 1, b - 1] = Fraction(-1)
    return RealJ(m)


def test_not_almost_complex():
    with pytest.raises(NotAlmostComplex):
        RealJ([[1, 0], [0, 1]])


def test_nijenhuis_abelian_vanishes():
    assert nijenhuis(LieAlgebra.abelian(8), RealJ.standard(8)) == {}


def test_nijenhuis_table1_f1():
    g, J, name = realify_table1((0, 1, 0, 0, 0))
    assert name == "f1"
    assert nijenhuis(g, J) == {}


def test_nijenhuis_block_rotation_nonzero():
    from nlakit.catalog import builtin

    J = rotation_pairs([(1, 3), (2, 5), (4, 6), (7, 8)], 8)
    bad = nijenhuis(builtin("f1"), J)
    assert bad
    assert all(any(v != 0 for v in vec) for vec in bad.values())


def test_realify_torus():
    p = CoframePresentation.from_terms(4, [{}] * 4)
    g, J = realify(p)
    assert g == LieAlgebra.abelian(8)
    assert J == RealJ.standard(8)


def test_realify_convention():
    # w = e1 + i e2 gives J e1 = e2
    g, J = realify(build_wnn((0, 1, 0, 0, 0)))
    assert J.apply([1, 0, 0, 0, 0, 0, 0, 0])[:2] == [0, 1]


def test_realify_table1_f8():
    g, J, name = realify_table1((1, 1, 1, 2, Gauss(1, 3)))
    assert name == "f8"
    assert nijenhuis(g, J) == {}


def test_series_abelian_is_nilpotent():
    flag, jt = j_compatible_series(LieAlgebra.abelian(4), RealJ.standard(4))
    assert jt.tag == NILPOTENT
    assert flag.terms[-1].dim == 4


@pytest.mark.parametrize("params", [(0, 1, 1, 1, 0), (1, -1, 0, 0, 1), (0, -1, 1, 1, Gauss(2, 1)), (1, 1, 1, 3, I)])
def test_wnn_series(params):
    g, J = realify(build_wnn(params))
    flag, jt = j_compatible_series(g, J)
    assert jt.tag == WNN and jt.short == "WnN"
    assert jt.series_dims == [2, 2] and jt.t == 1
    asc = ascending_series(g)
    for k, a in enumerate(flag.terms):
        assert a.issubspace(asc.terms[min(k, len(asc.terms) - 1)])
        assert a.map(J.matrix) == a


def test_snn_family_ii():
    g, J = realify(build_snn(SnNParams("II", eps=1)))
    flag, jt = j_compatible_series(g, J)
    assert jt.tag == SNN
    assert jt.series_dims == [0]


def test_classify_matches_series():
    g, J = realify(build_wnn((0, 1, 1, 1, 0)))
    assert classify(g, J) == j_compatible_series(g, J)[1]


def test_quotient_wnn_is_snn():
    g, J = realify(build_wnn((1, 1, 0, 1, 0)))
    h, Jq, proj = induced_quotient(g, J, 1)
    assert h.dim == 6
    flag, jt = j_compatible_series(h, Jq)
    assert jt.tag == SNN
    assert flag.terms[-1].dim == 0


def test_quotient_kodaira_thurston():
    g = parse_algebra("(0,0,0,12)")
    J = rotation_pairs([(1, 2), (3, 4)], 4)
    _, jt = j_compatible_series(g, J)
    assert jt.tag == NILPOTENT
    h, Jq, _ = induced_quotient(g, J, 1)
    assert h.dim == 2 and h.is_abelian()


def test_quotient_is_zero():
    g = parse_algebra("(0,0,0,12)")
    J = rotation_pairs([(1, 2), (3, 4)], 4)
    with pytest.raises(QuotientIsZero):
        induced_quotient(g, J, 2)


def test_intertwiner_identity():
    p = build_wnn((0, 1, 1, 1, 0))
    ok, res = check_intertwiner(p, p, [[int(i == j) for j in range(4)] for i in range(4)])
    assert ok and res == []


def test_intertwiner_delta_mismatch():
    p, p2 = build_wnn((0, 1, 1, 1, 0)), build_wnn((0, -1, 1, 1, 0))
    ok, res = check_intertwiner(p, p2, [[int(i == j) for j in range(4)] for i in range(4)])
    assert not ok
    assert [k for k, r in enumerate(res) if r] == [2]
    # coefficient of w1~2 is i(delta - delta')
    assert res[2].coeffs[(0, 5)] == 2 * I


def test_singular_lambda():
    p = build_wnn((0, 1, 0, 0, 0))
    with pytest.raises(SingularLambda):
        check_intertwiner(p, p, [[0] * 4] * 4)


def _rotation_pairs():
    # (target, source, Lambda) with lambda^1_1 = lambda^2_2 = U, lambda^3_3 = 1
    out = []
    for eps in (0, 1):
        for a, B in [(1, Gauss(2, 1)), (0, 1), (3, 0)]:
            L = Gauss(2, 1)
            lam = [[U, 0, 0, 0], [0, U, 0, 0], [0, 0, 1, 0], [0, 0, 0, L]]
            out.append((GenericExtParams(eps, 1, 0, a, B), GenericExtParams(eps, 1, 0, a * L / (U * U), B * L), lam))
        # nu = 1 forces lambda^4_4 = lambda^1_1 (lambda^3_3)^2
        lam = [[U, 0, 0, 0], [0, U, 0, 0], [0, 0, 1, 0], [0, 0, 0, U]]
        out.append((GenericExtParams(eps, -1, 1, 1, 2), GenericExtParams(eps, -1, 1, 1 / U, 2 * U), lam))
    return out


@pytest.mark.parametrize("tgt,src,lam", _rotation_pairs())
def test_rotation_intertwiner(tgt, src, lam):
    ok, res = check_intertwiner(build_generic(tgt), build_generic(src), lam)
    assert ok, res
    # the parameter relations
    l11, l33, l44 = lam[0][0], lam[2][2], lam[3][3]
    assert src.A == tgt.A * l44 / (l11 * l11 * l33)
    assert src.B == tgt.B * l44
    assert src.nu == tgt.nu * l44 / (l11 * l33 * l33)


@pytest.mark.parametrize("tgt,src,lam", _rotation_pairs())
def test_transport_of_series(tgt, src, lam):
    p, p2 = build_generic(tgt), build_generic(src)
    g, J = realify(p)
    g2, J2 = realify(p2)
    rows = default_basis(4)
    f = transport_matrix(rows, rows, lam)
    flag, _ = j_compatible_series(g, J)
    flag2, _ = j_compatible_series(g2, J2)
    for a, a2 in zip(flag.terms, flag2.terms):
        assert a.map(f) == a2


FORBIDDEN = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (2, 1), (2, 3)]


@pytest.mark.parametrize("tgt,src,lam", _rotation_pairs()[:3])
def test_triangular_shape(tgt, src, lam):
    # any valid Lambda has the triangular shape: spoiling a forbidden slot breaks validity
    p, p2 = build_generic(tgt), build_generic(src)
    for i, j in FORBIDDEN:
        for x in (1, I, Gauss(2, -1)):
            bad = [row[:] for row in lam]
            bad[i][j] = x
            assert not check_intertwiner(p, p2, bad)[0], (i, j, x)


def test_no_intertwiner_across_discrete_axes():
    units = [1, -1, I, -I]
    tuples = [(0, 1, 0, 0, 1), (0, -1, 0, 0, 1), (1, 1, 0, 0, 1), (0, 1, 1, 0, 1)]
    for t1, t2 in itertools.combinations(tuples, 2):
        p, p2 = build_wnn(t1), build_wnn(t2)
        for d in itertools.product(units, repeat=4):
            for low in (0, 1):
                lam = [[d[0], 0, 0, 0], [low, d[1], 0, 0], [0, 0, d[2], 0], [0, low, 0, d[3]]]
                assert not check_intertwiner(p, p2, lam)[0]
