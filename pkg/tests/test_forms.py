import pytest

from nlakit.catalog import build_wnn, builtin
from nlakit.cpxstruct import CoframePresentation
from nlakit.errors import NotIntegrable
from nlakit.exactnum import Gauss, I
from nlakit.forms import KForm, ce_differential, del_delbar, power, wedge
from nlakit.liealg import LieAlgebra


def e(n, *idx, c=1):
    return KForm.gen(n, *(i - 1 for i in idx), coeff=c)


def test_wedge_basics():
    assert not wedge(e(4, 1), e(4, 1))
    assert wedge(e(4, 1, 2), e(4, 3, 4)) == e(4, 1, 2, 3, 4)
    assert wedge(e(4, 2), e(4, 1)) == -e(4, 1, 2)


def test_wedge_square_of_f1_form():
    a = e(5, 1, 4) - e(5, 3, 5)
    # cross term -2 e14^e35, and e1435 = -e1345 (one transposition)
    assert wedge(e(5, 1, 4), e(5, 3, 5)) == -e(5, 1, 3, 4, 5)
    assert wedge(a, a) == e(5, 1, 3, 4, 5, c=2)
    assert power(a, 2) == wedge(a, a)


def test_graded_commutativity():
    a = e(6, 1, 2) + e(6, 3, c=2)
    b = e(6, 4, 5, 6) - e(6, 2, 4)
    for pa in (1, 2):
        for pb in (2, 3):
            x, y = a.part(pa), b.part(pb)
            assert wedge(x, y) == wedge(y, x) * (-1) ** (pa * pb)


def test_ce_on_f1():
    g = builtin("f1")
    assert ce_differential(g, e(8, 4)) == e(8, 1, 2)
    assert ce_differential(g, e(8, 5, 6)) == e(8, 2, 3, 6) - e(8, 1, 4, 5)


def test_ce_abelian_is_zero():
    g = LieAlgebra.abelian(5)
    assert not ce_differential(g, e(5, 1, 2) + e(5, 3, 4, 5))


def test_del_of_w1_and_w4():
    p = build_wnn((0, 1, 1, 1, 0))
    w = p.w
    dl, db = del_delbar(p, w(1))
    assert not dl and not db
    dl, _ = del_delbar(p, w(4))
    assert dl == wedge(w(1), w(2)) + wedge(w(2), w(3))


def test_del_of_generic_20_form():
    alpha, beta, gamma, tau, theta, xi = Gauss(2, 1), Gauss(-1), Gauss(0, 3), Gauss(5), Gauss(1, -1), Gauss(7, 2)
    for eps, delta, nu, a, B in [(0, 1, 1, 1, 0), (1, -1, 1, 2, Gauss(3, 1)), (0, 1, 0, 0, 1), (1, 1, 0, 1, 0)]:
        p = build_wnn((eps, delta, nu, a, B))
        w = p.w
        om = (alpha * wedge(w(1), w(2)) + beta * wedge(w(1), w(3)) + gamma * wedge(w(1), w(4))
              + tau * wedge(w(2), w(3)) + theta * wedge(w(2), w(4)) + xi * wedge(w(3), w(4)))
        dl, _ = del_delbar(p, om)
        expect = -(gamma * nu + a * xi) * wedge(wedge(w(1), w(2)), w(3)) + theta * wedge(wedge(w(1), w(3)), w(4))
        assert dl == expect


def test_real_form_delbar_is_conjugate():
    p = build_wnn((0, -1, 1, 1, Gauss(1, 2)))
    w, wb = p.w, (lambda k: p.w(k).conjugate())
    f = I * wedge(w(1), wb(1)) + Gauss(2, 3) * wedge(w(1), wb(4)) - Gauss(2, -3) * wedge(w(4), wb(1))
    assert f.is_real()
    dl, db = del_delbar(p, f)
    assert db == dl.conjugate()
    assert dl + db == p.differential(f)


def test_bidegree_bookkeeping():
    p = build_wnn((1, 1, 1, 2, Gauss(3, 1)))
    w = p.w
    f = wedge(w(2), w(3).conjugate())
    dl, db = del_delbar(p, f)
    assert dl.bidegrees() <= {(2, 1)}
    assert db.bidegrees() <= {(1, 2)}


def test_not_integrable():
    p = CoframePresentation.from_terms(2, [{}, {"~1~2": 1}], check=False)
    with pytest.raises(NotIntegrable):
        del_delbar(p, p.w(1))


def test_conjugation_involution():
    p = build_wnn((0, 1, 1, 1, 0))
    f = Gauss(1, 2) * wedge(p.w(1), p.w(3).conjugate())
    assert f.conjugate().conjugate() == f
    assert f.conjugate().bidegrees() == {(1, 1)}


def test_render_plain_and_tex():
    p = build_wnn((0, 1, 1, 1, 0))
    f = wedge(p.w(1), p.w(3).conjugate())
    assert f.render() == "w1~3"
    assert "\\bar" in f.render("tex")
