from fractions import Fraction

import pytest

from nlakit import catalog as cat
from nlakit.catalog import (
    GenericExtParams,
    SnNParams,
    WnNParams,
    build_generic,
    build_snn,
    build_snn6,
    build_tau,
    build_wnn,
    builtin,
    realify_table1,
    reduce_to_normal_form,
    resolve,
    tau_constraints_hold,
    tau_to_eta,
)
from nlakit.cpxstruct import CoframePresentation, check_intertwiner, induced_quotient, j_compatible_series, realify
from nlakit.errors import InadmissibleParams, IrrationalRotation, JacobiViolation, ParseError, RowMismatch
from nlakit.exactnum import Gauss, I
from nlakit.forms import KForm, wedge
from nlakit.liealg import LieAlgebra


def d_squared_zero(p):
    return all(not p.differential(p.differential(p.w(k))) for k in range(1, p.n + 1))


def test_wnn_trivial_branch():
    p = build_wnn((0, 1, 0, 0, 0))
    assert not p.differential(p.w(4))


def test_wnn_full_equation():
    p = build_wnn((1, 1, 1, 2, Gauss(3, 1)))
    w, wb = p.w, (lambda k: p.w(k).conjugate())
    expect = (2 * wedge(w(1), w(2)) + Gauss(3, 1) * wedge(w(1), wb(1)) + wedge(w(2), w(3))
              + 2 * wedge(w(1), wb(3)) + wedge(w(2), wb(3)))
    assert p.differential(w(4)) == expect


def test_wnn_inadmissible():
    with pytest.raises(InadmissibleParams) as ei:
        build_wnn((0, 1, 1, 2, 0))
    assert "branch" in str(ei.value)


@pytest.mark.parametrize("bad", [(2, 1, 0, 0, 0), (0, 0, 0, 0, 0), (0, 1, 2, 0, 0), (0, 1, 0, -1, 0), (0, 1, 1, 1, Gauss(0, -1))])
def test_wnn_domain_errors(bad):
    with pytest.raises(InadmissibleParams):
        WnNParams(*bad)


def test_generic_equals_normal_at_zero():
    assert build_generic(GenericExtParams(0, 1, 0, 0, 0)) == build_wnn((0, 1, 0, 0, 0))


def test_generic_d_squared():
    assert d_squared_zero(build_generic(GenericExtParams(1, 1, 0, 3 * I, 2)))


def test_tau_probe():
    A = {"12": 1, "13": 0, "23": 0}
    assert d_squared_zero(build_tau(0, 1, A, {}))
    bad = build_tau(0, 1, A, {"2~2": 1})
    assert not d_squared_zero(bad)
    assert not tau_constraints_hold(0, 1, A, {"2~2": 1})


@pytest.mark.parametrize("eps,delta", [(0, 1), (1, -1)])
@pytest.mark.parametrize("A,B", [
    ({"12": 2, "13": 1, "23": Gauss(1, 1)}, {"1~1": 3, "1~2": I, "2~1": -I}),
    ({"12": 0, "13": Gauss(0, 2), "23": 0}, {"1~1": 1, "1~2": 2, "2~1": -2}),
])
def test_tau_to_eta(eps, delta, A, B):
    B = dict(B)
    B["2~3"] = A["23"]
    B["1~3"] = A["13"] + 2 * delta * eps * A["23"]
    assert tau_constraints_hold(eps, delta, A, B)
    tau = build_tau(eps, delta, A, B, check=True)
    q, lam = tau_to_eta(eps, delta, A, B)
    ok, res = check_intertwiner(tau, build_generic(q), lam)
    assert ok, res


def test_reduce_b_only():
    for eps in (0, 1):
        for delta in (1, -1):
            q, lam = reduce_to_normal_form(GenericExtParams(eps, delta, 0, 0, 3))
            assert q.as_tuple() == (eps, delta, 0, 0, 1)


def test_reduce_nu1_eps1():
    q, _ = reduce_to_normal_form(GenericExtParams(1, -1, 1, 2, 0))
    assert q.as_tuple() == (1, -1, 1, 2, 0)


def test_reduce_identity():
    q, lam = reduce_to_normal_form(GenericExtParams(1, 1, 0, 0, 0))
    assert q.as_tuple() == (1, 1, 0, 0, 0)
    assert lam == [[int(i == j) for j in range(4)] for i in range(4)]


@pytest.mark.parametrize("gp", [
    GenericExtParams(0, 1, 0, 25, Gauss(-7, -24)),
    GenericExtParams(1, -1, 0, Gauss(0, 2), Gauss(0, -3)),
    GenericExtParams(0, -1, 0, Gauss(3, 4), Gauss(-3, 4)),
    GenericExtParams(0, -1, 1, Gauss(3, 4), Gauss(-7, -24)),
    GenericExtParams(0, 1, 1, 0, Gauss(-7, -24)),
    GenericExtParams(1, -1, 1, Gauss(3, 4), Gauss(1, 1)),
    GenericExtParams(1, 1, 1, 0, 4),
])
def test_reduction_certified_and_idempotent(gp):
    q, lam = reduce_to_normal_form(gp)
    ok, res = check_intertwiner(build_generic(gp), build_wnn(q), lam)
    assert ok, res
    q2, lam2 = reduce_to_normal_form(GenericExtParams(q.eps, q.delta, q.nu, q.a, q.B))
    assert q2 == q


def test_irrational_rotation():
    with pytest.raises(IrrationalRotation):
        reduce_to_normal_form(GenericExtParams(0, 1, 0, 1, I))


def test_table1_rows():
    assert realify_table1((0, 1, 0, 0, 0))[2] == "f1"
    assert realify_table1((0, -1, 0, 0, 0))[2] == "f1"
    assert realify_table1((0, 1, 1, 1, Gauss(2, 3)))[2] == "f7^1"
    assert realify_table1((1, -1, 0, 0, 1))[2] == "f2"


def test_row_mismatch_detected(monkeypatch):
    real = cat.table_row
    monkeypatch.setattr(cat, "table_row", lambda p: ("f3", real(p)[1]))
    with pytest.raises(RowMismatch):
        realify_table1((0, 1, 0, 0, 0))


def test_every_table_sample_lands():
    for t in cat.table_samples():
        g, J, name = realify_table1(t)
        assert g == builtin(name)


def test_snn_family_ii():
    p = build_snn(SnNParams("II", eps=1))
    w, wb = p.w, (lambda k: p.w(k).conjugate())
    assert p.differential(w(4)) == I * wedge(w(1), wb(3)) - I * wedge(w(3), wb(1))


def test_snn_family_i():
    p = build_snn(SnNParams("I", delta=1, eps=0, nu=0, a=1, b=0))
    assert d_squared_zero(p)


@pytest.mark.parametrize("bad", [
    dict(family="I", delta=1, a=0, b=0),
    dict(family="I", delta=1, a=-1, b=1),
    dict(family="II", eps=0, mu=0),
    dict(family="II", eps=1, mu=1, nu=1),
    dict(family="III"),
])
def test_snn_domain(bad):
    with pytest.raises(InadmissibleParams):
        SnNParams(**bad)


@pytest.mark.parametrize("eps", [0, 1])
@pytest.mark.parametrize("delta", [1, -1])
def test_snn6_is_the_quotient(eps, delta):
    samples = [t for t in cat.table_samples() if t.eps == eps and t.delta == delta]
    assert len(samples) >= 5
    for t in samples[::4]:
        g, J = realify(build_wnn(t))
        h, Jq, _ = induced_quotient(g, J, 1)
        h6, J6 = build_snn6(eps, delta)
        assert h == h6 and Jq == J6


def test_snn6_is_snn():
    h, J = build_snn6(1, 1)
    assert j_compatible_series(h, J)[1].short == "SnN"


def test_resolve_forms():
    assert isinstance(resolve("wnn(0,1,1,1,0)"), CoframePresentation)
    assert isinstance(resolve("generic(1,1,0,3i,2)"), CoframePresentation)
    assert isinstance(resolve("snn(II,1,0,0,0,0)"), CoframePresentation)
    assert isinstance(resolve("snn(I,1,0,0,1,0)"), CoframePresentation)
    assert resolve("f1") == builtin("f1")
    assert resolve("F4^0") == builtin("f4^0")
    assert isinstance(resolve("(0,0,12)"), LieAlgebra)
    with pytest.raises(JacobiViolation):
        resolve("(0,0,12,13+24)")
    with pytest.raises(ParseError):
        resolve("nonsense")


def test_g10_isomorphism():
    g, J, P = cat.g10_structure()
    assert cat.is_isomorphism(g, builtin("g10^0"), P)
    assert j_compatible_series(g, J)[1].short == "SnN"


def test_builtins_have_expected_dims():
    for name in cat.BUILTIN_TEXT:
        g = builtin(name)
        assert g.dim in (6, 8)
    assert builtin("h19^-").dim == 6


def test_wnn_realification_kform_round_trip():
    p = build_wnn((1, 1, 1, 3, Gauss(1, 1)))
    g, J = realify(p)
    # d e^k recovers the real equations; d^2 = 0 there as well
    for k in range(8):
        assert not g.d(g.d(KForm.gen(8, k)))


def test_fraction_params_accepted():
    p = build_wnn((1, 1, 1, Fraction(1, 2), 0))
    assert d_squared_zero(p)
