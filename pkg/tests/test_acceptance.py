"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run directly (python3 tests/test_acceptance.py) for the plain report, or under
pytest where the lines are echoed past output capture.
"""
import pytest

from nlakit import reproduce

XFAIL = {
    "1": "three n_d cells (f4^0, f4^1, f7^1) disagree with the span-of-decomposables definition; witnesses in the ledger",
    "6": "the counter-sample has signature (6,2) for g = F(J.,.); the printed (2,6) belongs to the negated matrix",
}


def _params():
    out = []
    for label, fn in reproduce.CRITERIA:
        num = label.split()[0]
        marks = [pytest.mark.xfail(strict=True, reason=XFAIL[num])] if num in XFAIL else []
        out.append(pytest.param(label, fn, id=f"criterion_{num}", marks=marks))
    return out


@pytest.mark.parametrize("label,fn", _params())
def test_criterion(label, fn, capsys):
    check = fn()
    with capsys.disabled():
        print(f"\n[{'PASS' if check.ok else 'FAIL'}] {label}: {check.detail}")
    assert check.ok, check.detail


if __name__ == "__main__":
    results = reproduce.run_all()
    print(f"{sum(c.ok for _, c in results)}/{len(results)} criteria pass")
