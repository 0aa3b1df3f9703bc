import pytest

from ducnoma.energy import EnergyBudget, ee_from_rate


def test_default_budget_divides_by_ten():
    for c in (0.0, 1.0, 3.7, 12.25):
        assert ee_from_rate(c) == pytest.approx(c / 10, abs=1e-12)


def test_doubling_power_halves_efficiency():
    c = 4.2
    assert ee_from_rate(c, EnergyBudget(20, 20, 1)) == pytest.approx(ee_from_rate(c) / 2)
    assert ee_from_rate(c, EnergyBudget(10, 10, 2)) == pytest.approx(ee_from_rate(c) / 2)


@pytest.mark.parametrize("kwargs", [dict(ps=0), dict(pr=-1), dict(t=0)])
def test_invalid_budget(kwargs):
    with pytest.raises(ValueError):
        EnergyBudget(**kwargs)


def test_negative_rate_rejected():
    with pytest.raises(ValueError):
        ee_from_rate(-1.0)
