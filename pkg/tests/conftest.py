import pytest

from ducnoma.channel import SystemConfig


@pytest.fixture
def defaults():
    """Default operating point at 30 dB, perfect SIC."""
    return SystemConfig.from_db(30)


def at_db(snr_db, kappa=0.0):
    return SystemConfig.from_db(snr_db).with_sic(kappa)


_REPORT = pytest.StashKey()


@pytest.fixture
def report(request):
    """Record one acceptance verdict line; all lines print at session end."""
    lines = request.config.stash.setdefault(_REPORT, [])

    def add(name, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_REPORT, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
