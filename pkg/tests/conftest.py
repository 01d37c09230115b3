import hypothesis
import pytest

from mpcodes.ring import PolyQuot, Product, ZMod, make_ring

hypothesis.settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60, print_blob=True)
hypothesis.settings.load_profile("ci")

RING_SPECS = {
    "F2": ZMod(2),
    "F3": ZMod(3),
    "F4": PolyQuot(2, (1, 1, 1)),
    "Z4": ZMod(4),
    "Z6": ZMod(6),
    "F2[x]/(x^2)": PolyQuot(2, (0, 0, 1)),
}
EXTRA_SPECS = {
    "Z9": ZMod(9),
    "F3[x]/(x^2+2)": PolyQuot(3, (2, 0, 1)),
    "F2xF3": Product((ZMod(2), ZMod(3))),
    "Z4xF2": Product((ZMod(4), ZMod(2))),
}


@pytest.fixture(params=list(RING_SPECS), ids=list(RING_SPECS))
def ring(request):
    return make_ring(RING_SPECS[request.param])


@pytest.fixture(params=list(RING_SPECS) + list(EXTRA_SPECS))
def any_ring(request):
    return make_ring({**RING_SPECS, **EXTRA_SPECS}[request.param])


# -- acceptance criteria: one summary line per criterion, from real outcomes


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion check")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    num, text = mark.args
    ok = call.excinfo is None
    prev = item.config._criteria.get(num, (text, True, []))
    prev[2].append(item.name)
    item.config._criteria[num] = (text, prev[1] and ok, prev[2])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = config._criteria
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(crit):
        text, ok, _ = crit[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {text}")
