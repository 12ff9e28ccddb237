import sys

import pytest

from reesblow import _kernels
from reesblow.graded import GradedAlgebra
from reesblow.polyring import QQ, RingContext
from reesblow.rees import ImmersionData


def pytest_sessionstart(session):
    # compile the numba kernels once, outside any timed region
    _kernels.warmup()


@pytest.fixture
def plane():
    ctx = RingContext.make(["x", "y"], [0, 0], QQ)
    return GradedAlgebra.polynomial_ring(ctx, "A")


@pytest.fixture
def origin(plane):
    x, y = plane.ctx.gens()
    return ImmersionData(plane, (x, y))


@pytest.fixture
def dual_numbers():
    ctx = RingContext.make(["e"], [0], QQ)
    return ImmersionData(GradedAlgebra(ctx, [ctx.parse("e^2")], "D"), (ctx.var("e"),))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
