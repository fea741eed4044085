import sys

import pytest

from repequiv.cli import parse_workspace
from repequiv.homalg import regular_bimodule
from repequiv.qalg import Quiver, path_basis
from repequiv.repcat import tilt_context
from repequiv.rmod import injective, is_isomorphic, projective, simple
from repequiv.wtilt import CotorsionData


def indecomposables(alg):
    """Projectives, injectives and simples up to isomorphism (all indecomposables for A2 and A3)."""
    out = []
    for v in range(alg.nverts):
        for M in (projective(alg, v), injective(alg, v), simple(alg, v)):
            if not any(is_isomorphic(M, N)[0] for N in out):
                out.append(M)
    return out


@pytest.fixture(scope="session")
def a2():
    return path_basis(Quiver(2, (("a", 0, 1),)))


@pytest.fixture(scope="session")
def a3():
    return path_basis(Quiver(3, (("a", 0, 1), ("b", 1, 2))))


@pytest.fixture(scope="session")
def a3t():
    """The FIX-A3T workspace with its tilting context and both generator lists."""
    ws = parse_workspace("fix-a3t")
    Tb, ctx = ws.bimodule()
    return ws, Tb, ctx, ws.data_r(), ws.data_s()


def identity_setup(alg):
    """``T = R`` with ``(B, A) = (proj, all)`` and ``(G, K) = (all, inj)``."""
    ind = indecomposables(alg)
    ctx = tilt_context(regular_bimodule(alg))
    d_r = CotorsionData(alg, ind, [projective(alg, v) for v in range(alg.nverts)], depth=3)
    d_s = CotorsionData(alg, [injective(alg, v) for v in range(alg.nverts)], ind, depth=3)
    return ctx, d_r, d_s


@pytest.fixture(scope="session")
def a2_identity(a2):
    return identity_setup(a2)


@pytest.fixture(scope="session")
def a3_identity(a3):
    return identity_setup(a3)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdict lines at the end of the run."""
    lines = getattr(sys.modules.get("test_acceptance"), "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
