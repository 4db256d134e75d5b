import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rlr import registry  # noqa: E402

from oracles import Char2RLR  # noqa: E402


def rlr_of(name: str):
    return registry.get(name).rlr()


def plain(R) -> Char2RLR:
    """Integer-tuple copy of a characteristic 2 example for the oracles."""
    t = lambda a: a.tolist()
    mats = lambda a: [tuple(tuple(r) for r in m) for m in a.tolist()]
    return Char2RLR(
        t(R.A.mult),
        t(R.L.bracket),
        [tuple(v) for v in R.L.pmap_on_basis.tolist()],
        mats(R.act_mats),
        mats(R.anchor),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def a_linear_maps(R) -> np.ndarray:
    """Basis (flattened) of the linear maps L -> L commuting with the A-action."""
    from rlr.gfp import nullspace_array

    p, d = R.p, R.L.dim
    rows = []
    for k in range(d * d):
        E = np.zeros(d * d, dtype=np.int64)
        E[k] = 1
        E = E.reshape(d, d)
        rows.append(np.concatenate([(E @ M - M @ E).reshape(-1) for M in R.act_mats]) % p)
    return nullspace_array(np.array(rows).T, p)


def random_automorphism(R, order: int, rng):
    from rlr.deformation import FormalAutomorphism

    basis = a_linear_maps(R)
    d = R.L.dim
    phi = np.zeros((order + 1, d, d), dtype=np.int64)
    phi[0] = np.eye(d, dtype=np.int64)
    for k in range(1, order + 1):
        phi[k] = (rng.integers(0, R.p, len(basis)) @ basis % R.p).reshape(d, d)
    return FormalAutomorphism(R.p, phi)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
