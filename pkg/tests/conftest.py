"""Shared fixtures: worked-example files and engines in both modes."""

from pathlib import Path

import pytest

from popmatch import (Engine, parse_instance, parse_matching,
                      parse_stable_instance, parse_stable_matching)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session", autouse=True)
def _warm_backend():
    # Compile the jitted kernels once so timed tests measure the algorithms.
    import numpy as np

    from popmatch.kernels import get_backend, default_backend_name
    b = get_backend(default_backend_name())
    b.pointer_double(np.array([1, 2, 0], dtype=np.int64))
    b.scan_add(np.array([1, 2, 3], dtype=np.int64))
    b.reach_closure(np.eye(3, dtype=bool))


@pytest.fixture
def onesided_text() -> str:
    return (DATA / "onesided.txt").read_text()


@pytest.fixture
def onesided_inst(onesided_text):
    return parse_instance(onesided_text)


@pytest.fixture
def onesided_matching(onesided_inst):
    return parse_matching((DATA / "onesided_matching.txt").read_text(), onesided_inst)


@pytest.fixture
def marriage_inst():
    return parse_stable_instance((DATA / "marriage.txt").read_text())


@pytest.fixture
def marriage_matching(marriage_inst):
    return parse_stable_matching((DATA / "marriage_matching.txt").read_text(),
                                 marriage_inst)


@pytest.fixture
def engine() -> Engine:
    return Engine()


@pytest.fixture
def seq_engine() -> Engine:
    return Engine(mode="seq")


@pytest.fixture(params=["par", "seq"])
def any_engine(request) -> Engine:
    return Engine(mode=request.param)
