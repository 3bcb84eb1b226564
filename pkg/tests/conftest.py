"""Shared fixtures: parsed benchmark arrays and random-array helpers."""

import pathlib

import numpy as np
import pytest

import oametrics as om

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def load_fixture(name: str) -> om.OrthogonalArray:
    return om.parse_oa((FIXTURES / name).read_text())


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def random_balanced_array(rng: np.random.Generator, runs: int,
                          levels) -> om.OrthogonalArray:
    """Array whose columns are each individually balanced (strength >= 1)."""
    cols = []
    for s in levels:
        assert runs % s == 0
        col = np.repeat(np.arange(s, dtype=np.int64), runs // s)
        cols.append(rng.permutation(col))
    return om.OrthogonalArray.from_rows(np.column_stack(cols))


@pytest.fixture(scope="session")
def oa9():
    return load_fixture("oa9_3x3x3.oa")


@pytest.fixture(scope="session")
def oa18():
    return load_fixture("oa18_2x3x3.oa")


@pytest.fixture(scope="session")
def oa8():
    return load_fixture("oa8_2x2x4.oa")


@pytest.fixture(scope="session")
def l18():
    return load_fixture("l18.oa")


@pytest.fixture(scope="session")
def pb12():
    return load_fixture("pb12.oa")


@pytest.fixture(scope="session")
def fused18():
    return load_fixture("oa18_6x3e6.oa")


@pytest.fixture(scope="session")
def sat32():
    return load_fixture("oa32_8x4e8.oa")


@pytest.fixture(scope="session")
def catalog_designs():
    return [load_fixture(f"oa32_4l_d{i:02d}.oa") for i in range(1, 11)]
