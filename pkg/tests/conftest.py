import numpy as np
import pytest

from dslab.models.field import ComplexField2D
from dslab.services.spectral import make_grid


def pytest_addoption(parser):
    parser.addoption(
        "--extended",
        action="store_true",
        default=False,
        help="run the desk-scale acceptance experiments (minutes to hours)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: desk-scale acceptance run, needs --extended")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def small_grid():
    return make_grid(2.0, 64)


@pytest.fixture
def gaussian_grid():
    return make_grid(2.0, 256)


@pytest.fixture
def random_field(small_grid):
    rng = np.random.default_rng(7)
    data = rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64))
    return ComplexField2D(small_grid, data)
