import functools
from pathlib import Path

import pytest

from bosonpair.dvr import make_grid
from bosonpair.single import solve_single
from bosonpair.two_body import lowest_band

FIXTURES = Path(__file__).parent / "fixtures"


@functools.lru_cache(maxsize=None)
def grid_for(n_points=61, spacing=0.16):
    return make_grid(n_points, spacing)


@functools.lru_cache(maxsize=None)
def band_for(kappa, g1d, n_points=61, spacing=0.16):
    return tuple(lowest_band(grid_for(n_points, spacing), kappa, g1d))


@functools.lru_cache(maxsize=None)
def single_for(kappa, n_states=4, n_points=61, spacing=0.16):
    return tuple(solve_single(grid_for(n_points, spacing), kappa, n_states))


@pytest.fixture
def grid():
    return grid_for()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
