from __future__ import annotations

import random
from pathlib import Path

import pytest

from gpd.config import Settings
from gpd.services.linalg import get_backend
from gpd.services.subspace import AmbientSpace
from gpd.utils import samples

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def backend():
    return get_backend("rational")


@pytest.fixture
def float_backend():
    return get_backend("float")


@pytest.fixture
def rng():
    return random.Random(7)


@pytest.fixture
def ambient3(backend):
    return AmbientSpace.standard(3, ("a", "b", "c"), backend=backend)


@pytest.fixture
def worked(backend):
    return samples.worked_filtration(backend)


@pytest.fixture
def merge_pair(backend):
    return samples.merge_pair(backend)


@pytest.fixture
def small_settings():
    return Settings(
        max_vertices=4,
        max_steps=4,
        max_degree=1,
        verify_filtrations=4,
        verify_grams=2,
        verify_morphisms=3,
        verify_treegrams=3,
        verify_combinations=2,
    )


@pytest.fixture
def data_dir():
    return DATA_DIR
