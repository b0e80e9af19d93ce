import pytest
from hypothesis import settings

from dinfty import corpus
from dinfty.tower import build_tower

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def tower12():
    return build_tower(1, 2)


@pytest.fixture(scope="session")
def tower21():
    return build_tower(2, 1)


@pytest.fixture(scope="session")
def lattice():
    return corpus.load_space("lattice_L")


@pytest.fixture(scope="session")
def lattice_paths(lattice):
    return corpus.lattice_paths(lattice)
