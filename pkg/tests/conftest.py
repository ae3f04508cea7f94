import numpy as np
import pytest

from fixtures import galaxy_scene

from torquecluster import Dataset, run


@pytest.fixture(scope="session")
def galaxy_result():
    """Full run over the 50-point two-stage merge layout."""
    points, expected = galaxy_scene()
    return run(Dataset(points)), expected


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
