"""
Common test fixtures for the penalise package.
"""
import shutil
import tempfile
from typing import Generator, List

import pytest
from prefect.testing.utilities import prefect_test_harness

from penalise.funcspace.step import StepFunction
from penalise.models.config import RunConfig, SuiteConfig
from penalise.numerics.tilting import TiltingConfig, default_tilt
from penalise.paths.grid import SeedSpec
from penalise.verify.corpus import step_corpus


@pytest.fixture
def temp_dir() -> Generator[str, None, None]:
    """Create a temporary directory for tests."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture(scope="session")
def prefect_harness() -> Generator[None, None, None]:
    """Run flows against a temporary Prefect database."""
    with prefect_test_harness():
        yield


@pytest.fixture
def corpus() -> List[StepFunction]:
    """The five step functions of the verification suite."""
    return step_corpus()


@pytest.fixture
def tilt() -> TiltingConfig:
    """φ(u) = e^{-u}."""
    return default_tilt()


@pytest.fixture
def seed() -> SeedSpec:
    """A fixed random stream."""
    return SeedSpec(root_seed=20240917, stream_index=0)


@pytest.fixture
def small_suite() -> SuiteConfig:
    """Suite settings small enough for unit-test runtimes."""
    return SuiteConfig(n_paths=4000, dt=2.0 ** -7, chunk_size=1000, seed=12345)


@pytest.fixture
def run_config(temp_dir: str, small_suite: SuiteConfig) -> RunConfig:
    """A verify run writing into the temporary directory."""
    return RunConfig(subcommand="verify", out=temp_dir, suite=small_suite)
