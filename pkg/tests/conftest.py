from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from supercohom.algebra import build_algebra

settings.register_profile(
    "repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def sl21():
    return build_algebra("sl", 2, 1)


@pytest.fixture(scope="session")
def gl21():
    return build_algebra("gl", 2, 1)


@pytest.fixture(scope="session")
def sl31():
    return build_algebra("sl", 3, 1)


@pytest.fixture(scope="session")
def sl32():
    return build_algebra("sl", 3, 2)
