from __future__ import annotations

import pytest

from dessins.evolution import ConnectedSeries


@pytest.fixture(scope="session")
def engine6() -> ConnectedSeries:
    return ConnectedSeries.compute(6)


@pytest.fixture(scope="session")
def engine10(engine6) -> ConnectedSeries:
    return engine6.extended_to(10)


@pytest.fixture(scope="session")
def engine14(engine10) -> ConnectedSeries:
    return engine10.extended_to(14)


@pytest.fixture(scope="session")
def engine20(engine14) -> ConnectedSeries:
    return engine14.extended_to(20)
