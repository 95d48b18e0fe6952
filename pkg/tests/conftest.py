from __future__ import annotations

import pytest

from orbitstab.algebra import GF, QQ, QuadraticField


@pytest.fixture
def Q():
    return QQ


@pytest.fixture
def Q2():
    return QuadraticField(2)


@pytest.fixture
def F4():
    return GF(4)
