from __future__ import annotations

from fractions import Fraction

import pytest

from exkraw.krawtchouk import KrawtchoukParams


@pytest.fixture
def half2():
    return KrawtchoukParams(Fraction(1, 2), 2)
