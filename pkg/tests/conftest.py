import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from coloredkh import corpus  # noqa: E402


@pytest.fixture(scope="session")
def knots():
    return {name: corpus.diagram(name) for name in corpus.DIAGRAMS}
