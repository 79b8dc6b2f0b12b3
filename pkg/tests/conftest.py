import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qforms.presets import build_cq, build_eq2  # noqa: E402


@pytest.fixture(scope="session")
def eq2():
    return build_eq2()


@pytest.fixture(scope="session")
def cq():
    return build_cq()
