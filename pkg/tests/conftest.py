import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hopftruss.groups import (  # noqa: E402
    cyclic_group,
    enumerate_group_rbs,
    extend_to_group_algebra,
    group_algebra,
    symmetric_group,
)

DATA = Path(__file__).parent.parent / "src" / "hopftruss" / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def groups():
    return {"C2": cyclic_group(2), "C3": cyclic_group(3), "C4": cyclic_group(4), "S3": symmetric_group(3)}


@pytest.fixture(scope="session")
def hopfs(groups):
    return {k: group_algebra(g) for k, g in groups.items()}


@pytest.fixture(scope="session")
def extended_systems(groups, hopfs):
    """Every unit-fixed group system on C2, C3, C4, S3, linearized."""
    out = {}
    for k, g in groups.items():
        out[k] = [(s, extend_to_group_algebra(s, hopfs[k])) for s in enumerate_group_rbs(g, require_unit_fixed=True)]
    return out
