import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def gap_sweep_1e8():
    from cycloheight import gap_summary

    return gap_summary(10**8)


@pytest.fixture(scope="session")
def bundled_rows():
    from cycloheight import read_table_csv
    from cycloheight.cli import bundled_table_path

    return read_table_csv(bundled_table_path())


@pytest.fixture(scope="session")
def constants_1e6():
    from cycloheight import constants

    return constants(10**6)


@pytest.fixture(scope="session")
def constants_1e7():
    from cycloheight import constants

    return constants(10**7)
