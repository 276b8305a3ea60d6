import pytest

from contseq.model import default_table


@pytest.fixture(scope="session")
def table():
    return default_table()
