import pytest

from indefsum import asymptotic_constant, builtin


def _ready(name: str):
    entry = builtin(name)
    asymptotic_constant(entry.g)
    return entry


@pytest.fixture(scope="session")
def ln_entry():
    """log entry with sigma[g] cached (Gregory fast path armed)."""
    return _ready("ln")


@pytest.fixture(scope="session")
def psi2_entry():
    return _ready("psi2g")


@pytest.fixture(scope="session")
def xlnx_entry():
    return _ready("xlnx")


@pytest.fixture(scope="session")
def recip_entry():
    return _ready("recip")


@pytest.fixture(scope="session")
def all_entries(ln_entry, psi2_entry, xlnx_entry, recip_entry):
    return (ln_entry, psi2_entry, xlnx_entry, recip_entry)
