import pytest

from mertens_lab.identities import IdentityWorkspace
from mertens_lab.mertens import mertens_sieved
from mertens_lab.sieves import build_sieve


@pytest.fixture(scope="session")
def table300():
    return build_sieve(300)


@pytest.fixture(scope="session")
def ws200():
    return IdentityWorkspace(200)


@pytest.fixture(scope="session")
def ws2000():
    return IdentityWorkspace(2000)


@pytest.fixture(scope="session")
def m_million():
    return mertens_sieved(10**6)
