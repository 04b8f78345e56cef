import pytest

from aalogic import BUILTIN_SIGNATURE, Signature, parse_formula
from aalogic import corpus


@pytest.fixture(scope="session")
def sig():
    return BUILTIN_SIGNATURE


@pytest.fixture(scope="session")
def sig4():
    return Signature([("neg", 1), ("imp", 2), ("and", 2), ("or", 2)])


@pytest.fixture(scope="session")
def sig2():
    return Signature([("neg", 1), ("imp", 2)])


@pytest.fixture(scope="session")
def F(sig):
    return lambda text: parse_formula(sig, text)


@pytest.fixture(scope="session")
def b2():
    return corpus.b2()


@pytest.fixture(scope="session")
def h3():
    return corpus.h3()


@pytest.fixture(scope="session")
def b4():
    return corpus.b4()


@pytest.fixture(scope="session")
def chain4():
    return corpus.heyting_chain(4)


@pytest.fixture(scope="session")
def cpc():
    return corpus.cpc_logic()


@pytest.fixture(scope="session")
def ipc():
    return corpus.ipc_logic()


@pytest.fixture(scope="session")
def l3():
    return corpus.l3_logic()


@pytest.fixture(scope="session")
def pair():
    return corpus.classical_pair()


PEIRCE = "imp(imp(imp(x0,x1),x0),x0)"


@pytest.fixture(scope="session")
def peirce(F):
    return F(PEIRCE)
