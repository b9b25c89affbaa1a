import pytest

from weilmass import gsp4
from weilmass.characters import identify_characters
from weilmass.weil import WeilPolynomial, enumerate_corpus

# the worked end-to-end example: Jacobian of y^2 = x^5 - 2 over F_61,
# splitting field Q(zeta_5)
PAPER_EXAMPLE = WeilPolynomial(61, 1, -29, 331)

CORPUS_QS = (2, 3, 5, 7, 8, 9, 11, 13)


@pytest.fixture(scope="session")
def example():
    return PAPER_EXAMPLE


@pytest.fixture(scope="session")
def example_cg():
    return identify_characters(PAPER_EXAMPLE)


@pytest.fixture(scope="session")
def enum2():
    return gsp4.enumerate_sp4(2)


@pytest.fixture(scope="session")
def enum3():
    return gsp4.enumerate_sp4(3)


@pytest.fixture(scope="session")
def enum5():
    return gsp4.enumerate_sp4(5)


@pytest.fixture(scope="session")
def corpora():
    return {q: enumerate_corpus(q) for q in CORPUS_QS}
