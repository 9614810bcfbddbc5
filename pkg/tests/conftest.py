import pytest

from strategies import make


@pytest.fixture
def abc_star():
    """a - b with c isolated."""
    return make("abc", ["ab"])


@pytest.fixture
def p3():
    return make("abc", ["ab", "bc"])


@pytest.fixture
def p4():
    return make("abcd", ["ab", "bc", "cd"])
