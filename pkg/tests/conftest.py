import pytest

from relhom.corpus import CORPUS, identified, presentation, presented

SMALL = ["trivial", "c2", "c3", "c4", "v4", "s3"]
ALL = list(CORPUS)


@pytest.fixture(params=ALL)
def any_pres(request):
    return identified(request.param)


@pytest.fixture
def c2():
    return presented("c2")


@pytest.fixture
def c3():
    return presented("c3")


@pytest.fixture
def v4():
    return presented("v4")


@pytest.fixture
def s3():
    return presented("s3")


@pytest.fixture
def trivial():
    return presented("trivial")
