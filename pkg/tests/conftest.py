import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from gtwlab.zoo import K_GRID, hopf_zoo, model_zoo, nonhopf_zoo  # noqa: E402

ZOO = model_zoo()
HOPF = hopf_zoo()
NONHOPF = nonhopf_zoo()


@pytest.fixture(params=list(ZOO), ids=list(ZOO))
def zoo_model(request):
    return ZOO[request.param]


@pytest.fixture(params=list(HOPF), ids=list(HOPF))
def hopf_zoo_model(request):
    return HOPF[request.param]


@pytest.fixture(params=K_GRID, ids=[f"k={k:g}" for k in K_GRID])
def grid_k(request):
    return request.param
