import pytest

from zigzag_mds import kernels
from zigzag_mds.code import make_spec
from zigzag_mds.field import build_field
from zigzag_mds.group import parse_element

SMALL_LABELS = (
    ("00", "00", "00", "00"),
    ("11", "01", "00", "00"),
    ("00", "00", "11", "01"),
)


@pytest.fixture(scope="session")
def gf8():
    return build_field(3, 0b1011)


@pytest.fixture(scope="session")
def code744(gf8):
    """The (7,4,4) code over GF(8): alphas (0,1,w), betas (w^2..w^5)."""
    w = gf8.element
    labels = [[parse_element(u) for u in row] for row in SMALL_LABELS]
    return make_spec(labels, 2, field=gf8, alphas=[0, 1, w(1)], betas=[w(2), w(3), w(4), w(5)])


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param
