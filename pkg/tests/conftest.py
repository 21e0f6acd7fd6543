import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flc.families import FAMILIES
from flc.gaussrat import GaussRat

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(-6, 6)


@st.composite
def gauss(draw, nonzero=False):
    re = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
    im = draw(st.just(0) | st.fractions(min_value=-3, max_value=3, max_denominator=3))
    z = GaussRat(re, im)
    return GaussRat(1) if nonzero and not z else z


# mostly zero entries, like the fuzz pool: the strata are where the bugs live
sparse_gauss = st.one_of(st.just(GaussRat(0)), st.just(GaussRat(0)), gauss())


@st.composite
def params(draw, family):
    info = FAMILIES[family]
    C = info.make([draw(sparse_gauss) for _ in info.names])
    if family == "TLb8" and C.c34:
        C = C.replace(c23=-2 * C.c12)
    return C


@st.composite
def transforms(draw, C):
    from flc.families import AdaptedTransform
    fam = C.family
    nb = FAMILIES[fam].n_b
    A0 = draw(gauss(nonzero=True))
    A1 = draw(sparse_gauss)
    if fam == "TLb8" and not (A0 + A1 * C.c34):
        A1 = GaussRat(0)
    B = (draw(gauss(nonzero=True)),) + tuple(draw(sparse_gauss) for _ in range(nb - 1))
    return AdaptedTransform(fam, A0, A1, B)


@pytest.fixture
def rng():
    return random.Random(1234)
