import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ccalc.char_classes import OrientedRealBundle, VirtualBundle
from ccalc.checks import preset_rings
from ccalc.equivariant_poly import EquivClass
from ccalc.graded_base import BaseClass

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small = st.integers(-4, 4)
rings = st.sampled_from(preset_rings())


@st.composite
def homogeneous(draw, ring, d):
    return BaseClass(ring, {k: draw(small) for k in ring.basis_of_degree(d)})


@st.composite
def base_classes(draw, ring):
    return BaseClass(ring, {k: draw(small) for k in range(len(ring.basis))})


@st.composite
def unit_classes(draw, ring, max_k=None):
    top = ring.truncation // 2 if max_k is None else min(max_k, ring.truncation // 2)
    out = ring.one()
    for k in range(1, top + 1):
        out = out + draw(homogeneous(ring, 2 * k))
    return out


@st.composite
def virtual_bundles(draw, ring):
    return VirtualBundle(draw(st.integers(-3, 3)), draw(unit_classes(ring)))


@st.composite
def genuine_bundles(draw, ring, min_rank=0, max_rank=3):
    rank = draw(st.integers(min_rank, max_rank))
    return VirtualBundle(rank, draw(unit_classes(ring, max_k=rank)))


@st.composite
def real_bundles(draw, ring):
    rank = draw(st.integers(0, ring.truncation))
    if rank == 0:
        return OrientedRealBundle(0, ring.one())
    return OrientedRealBundle(rank, draw(homogeneous(ring, rank)))


@st.composite
def polynomials(draw, ring, max_x=3, max_y=2):
    terms = {}
    for i in range(max_x + 1):
        for j in range(max_y + 1):
            if draw(st.booleans()):
                terms[(i, j)] = draw(base_classes(ring))
    return EquivClass(ring, terms)


@pytest.fixture
def point():
    return preset_rings()[0]


@pytest.fixture
def sphere2():
    return preset_rings()[1]


@pytest.fixture
def cp2():
    return preset_rings()[2]


@pytest.fixture
def torus2():
    return preset_rings()[3]


@pytest.fixture
def s2xs2():
    return preset_rings()[4]
