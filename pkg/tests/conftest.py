import random
from fractions import Fraction
from pathlib import Path

import pytest

from canonlab.display import DisplayData
from canonlab.ring import LocalFieldElem
from canonlab.sampling import seed_from_env
from canonlab.witt import WittVec

GALLERY = Path(__file__).resolve().parent.parent / "gallery"


def teich(value, p, e=1, length=1):
    return WittVec.teichmuller(LocalFieldElem.from_rational(value, p, e), length)


def teich_pi(p, e, length=1):
    return WittVec.teichmuller(LocalFieldElem.pi(p, e), length)


def gm_display(p):
    return DisplayData(1, 1, ((teich(1, p),),))


def pi_display(p):
    """Height-2 display [[pi, 1], [1, 0]] over the e = 2 ramified ring."""
    e = 2
    return DisplayData(
        1,
        2,
        (
            (teich_pi(p, e), teich(1, p, e)),
            (teich(1, p, e), teich(0, p, e)),
        ),
    )


def blockdiag_display(p):
    z = teich(0, p)
    return DisplayData(2, 2, ((teich(1, p), z), (z, teich(1, p))))


def coupled_display(p, e=2, ramified=True):
    """g = 2, h = 3 with a coupling column; H = 1/2 when ramified else 0."""
    one = teich(1, p, e)
    zero = teich(0, p, e)
    top = teich_pi(p, e) if ramified else one
    return DisplayData(
        2,
        3,
        (
            (top, one, one),
            (zero, one, zero),
            (one, zero, zero),
        ),
    )


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture
def gallery_path():
    return GALLERY
