import json
import pathlib
import random

import pytest

from jetscheme import QQ, Arc, PolyRing
from jetscheme.polynomials import VarTable

ROOT = pathlib.Path(__file__).resolve().parents[1]
SESSIONS = ROOT / "sessions"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def plane():
    return PolyRing(QQ, ("x", "y"))


@pytest.fixture
def weighted_plane():
    return PolyRing(QQ, VarTable(("x", "y"), (2, 3)))


@pytest.fixture
def space():
    return PolyRing(QQ, ("x", "y", "z"))


CUSP = ["y^2 - x^3"]
NODE = ["x*y"]
UMBRELLA = ["x^2 - z*y^2"]


def arc(ring, images, prec=30, params=()):
    return Arc(ring, images, params, prec)


def session_path(name):
    return str(SESSIONS / f"{name}.json")


def load_doc(name):
    return json.loads((SESSIONS / f"{name}.json").read_text("utf-8"))
