from __future__ import annotations

import json

import pytest
from hypothesis import strategies as st

from agcover.profile import SingularProfile


def _counts(keys, max_count):
    return st.dictionaries(st.sampled_from(keys), st.integers(0, max_count), max_size=len(keys))


@st.composite
def profiles(draw, d=st.integers(1, 10), N=st.integers(2, 8), k_max=4, max_count=5):
    """Structurally valid profiles."""
    dd, NN = draw(d), draw(N)
    n = draw(_counts(list(range(0, k_max + 1)), max_count)) if NN >= 3 else {}
    m = draw(_counts(list(range(1, k_max + 1)), max_count)) if NN >= 3 else {}
    t = draw(_counts(list(range(1, k_max + 1)), max_count)) if NN >= 4 else {}
    return SingularProfile(dd, NN, n, m, t)


def cubic() -> SingularProfile:
    return SingularProfile(3, 3, n={0: 6})


def double_sextic() -> SingularProfile:
    return SingularProfile(3, 2)


def quartic() -> SingularProfile:
    return SingularProfile(6, 4, n={0: 24}, t={1: 12})


def generic_projection(m: int) -> SingularProfile:
    """Branch data of a generic projection of a smooth degree-``m`` surface in P^3."""
    return SingularProfile(
        m * (m - 1) // 2, m, n={0: m * (m - 1) * (m - 2)}, t={1: m * (m - 1) * (m - 2) * (m - 3) // 2}
    )


@pytest.fixture
def write_profile(tmp_path):
    def write(p: SingularProfile | dict, name: str = "profile.json"):
        path = tmp_path / name
        doc = p.to_json() if isinstance(p, SingularProfile) else p
        path.write_text(json.dumps(doc))
        return str(path)

    return write
