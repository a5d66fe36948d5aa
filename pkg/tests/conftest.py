import pytest

from tverberg import dominance_profile, gen_super_dominant

_CACHE: dict = {}


@pytest.fixture(scope="session")
def super_instance():
    """Cached (SuperDominantSequence, DominanceProfile) pairs keyed by (d, r, q).

    Construction verifies dominance of the long witness, which is the pricey
    part; sharing one copy across the whole session keeps the suite fast.
    """

    def get(d: int, r: int, q=None):
        key = (d, r, q)
        if key not in _CACHE:
            sup = gen_super_dominant(d, r, q)
            profile = dominance_profile(sup.lifted, sup.q)
            _CACHE[key] = (sup, profile)
        return _CACHE[key]

    return get
