import pytest

from polyapprox.bestapprox import best_approx_sequence
from polyapprox.presets import preset

_SEQ_CACHE = {}


@pytest.fixture(scope="session")
def seq_of():
    """Memoized record chains; several test modules share the same runs."""

    def get(name, n, h_max, **kwargs):
        key = (name, n, h_max, tuple(sorted(kwargs.items())))
        if key not in _SEQ_CACHE:
            _SEQ_CACHE[key] = best_approx_sequence(
                preset(name), n, h_max, **kwargs
            )
        return _SEQ_CACHE[key]

    return get


@pytest.fixture()
def fresh():
    """A new descriptor instance (they carry refinement state)."""
    return preset
