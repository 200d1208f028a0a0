import json
import math
import pathlib

import pytest

from twophase_qw import CoinParameters, evolve, make_initial_state

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def reference_weight(x):
    """Closed rational form of the weight at sigma_plus=3pi/2, sigma_minus=pi,
    initial state (1, 0): 2(1 - x^3 + x^2 - x) / (x^2 + 4)."""
    return 2.0 * (1.0 - x**3 + x**2 - x) / (x**2 + 4.0)


@pytest.fixture(scope="session")
def example_params():
    return CoinParameters(3.0 * math.pi / 2.0, math.pi)


@pytest.fixture(scope="session")
def example_init():
    return make_initial_state(1.0, 0.0)


@pytest.fixture(scope="session")
def frozen_tuples():
    """The versioned random parameter tuples used by the property sweeps."""
    rows = json.loads((FIXTURES / "random_tuples.json").read_text())
    return [
        (
            CoinParameters(r["sigma_plus"], r["sigma_minus"]),
            make_initial_state(
                complex(r["alpha_re"], r["alpha_im"]),
                complex(r["beta_re"], r["beta_im"]),
            ),
        )
        for r in rows
    ]


@pytest.fixture(scope="session")
def evolved_10k(example_params, example_init):
    """The t = 10^4 walk state, shared by the long-horizon tests."""
    return evolve(example_params, example_init, 10_000)
