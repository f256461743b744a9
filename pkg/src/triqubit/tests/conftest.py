import json

import numpy as np
import pytest

from triqubit.bases import canonical_cbupb
from triqubit.productsearch import SearchConfig


@pytest.fixture
def cfg():
    return SearchConfig(restarts=16, max_iters=500, tol=1e-12, seed=42, progress=False)


@pytest.fixture(scope="session")
def canonical():
    return canonical_cbupb()


@pytest.fixture
def state_file(tmp_path):
    """Write an amplitude list as a triqubit-state/1 file."""
    def write(amps, name="state.json"):
        a = np.asarray(amps, dtype=complex)
        p = tmp_path / name
        p.write_text(json.dumps({"schema": "triqubit-state/1",
                                 "amplitudes": [[float(z.real), float(z.imag)] for z in a]}))
        return p
    return write


@pytest.fixture
def basis_file(tmp_path):
    def write(rows, name="basis.json", kind=None):
        payload = {"schema": "triqubit-basis/1",
                   "states": [[[float(complex(z).real), float(complex(z).imag)] for z in r] for r in rows]}
        if kind:
            payload["kind"] = kind
        p = tmp_path / name
        p.write_text(json.dumps(payload))
        return p
    return write
