"""Driven-dissipative cat-state simulator (truncated Fock space).

Thin re-export of the compiled core. Matrices are complex numpy arrays; the
two-mode basis index is i_a * N_b + i_b.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import (
    Error,
    NumericalError,
    ValidationError,
    __version__,
    resolve_config as _resolve_config,
    run_scenario as _run_scenario,
)


def resolve_config(config):
    """Validated config with defaults filled in. Accepts a dict or JSON text."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _json.loads(_resolve_config(text))


def run_scenario(config, out_dir, sweep=False):
    text = config if isinstance(config, str) else _json.dumps(config)
    return _run_scenario(text, str(out_dir), sweep)


def dm(psi):
    """|psi><psi| for a state vector."""
    import numpy as np

    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())
