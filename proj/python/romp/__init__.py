"""Robust matching pursuit: estimators, attacks, probes and sweeps.

Instances, probe reports and sweep reports cross the boundary as JSON; this
module turns them into dicts with numpy arrays where it helps.
"""

import json

import numpy as np

from . import _romp
from ._romp import (
    ConvergenceError,
    Error,
    InvalidArgument,
    brute_force,
    justice_pursuit,
    lasso,
    omp,
    romp,
    trimmed_correlations,
    trimmed_inner_product,
)

__all__ = [
    "ConvergenceError", "Error", "InvalidArgument",
    "attack", "brute_force", "generate", "justice_pursuit", "lasso", "omp",
    "probe", "romp", "run_sweep", "trimmed_correlations", "trimmed_inner_product",
]


def _decode(text):
    inst = json.loads(text)
    inst["X"] = np.asarray(inst["X"], dtype=float)
    inst["y"] = np.asarray(inst["y"], dtype=float)
    return inst


def _encode(inst):
    out = dict(inst)
    out["X"] = np.asarray(inst["X"]).tolist()
    out["y"] = np.asarray(inst["y"]).tolist()
    return json.dumps(out)


def generate(n, p, k, n1=0, sigma=0.0, signal="pm_one", design="gaussian", seed=1):
    """Authentic instance as a dict; X and y are numpy arrays."""
    return _decode(_romp.generate(n, p, k, n1, sigma, signal, design, seed))


def attack(instance, name, seed=1, magnitude=None, scale=None, n1=None):
    return _decode(_romp.attack(_encode(instance), name, seed, magnitude, scale, n1))


_PROBES = {
    "max_subgaussian": _romp.probe_max_subgaussian,
    "concentration_scan": _romp.probe_concentration_scan,
    "h_deviation": _romp.probe_h_deviation,
    "bruteforce_failure": _romp.probe_bruteforce_failure,
}


def probe(name, **kwargs):
    return json.loads(_PROBES[name](**kwargs))


def run_sweep(config=None, out_dir=""):
    """config is a dict of overrides on the desk defaults."""
    return json.loads(_romp.run_sweep(json.dumps(config or {}), str(out_dir)))
