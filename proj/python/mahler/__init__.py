"""Hermite-Pade approximations to pairs of Mahler functions."""

import json
from fractions import Fraction

from . import _mahler
from ._mahler import MahlerError, run

__all__ = ["MahlerError", "run", "series", "hp", "detsweep", "bound", "iterate", "eval_forms", "verify"]


def series(family, n):
    """First n coefficients of a series as Python ints."""
    return [int(c) for c in json.loads(_mahler.series_json(family, n))["coefficients"]]


def hp(pair, k, shape=None):
    """Approximation for the pair's canonical shape (or a rule such as 'k,k+1,k-1')."""
    d = json.loads(_mahler.hp_json(pair, k, shape))
    for name in ("A", "B", "C"):
        d[name] = [int(c) for c in d[name]]
    return d


def detsweep(pair, kmin, kmax, modulus=0, jobs=0):
    d = json.loads(_mahler.detsweep_json(pair, kmin, kmax, str(modulus), jobs))
    return [int(v) for v in d["values"]]


def bound(pair, lam="0", allow_outside=False):
    d = json.loads(_mahler.bound_json(pair, str(lam), allow_outside))
    d["mu_bound"] = Fraction(d["mu_bound"])
    if d["muL_bound"] is not None:
        d["muL_bound"] = Fraction(d["muL_bound"])
    return d


def iterate(pair, k, m):
    return json.loads(_mahler.iterate_json(pair, k, m))


def eval_forms(pair, k, m, a, b, precision_bits=256):
    d = json.loads(_mahler.eval_json(pair, k, m, a, b, precision_bits))
    d["h"] = [int(h) for h in d["h"]]
    d["Q"] = int(d["Q"])
    return d


def verify(path, jobs=0):
    return json.loads(_mahler.verify_json(path, jobs))
