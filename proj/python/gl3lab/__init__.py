"""Python access to the gl3lab core: modular arithmetic, character sums, L-values and the verification suites."""

import json as _json

from ._gl3lab import (
    Error,
    c_eta_bruteforce,
    c_eta_closed_zero,
    delta_detect,
    kloosterman,
    l_value,
    lambda_coefficient,
    mod_inverse,
    ramanujan_sum,
    second_moment,
    shifted_sum,
    zeta,
)
from . import _gl3lab


def delta_verify(Q=20.0, nmax=15):
    return _json.loads(_gl3lab.delta_verify(Q, nmax))


def duality_test(trials=1000, max_dim=50, seed=1):
    return _json.loads(_gl3lab.duality_test(trials, max_dim, seed))


def newton_check(seed=1):
    return _json.loads(_gl3lab.newton_check(seed))
