"""Duals and optimality certificates for convex programs with countably many constraints.

Instances come from ``builtin(name)``, ``load_instance("builtin:NAME" | path)``
or ``parse_instance(text)``. Solver results are plain dicts with the same
layout as the command-line reports. Multipliers are dicts such as
``{"space": "l1", "support": [0.0], "lambda_inf": 1.0}``.
"""

import json as _json

from . import _core
from ._core import Error, Instance, builtin, builtin_names, load_instance, parse_instance

__all__ = [
    "Error",
    "Instance",
    "builtin",
    "builtin_names",
    "load_instance",
    "parse_instance",
    "solve_primal",
    "solve_dual",
    "dual_value",
    "transfer_D_to_Dm",
    "duality_chain",
    "slater_check",
    "value_function_scan",
    "minimax_check",
    "complementary_slackness",
    "lagrangian_attainment",
    "fuzzy_kkt",
]


def _inst(x):
    return builtin(x) if isinstance(x, str) else x


def _mult(m):
    return m if isinstance(m, str) else _json.dumps(m)


def solve_primal(inst, eps=0.0, k_trunc=1):
    return _json.loads(_core.solve_primal(_inst(inst), eps, k_trunc))


def solve_dual(inst, form="d", m=0, horizon=32):
    return _json.loads(_core.solve_dual(_inst(inst), form, m, horizon))


def dual_value(inst, mult, m=0):
    return _json.loads(_core.dual_value(_inst(inst), _mult(mult), m))


def transfer_D_to_Dm(mult, m):
    return _json.loads(_core.transfer_D_to_Dm(_mult(mult), m))


def duality_chain(inst, m_list=(0, 3), horizon=32):
    return _json.loads(_core.duality_chain(_inst(inst), list(m_list), horizon))


def slater_check(inst):
    return _json.loads(_core.slater_check(_inst(inst)))


def value_function_scan(inst, eps_list=(1.0, 0.5, 0.1, 0.01)):
    return _json.loads(_core.value_function_scan(_inst(inst), list(eps_list)))


def minimax_check(inst, n=32):
    return _json.loads(_core.minimax_check(_inst(inst), n))


def complementary_slackness(inst, x_bar, mult, m=None):
    return _json.loads(_core.complementary_slackness(_inst(inst), list(x_bar), _mult(mult), m))


def lagrangian_attainment(inst, x_bar, mult, m=None):
    return _json.loads(_core.lagrangian_attainment(_inst(inst), list(x_bar), _mult(mult), m))


def fuzzy_kkt(inst, form, x_bar, mult, m=0, eps=1e-6, cap=5, n=None):
    """Fuzzy multiplier certificate for form "d" or "dm", rechecked from its terms."""
    return _json.loads(_core.fuzzy_kkt(_inst(inst), form, list(x_bar), _mult(mult), m, eps, cap, n))
