"""Shared fixtures: solved pipelines and oracle enumerations are expensive
enough to build once per session."""

from __future__ import annotations

import pytest

from permclass import class_e, class_f, oracle
from permclass.perms import CLASS_E_BASIS, CLASS_F_BASIS

ACCEPTANCE_ORDER = 16


@pytest.fixture(scope="session")
def f_solution():
    return class_f.solve(ACCEPTANCE_ORDER)


@pytest.fixture(scope="session")
def e_solution():
    return class_e.solve(ACCEPTANCE_ORDER)


@pytest.fixture(scope="session")
def f_levels_10():
    """Av(1234,2341) members of each length 1..10, by the oracle generator."""
    return list(oracle.iter_levels(CLASS_F_BASIS, 10))


@pytest.fixture(scope="session")
def e_levels_10():
    """Av(1243,2314) members of each length 1..10, by the oracle generator."""
    return list(oracle.iter_levels(CLASS_E_BASIS, 10))
