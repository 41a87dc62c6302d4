"""Shared fixtures: built systems and filled tables are cached per session.

Group construction is cheap but table fills are quadratic in |W|, so tests
share one fill per type through the factory fixtures below.
"""

from __future__ import annotations

import pytest

from verma_ext.coxeter import build_system
from verma_ext.rpoly import RTable
from verma_ext.vtable import compute_all

_SYSTEMS: dict[str, object] = {}
_VTABLES: dict[str, object] = {}
_RTABLES: dict[str, object] = {}


@pytest.fixture(scope="session")
def system():
    """Factory returning a memoized CoxeterSystem for a type string."""

    def get(type_text: str):
        key = type_text.upper()
        if key not in _SYSTEMS:
            _SYSTEMS[key] = build_system(type_text)
        return _SYSTEMS[key]

    return get


@pytest.fixture(scope="session")
def vtable(system):
    """Factory returning a fully populated VTable (smallest-descent policy)."""

    def get(type_text: str):
        key = type_text.upper()
        if key not in _VTABLES:
            _VTABLES[key] = compute_all(system(type_text))
        return _VTABLES[key]

    return get


@pytest.fixture(scope="session")
def rtable(system):
    """Factory returning a session-shared RTable (filled lazily by callers)."""

    def get(type_text: str):
        key = type_text.upper()
        if key not in _RTABLES:
            _RTABLES[key] = RTable(system(type_text))
        return _RTABLES[key]

    return get
