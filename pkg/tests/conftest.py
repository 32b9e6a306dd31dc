# -*- coding: utf-8 -*-
"""Shared fixtures for the hamsim tests."""

import pytest

from hamsim.faults import default_catalog
from hamsim.layout import MemoryGeometry, builtin_layouts


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def geom():
    return MemoryGeometry(rows=8, cols=32)


@pytest.fixture(scope="session")
def layouts():
    return {x.name: x for x in builtin_layouts()}


@pytest.fixture(scope="session")
def full_results(catalog, geom, layouts):
    """Default-policy campaigns of the five built-in layouts."""
    from hamsim.campaign import run_campaign
    return {name: run_campaign(x, catalog, geom) for name, x in layouts.items()}
