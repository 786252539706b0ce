from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for helpers.py

from fusionkit import VanishingZError, catalog_models, modular_matrices


@pytest.fixture(scope="session")
def catalog():
    """name -> (ring, twists) for every built-in model."""
    return {name: (ring, twists) for name, ring, twists in catalog_models()}


@pytest.fixture(scope="session")
def catalog_modular(catalog):
    """name -> ModularData for every catalog model with z != 0."""
    out = {}
    for name, (ring, twists) in catalog.items():
        try:
            out[name] = modular_matrices(ring, twists)
        except VanishingZError:
            pass
    return out
