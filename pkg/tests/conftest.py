"""Pytest configuration and fixtures."""

import os
from pathlib import Path
from typing import Generator

import pytest

from app.algebra.field import Field
from app.config import DEFAULT_PRIME, get_settings

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch) -> Generator:
    """Isolate every test from MULTBOUND_* variables and the settings cache."""
    for name in list(os.environ):
        if name.startswith("MULTBOUND_"):
            monkeypatch.delenv(name)
    monkeypatch.chdir(Path(__file__).resolve().parent.parent)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def qq() -> Field:
    return Field.rational()


@pytest.fixture
def gf() -> Field:
    return Field.prime(DEFAULT_PRIME)


@pytest.fixture(params=["rational", "prime"])
def any_field(request) -> Field:
    if request.param == "rational":
        return Field.rational()
    return Field.prime(DEFAULT_PRIME)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR
