import logging
from pathlib import Path

import pytest

from cerf_io import load_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def _reset_project_logger():
    """configure_logging stops propagation; undo it so caplog sees records."""
    yield
    root = logging.getLogger("cerf_forge")
    for handler in [h for h in root.handlers if getattr(h, "_cerf_forge", False)]:
        root.removeHandler(handler)
    root.setLevel(logging.NOTSET)
    root.propagate = True


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load():
    """Payload of a fixture document by file stem."""

    def _load(stem: str):
        return load_document(FIXTURES / f"{stem}.json").payload

    return _load
