import json

import pytest


@pytest.fixture()
def write_document(tmp_path):
    """Writes a document to a JSON file and returns its path."""

    def _write(document, name="ensemble.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path

    return _write


@pytest.fixture()
def two_state_document():
    """Equiprobable states with overlap 0.6 in the file schema."""
    return {
        "dimension": 2,
        "states": [[[1.0, 0.0], [0.0, 0.0]], [[0.6, 0.0], [0.8, 0.0]]],
        "probs": [0.5, 0.5],
    }
