import json

import pytest

from quantumness.utils import load_config


@pytest.fixture()
def write_ensemble(tmp_path):
    """Writes an ensemble document and returns the path as a string."""

    def _write(document, name="ensemble.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return _write

@pytest.fixture()
def two_state_file(write_ensemble):
    """Pair with overlap 0.6 and equal priors."""
    return write_ensemble(
        {
            "dimension": 2,
            "states": [[[1.0, 0.0], [0.0, 0.0]], [[0.6, 0.0], [0.8, 0.0]]],
            "probs": [0.5, 0.5],
        }
    )

@pytest.fixture()
def single_state_file(write_ensemble):
    return write_ensemble(
        {"dimension": 2, "states": [[[0.6, 0.0], [0.0, 0.8]]]}, "single.json"
    )

@pytest.fixture()
def basis_file(write_ensemble):
    return write_ensemble(
        {
            "dimension": 3,
            "states": [
                [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
            ],
            "probs": [0.2, 0.3, 0.5],
        },
        "basis.json",
    )


@pytest.fixture()
def write_config(tmp_path):
    """Writes the packaged configuration with some sections patched."""

    def _write(**sections):
        config = load_config()
        for name, values in sections.items():
            config[name].update(values)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        return str(path)

    return _write
