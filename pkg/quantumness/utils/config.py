"""Load the packaged configuration file."""
# Standard
import copy
import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

# Local
from quantumness.errors import InvalidInputError

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "config.json"


@lru_cache(maxsize=None)
def _read_config(path: Path) -> dict:
    try:
        content = path.read_text()
    except OSError as e:
        raise InvalidInputError(f"Could not read configuration file {path}: {e}") from e
    try:
        return json.loads(content)
    except json.JSONDecodeError as e:
        raise InvalidInputError(
            f"Configuration file {path} is not valid JSON "
            f"(line {e.lineno}, column {e.colno}): {e.msg}"
        ) from e


def load_config(path: Optional[Union[str, Path]] = None) -> dict:
    """Load the configuration as a python dictionary.

    Parameters
    ----------
    path : str or Path, optional
        Alternative configuration file. Defaults to the packaged
        ``quantumness/config/config.json``.

    Returns
    -------
    dict
        Sections ``solver``, ``limits``, ``tolerances`` and ``oracle``.
        The caller owns the returned copy.
    """
    config_path = CONFIG_PATH if path is None else Path(path).resolve()
    logger.debug(f"Loading configuration from {config_path}")
    return copy.deepcopy(_read_config(config_path))


def tolerance(name: str) -> float:
    """Return one entry of the ``tolerances`` section."""
    return float(load_config()["tolerances"][name])


def limit(name: str) -> int:
    """Return one entry of the ``limits`` section."""
    return int(load_config()["limits"][name])
