"""Angular spectra and critical crystal length for type-I SPDC."""

import os as _os

_presets = _os.path.join(_os.path.dirname(__file__), "presets")
if "SPDC_ANGULAR_PRESET_DIR" not in _os.environ and _os.path.isdir(_presets):
    _os.environ["SPDC_ANGULAR_PRESET_DIR"] = _presets

from ._spdc_angular import *  # noqa: E402,F401,F403
from ._spdc_angular import Error, ConfigError, DomainError, NumericalError, IoError, Scenario  # noqa: E402,F401
