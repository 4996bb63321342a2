"""Configuration management"""

import json
import os
from typing import Any, Dict

from .errors import ConfigError


def _coerce(key: str, raw: Any, default: Any) -> Any:
    """Coerce a raw value to the type of its default"""
    if raw is None or default is None:
        if isinstance(raw, str) and raw.strip().lower() in ("", "none", "null"):
            return None
        if default is None and isinstance(raw, str):
            try:
                return int(raw)
            except ValueError:
                raise ConfigError(f"setting '{key}' expects an integer, got '{raw}'")
        return raw
    if isinstance(default, bool):
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in ("true", "yes", "on", "1"):
            return True
        if text in ("false", "no", "off", "0"):
            return False
        raise ConfigError(f"setting '{key}' expects true/false, got '{raw}'")
    try:
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"setting '{key}' expects {type(default).__name__}, got '{raw}'")
    return str(raw)


class ConfigManager:
    """Manages fcnet configuration stored as `key = value` text or JSON"""

    DEFAULT_CONFIG = {
        "format": "csv",
        "channels": None,
        "header": False,
        "sample_rate": 1000.0,
        "window_size": 10000,
        "kinds": "correlation",
        "methods": "A,B,C,D",
        "threshold": 0.0,
        "seed": 0,
        "out": "fcnet_out",
        "plots": False,
        "anticorr_mode": "weighted",
        "sa_steps": 400,
        "sa_samples": 500,
        "sa_t0": 1.0,
        "sa_tf": 1e-3,
        "sa_patience": None,
        "band": "1:100",
        "segment_len": None,
        "overlap": 0.5,
        "workers": 1,
        "k_max": 8,
        "betweenness": "weighted",
        "modularity_weighting": "weight",
        "sa_warm_start": "random",
        "save_matrices": False,
        "dump_coords": False,
        "verbose_traces": False,
    }

    def __init__(self, config_path: str = "fcnet.conf"):
        self.config_path = config_path
        self.config = self._load_config()

    @property
    def is_json(self) -> bool:
        return self.config_path.endswith(".json")

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file, or defaults when there is none"""
        if not os.path.exists(self.config_path):
            return self.DEFAULT_CONFIG.copy()
        try:
            with open(self.config_path, "r") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read config file {self.config_path}: {e}")
        raw = self._parse_json(text) if self.is_json else self._parse_text(text)
        config = self.DEFAULT_CONFIG.copy()
        for key, value in raw.items():
            config[key] = self._validated(key, value)
        return config

    def _parse_json(self, text: str) -> Dict[str, Any]:
        try:
            data = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as e:
            raise ConfigError(f"{self.config_path}, line {e.lineno}: {e.msg}")
        if not isinstance(data, dict):
            raise ConfigError(f"{self.config_path}: expected a JSON object")
        return data

    def _parse_text(self, text: str) -> Dict[str, Any]:
        data = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{self.config_path}, line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in self.DEFAULT_CONFIG:
                raise ConfigError(f"{self.config_path}, line {lineno}: unknown setting '{key}'")
            data[key] = value
        return data

    def _validated(self, key: str, value: Any) -> Any:
        if key not in self.DEFAULT_CONFIG:
            raise ConfigError(f"unknown setting '{key}'")
        return _coerce(key, value, self.DEFAULT_CONFIG[key])

    def _save_config(self):
        """Save configuration to file"""
        try:
            with open(self.config_path, "w") as f:
                if self.is_json:
                    json.dump(self.config, f, indent=2)
                else:
                    for key, value in self.config.items():
                        f.write(f"{key} = {'' if value is None else value}\n")
        except OSError as e:
            raise ConfigError(f"cannot write config file {self.config_path}: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value"""
        return self.config.get(key, default)

    def set(self, key: str, value: Any):
        """Set configuration value"""
        self.config[key] = self._validated(key, value)
        self._save_config()

    def get_all(self) -> Dict[str, Any]:
        """Get all configuration"""
        return self.config.copy()

    def reset(self):
        """Reset to default configuration"""
        self.config = self.DEFAULT_CONFIG.copy()
        self._save_config()
