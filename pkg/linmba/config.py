import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml

from linmba.tables import CACHE_ENV_VAR

@dataclass(frozen=True)
class Settings:
    """Run-wide defaults. Values come from, in increasing priority: the defaults below, a YAML file, the environment,
    and command-line flags."""
    bits: int = 64
    max_variables: int = 10
    exhaustive_budget: int = 1 << 24
    samples: int = 1000
    workers: Optional[int] = None  # None means one per CPU
    table_cache_dir: Optional[str] = None

    @classmethod
    def from_dict(cls, spec: Dict[str, Any]) -> "Settings":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(spec) - known)
        if unknown:
            raise ValueError('Unknown setting(s): %s' % ", ".join(unknown))
        return cls(**spec)

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Settings":
        spec: Dict[str, Any] = {}
        if path is not None:
            with open(path, 'r') as fh:
                spec = yaml.safe_load(fh) or {}
            if not isinstance(spec, dict):
                raise ValueError('Settings file %s must hold a mapping' % path)
        ret = cls.from_dict(spec)
        cache_dir = os.environ.get(CACHE_ENV_VAR)
        if cache_dir:
            ret = replace(ret, table_cache_dir=cache_dir)
        return ret

    def override(self, **kwargs: Any) -> "Settings":
        """Copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})
