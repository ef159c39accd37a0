"""Content-addressed result cache and exact JSON serialization."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .cyclotomic import Cyclotomic

ENV_VAR = "INERTIA_CACHE_DIR"


def to_jsonable(x):
    """Exact JSON: rationals become {num, den}; floats are refused."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, Cyclotomic):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return to_jsonable(x.to_json())
    if isinstance(x, float):
        raise TypeError("floating point value in an exact report")
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj):
    return json.dumps(obj, separators=(",", ":"))


def canonical(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def cache_key(group_serialization, operation, params, version=__version__):
    payload = canonical({"group": group_serialization, "operation": operation,
                         "params": params, "version": version})
    return hashlib.sha256(payload.encode()).hexdigest()


def default_cache_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "inertia"


class ResultCache:
    """One JSON file per key; writes go to a temp file then get renamed."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, key):
        return self.root / key[:2] / f"{key}.json"

    def get(self, key):
        try:
            return json.loads(self.path(key).read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key, value):
        target = self.path(key)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(dumps(value))
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
