"""Resource caps for brute-force enumeration.

Every cap can be overridden through an environment variable so batch runs can
raise or lower them without code changes:

========================  ============================  ==========
variable                  meaning                       default
========================  ============================  ==========
``NBCWS_MODULE_LIMIT``    elements in a Z_d-module BFS  ``2**22``
``NBCWS_GROUP_LIMIT``     ``d**m`` for group sweeps     ``2**24``
``NBCWS_ORACLE_DIM``      ``d**n`` for dense oracles    ``4096``
``NBCWS_VERTEX_LIMIT``    clique-graph vertices         ``2**20``
``NBCWS_ERROR_LIMIT``     errors in one detection sweep ``2**24``
========================  ============================  ==========
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Limits:
    module: int = 2**22
    group: int = 2**24
    oracle_dim: int = 4096
    vertices: int = 2**20
    errors: int = 2**24

    @classmethod
    def from_env(cls) -> Limits:
        base = cls()
        return cls(
            module=_env_int("NBCWS_MODULE_LIMIT", base.module),
            group=_env_int("NBCWS_GROUP_LIMIT", base.group),
            oracle_dim=_env_int("NBCWS_ORACLE_DIM", base.oracle_dim),
            vertices=_env_int("NBCWS_VERTEX_LIMIT", base.vertices),
            errors=_env_int("NBCWS_ERROR_LIMIT", base.errors),
        )

    def with_(self, **changes: int) -> Limits:
        return replace(self, **changes)


_current = Limits.from_env()


def get_limits() -> Limits:
    return _current


def set_limits(limits: Limits) -> None:
    global _current
    _current = limits
