"""Resource limits, overridable through the CYCLODIFF_LIMITS environment variable.

CYCLODIFF_LIMITS holds a JSON object whose keys match Limits fields, e.g.

    CYCLODIFF_LIMITS='{"gb_max_spairs": 500000, "gb_timeout": 60}'

Unknown keys are rejected so typos do not silently keep defaults.
"""

from __future__ import annotations

import dataclasses
import json
import os

from .errors import CyclodiffError


@dataclasses.dataclass(frozen=True)
class Limits:
    field_q_max: int = 2 ** 20          # largest allowed field size
    cyclotomic_n_max: int = 1000        # largest root order for reduced CycInt rings
    reduction_n_max: int = 2048         # internal count-vector reductions go higher:
                                        # a scan at q <= 2000 meets class sums of
                                        # order q - 1
    polysys_m_max: int = 40             # largest system order generated
    scan_q_max: int = 10 ** 6           # largest scan bound
    gauss_check_m_max: int = 64         # check_gauss skipped (with notice) above this m
    jacobi_direct_m_max: int = 64       # per-sum Jacobi row evaluation below, regrouped above
    gb_max_spairs: int = 200_000
    gb_max_coeff_bits: int = 4096
    gb_timeout: float = 1800.0          # seconds, per basis computation


_cached: Limits | None = None


def current_limits() -> Limits:
    """Return the active limits (environment applied once, then cached)."""
    global _cached
    if _cached is None:
        _cached = _load()
    return _cached


def reload_limits() -> Limits:
    """Re-read CYCLODIFF_LIMITS; used by tests and the CLI."""
    global _cached
    _cached = _load()
    return _cached


def _load() -> Limits:
    raw = os.environ.get("CYCLODIFF_LIMITS", "")
    if not raw.strip():
        return Limits()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CyclodiffError(f"CYCLODIFF_LIMITS is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CyclodiffError("CYCLODIFF_LIMITS must be a JSON object")
    known = {f.name for f in dataclasses.fields(Limits)}
    bad = sorted(set(data) - known)
    if bad:
        raise CyclodiffError(f"unknown limit keys: {', '.join(bad)}")
    for key, value in data.items():
        if not isinstance(value, (int, float)) or value <= 0:
            raise CyclodiffError(f"limit {key} must be a positive number")
    return Limits(**data)
