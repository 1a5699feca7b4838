"""Deterministic CSV serialization of sweep, contrast-scan and spectra tables.

Every file starts with a single ``# meta:`` line holding the full resolved
configuration as canonical JSON (sorted keys), followed by the column header
and the data rows in deterministic order.  Floats are written with 17
significant digits, so identical runs produce byte-identical files and the
values round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .sweeps import CmaxRow, DIRECTION_THETA, SweepResult

__all__ = [
    "SWEEP_HEADER",
    "SPECTRA_HEADER",
    "format_float",
    "write_sweep_csv",
    "write_cmax_csv",
    "write_spectra_csv",
]

SWEEP_HEADER = "delta,gamma_diss,theta,g2,log10_g2,occupation,contrast,residual"
SPECTRA_HEADER = "gamma_diss,theta,n,branch,re,im"

_BRANCH_SIGN = {"-": -1.0, "+": 1.0}


def format_float(x: float) -> str:
    """17-significant-digit scientific form (nan/inf render as such)."""
    return "%.16e" % x


def _log10(g2: float) -> float:
    if math.isnan(g2):
        return math.nan
    if g2 <= 0.0:
        return -math.inf
    return math.log10(g2)


def _meta_line(meta: dict) -> str:
    return "# meta: " + json.dumps(meta, sort_keys=True, separators=(",", ":"))


def _write(path, lines: list[str]) -> None:
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_sweep_csv(result: SweepResult, path) -> None:
    """One row per grid point per direction, row-major, forward first."""
    lines = [_meta_line(result.meta), SWEEP_HEADER]
    for record in result.records:
        for direction in record.results:
            fields = (
                record.delta,
                record.gamma_diss,
                direction.theta,
                direction.g2,
                _log10(direction.g2),
                direction.occupation,
                record.contrast,
                direction.residual,
            )
            lines.append(",".join(format_float(x) for x in fields))
    _write(path, lines)


def write_cmax_csv(rows: list[CmaxRow], meta: dict, path) -> None:
    """Contrast-scan table in the sweep schema: two rows (fwd, bwd) per Gamma.

    ``delta`` is the maximizing detuning and ``contrast`` the maximized value.
    """
    lines = [_meta_line(meta), SWEEP_HEADER]
    for row in rows:
        for theta, g2, occ, res in (
            (DIRECTION_THETA["forward"], row.g2_forward,
             row.occupation_forward, row.residual_forward),
            (DIRECTION_THETA["backward"], row.g2_backward,
             row.occupation_backward, row.residual_backward),
        ):
            fields = (row.delta_max, row.gamma_diss, theta, g2, _log10(g2), occ,
                      row.c_max, res)
            lines.append(",".join(format_float(x) for x in fields))
    _write(path, lines)


def write_spectra_csv(records, meta: dict, path) -> None:
    """Dressed-level table; the branch column is encoded as -1 / +1."""
    lines = [_meta_line(meta), SPECTRA_HEADER]
    for r in records:
        fields = (r.gamma_diss, r.theta, float(r.n), _BRANCH_SIGN[r.branch], r.re, r.im)
        lines.append(",".join(format_float(x) for x in fields))
    _write(path, lines)


def spectra_meta(extra: dict | None = None) -> dict:
    from ._version import __version__

    meta = {"tool": "magblock", "version": __version__, "kind": "spectra"}
    if extra:
        meta.update(extra)
    return meta


def cmax_meta(extra: dict | None = None) -> dict:
    from ._version import __version__

    meta = {
        "tool": "magblock",
        "version": __version__,
        "kind": "cmax",
        "coupling_tie": "tau = gamma_diss with mu = nu = 1",
    }
    if extra:
        meta.update(extra)
    return meta
