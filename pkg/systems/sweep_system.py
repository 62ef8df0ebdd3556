"""
Sweep System - Parameter sweeps over n_th or C, CSV output and thresholds
"""
import csv
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np
from scipy.optimize import brentq

from measures.correlations import SubsystemKind, both_subsystems
from model.params import SystemParams
from model.steady_state import closed_form_blocks
from utils import event_log
from utils.config_manager import get_config
from utils.errors import InvalidParameter, OptocorrError, SweepError

SWEEP_VARIABLES = ("nth", "coop")

CSV_HEADER = ("x", "eof_mech", "gqd_mech", "qc_mech", "eof_opt", "gqd_opt", "qc_opt")

# Root brackets for find_threshold
THRESHOLD_BRACKETS = {"nth": (0.0, 1000.0), "coop": (0.0, 1000.0)}


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep over n_th or C.

    Attributes:
        variable: 'nth' or 'coop'
        start, stop: Abscissa range, start < stop
        points: Number of uniformly spaced rows (>= 2)
        fixed: SystemParams for the other fields; the swept field is ignored
        subsystems: SubsystemKinds shown in summaries (the CSV always has both)
    """
    variable: str
    start: float
    stop: float
    points: int
    fixed: SystemParams
    subsystems: frozenset = field(default_factory=lambda: frozenset(SubsystemKind))

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise InvalidParameter(f"Sweep variable must be one of {SWEEP_VARIABLES}, got '{self.variable}'")
        if not isinstance(self.fixed, SystemParams):
            raise InvalidParameter("fixed must be a SystemParams instance")
        if isinstance(self.points, bool) or not isinstance(self.points, (int, np.integer)) or self.points < 2:
            raise InvalidParameter(f"points must be an integer >= 2, got {self.points!r}")
        if not self.start < self.stop:
            raise InvalidParameter(f"start ({self.start}) must be smaller than stop ({self.stop})")
        if not self.subsystems:
            raise InvalidParameter("At least one subsystem must be selected")
        # Both ends must be valid parameter values
        for x in (self.start, self.stop):
            try:
                self.fixed.with_value(self.variable, x)
            except InvalidParameter as e:
                raise SweepError(f"Invalid sweep bound {self.variable}={x}: {e}", x=x) from e

    def abscissae(self):
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    x: float
    eof_mech: float
    gqd_mech: float
    qc_mech: float
    eof_opt: float
    gqd_opt: float
    qc_opt: float

    def values(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def as_dict(self, subsystems=None):
        """Row as a dict, optionally restricted to the columns of some subsystems."""
        row = dict(zip(CSV_HEADER, self.values()))
        if subsystems is None:
            return row
        keep = {kind.short for kind in subsystems}
        return {k: v for k, v in row.items() if k == "x" or k.rsplit("_", 1)[1] in keep}


# Presets for the n_th sweeps (fig2*) and the cooperativity sweeps (fig3*);
# panels a/b show the mechanical pair and c/d the optical pair.
PRESETS = {
    "fig2a": dict(variable="nth", start=0.0, stop=30.0, points=121,
                  coop=34.0, squeeze=1.0, nth=0.0, damping_ratio=0.05, panel=SubsystemKind.MECHANICAL),
    "fig2b": dict(variable="nth", start=0.0, stop=30.0, points=121,
                  coop=34.0, squeeze=1.5, nth=0.0, damping_ratio=0.05, panel=SubsystemKind.MECHANICAL),
    "fig2c": dict(variable="nth", start=0.0, stop=30.0, points=121,
                  coop=34.0, squeeze=1.0, nth=0.0, damping_ratio=0.05, panel=SubsystemKind.OPTICAL),
    "fig2d": dict(variable="nth", start=0.0, stop=30.0, points=121,
                  coop=34.0, squeeze=1.5, nth=0.0, damping_ratio=0.05, panel=SubsystemKind.OPTICAL),
    "fig3a": dict(variable="coop", start=0.0, stop=100.0, points=101,
                  coop=0.0, squeeze=1.5, nth=1.0, damping_ratio=0.05, panel=SubsystemKind.MECHANICAL),
    "fig3b": dict(variable="coop", start=0.0, stop=100.0, points=101,
                  coop=0.0, squeeze=1.5, nth=2.0, damping_ratio=0.05, panel=SubsystemKind.MECHANICAL),
    "fig3c": dict(variable="coop", start=0.0, stop=100.0, points=101,
                  coop=0.0, squeeze=1.5, nth=1.0, damping_ratio=0.05, panel=SubsystemKind.OPTICAL),
    "fig3d": dict(variable="coop", start=0.0, stop=100.0, points=101,
                  coop=0.0, squeeze=1.5, nth=2.0, damping_ratio=0.05, panel=SubsystemKind.OPTICAL),
}


def preset_spec(name):
    """Build the SweepSpec of a named preset.

    Args:
        name: One of PRESETS

    Returns:
        SweepSpec
    """
    if name not in PRESETS:
        raise InvalidParameter(f"Unknown preset '{name}', expected one of {sorted(PRESETS)}")
    preset = PRESETS[name]
    fixed = SystemParams(coop=preset["coop"], squeeze=preset["squeeze"],
                         nth=preset["nth"], damping_ratio=preset["damping_ratio"])
    return SweepSpec(preset["variable"], preset["start"], preset["stop"], preset["points"],
                     fixed, frozenset({preset["panel"]}))


def describe_preset(name):
    """One-line description of a preset for listings."""
    preset = PRESETS[name]
    swept = preset["variable"]
    held = ", ".join(f"{key}={preset[key]:g}" for key in ("coop", "squeeze", "nth", "damping_ratio")
                     if key != swept)
    return (f"{name}: {swept} {preset['start']:g}..{preset['stop']:g} "
            f"({preset['points']} points), {held}, {preset['panel'].value} panel")


def compute_row(spec, x):
    """Evaluate one sweep row at abscissa x.

    Raises:
        SweepError: Any library error, re-raised with the failing abscissa
    """
    x = float(x)
    try:
        measures = both_subsystems(spec.fixed.with_value(spec.variable, x))
    except OptocorrError as e:
        raise SweepError(f"Row {spec.variable}={x!r} failed: {e}", x=x) from e
    mech = measures[SubsystemKind.MECHANICAL]
    opt = measures[SubsystemKind.OPTICAL]
    return SweepRow(x, mech.eof, mech.gqd, mech.qc, opt.eof, opt.gqd, opt.qc)


def run_sweep(spec, workers=None):
    """Evaluate every row of a sweep, in ascending abscissa order.

    Args:
        spec: SweepSpec
        workers: Worker threads (default from the sweep config section)

    Returns:
        list[SweepRow]
    """
    if workers is None:
        workers = int(get_config()["sweep"]["workers"])
    xs = spec.abscissae()
    event_log.log_event("sweep_started", variable=spec.variable, start=spec.start,
                        stop=spec.stop, points=spec.points, workers=workers)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda x: compute_row(spec, x), xs))
    else:
        rows = [compute_row(spec, x) for x in xs]

    event_log.log_event("sweep_finished", variable=spec.variable, rows=len(rows))
    return rows


def format_rows(rows, float_format=None):
    """Render rows as CSV text with the fixed header and '\\n' line endings."""
    if float_format is None:
        float_format = get_config()["sweep"]["float_format"]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([format(v, float_format) for v in row.values()])
    return buffer.getvalue()


def write_csv(rows, path, float_format=None):
    """Write rows to a CSV file.

    Args:
        rows: Sequence of SweepRow
        path: Output file
        float_format: Format spec for every value (default from config)
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(format_rows(rows, float_format))
    event_log.log_event("sweep_csv_written", level=logging.INFO, path=str(path), rows=len(rows))


def separability_margin(p, kind):
    """s - |k| - 1/2 of one subsystem; negative while the pair is entangled."""
    blocks = closed_form_blocks(p)
    if kind is SubsystemKind.MECHANICAL:
        s, k = blocks.v1, blocks.v13
    else:
        s, k = blocks.v2, blocks.v57
    return s - abs(k) - 0.5


def find_threshold(variable, fixed, kind, bracket=None, xtol=1e-12):
    """Value of n_th or C where a subsystem's entanglement of formation vanishes.

    Args:
        variable: 'nth' or 'coop'
        fixed: SystemParams for the other fields
        kind: SubsystemKind
        bracket: (lo, hi) search interval (default THRESHOLD_BRACKETS)
        xtol: Absolute root tolerance

    Returns:
        float
    """
    if variable not in SWEEP_VARIABLES:
        raise InvalidParameter(f"Threshold variable must be one of {SWEEP_VARIABLES}, got '{variable}'")
    lo, hi = bracket if bracket is not None else THRESHOLD_BRACKETS[variable]

    def margin(x):
        return separability_margin(fixed.with_value(variable, x), kind)

    m_lo, m_hi = margin(lo), margin(hi)
    if np.sign(m_lo) == np.sign(m_hi):
        raise SweepError(f"No separability threshold for the {kind.value} pair with "
                         f"{variable} in [{lo:g}, {hi:g}]", x=lo)
    root = brentq(margin, lo, hi, xtol=xtol)
    event_log.log_event("sweep_threshold_found", variable=variable, subsystem=kind.short, value=root)
    return float(root)
