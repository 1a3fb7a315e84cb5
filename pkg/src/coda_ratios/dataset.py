"""Firm-level CSV loading, zero handling, configuration, and group splits.

The CSV dialect is deliberately plain: comma-separated, UTF-8, first row is
the header, '.' as decimal separator, optional quoted fields.  The header
must contain ``firm_id`` plus every configured part; any other column is
kept verbatim as a categorical external variable (e.g. a yes/no brand
flag).

Zeros are a policy decision, negatives are not: a negative magnitude is a
hard error under every policy, because repairing it means restructuring
the accounts upstream (splitting profit into income and expenses, say),
not tweaking a number here.
"""

from __future__ import annotations

import configparser
import csv
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .composition import Composition
from .errors import (
    AllRowsDroppedError,
    ConfigError,
    DuplicateFirmIdError,
    DuplicateLabelError,
    MalformedNumberError,
    MissingColumnError,
    MissingValueError,
    NonPositivePartError,
    TooFewPartsError,
    UnknownLabelError,
    UnknownVariableError,
    ZeroCellError,
)
from .ratios import RatioSpec
from .sbp import PartitionTree, parse_sbp, validate_tree

logger = logging.getLogger(__name__)

_ZERO_MODES = ("reject", "drop_row", "replace")


@dataclass(frozen=True)
class ZeroPolicy:
    """How to treat exact zeros in part columns.

    ``reject`` errors out listing every zero cell; ``drop_row`` removes any
    firm with a zero part; ``replace`` substitutes each zero in a column
    with delta_fraction times the smallest positive value seen in that
    column (the usual detection-limit heuristic), leaving nonzero parts
    untouched since magnitudes are unclosed.
    """

    mode: str = "reject"
    delta_fraction: float = 0.65

    def __post_init__(self):
        if self.mode not in _ZERO_MODES:
            raise ConfigError(
                f"zero policy mode must be one of {', '.join(_ZERO_MODES)}; got {self.mode!r}"
            )
        if not (
            isinstance(self.delta_fraction, (int, float))
            and 0.0 < self.delta_fraction < 1.0
        ):
            raise ConfigError(
                f"delta_fraction must lie strictly between 0 and 1, got {self.delta_fraction!r}"
            )


@dataclass(frozen=True)
class AnalysisConfig:
    """Everything an analysis run needs besides the data itself."""

    parts: tuple[str, ...]
    sbp: str
    standard_ratios: tuple[RatioSpec, ...] = ()
    group_variable: str | None = None
    zero_policy: ZeroPolicy = ZeroPolicy()
    tree: PartitionTree = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise TooFewPartsError(len(parts))
        dupes = sorted({p for p in parts if parts.count(p) > 1})
        if dupes:
            raise DuplicateLabelError(dupes)
        tree = parse_sbp(self.sbp)
        validate_tree(tree, parts)
        for spec in self.standard_ratios:
            unknown = sorted(set(spec.numerator + spec.denominator) - set(parts))
            if unknown:
                raise UnknownLabelError(unknown)
        object.__setattr__(self, "standard_ratios", tuple(self.standard_ratios))
        object.__setattr__(self, "tree", tree)


@dataclass(frozen=True)
class FirmRecord:
    firm_id: str
    composition: Composition
    externals: dict[str, str]


@dataclass(frozen=True)
class FirmDataset:
    """An immutable sector sample: one composition per firm."""

    firms: tuple[FirmRecord, ...]
    part_labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "firms", tuple(self.firms))
        object.__setattr__(self, "part_labels", tuple(self.part_labels))
        seen = set()
        for f in self.firms:
            if f.firm_id in seen:
                raise DuplicateFirmIdError(None, f.firm_id)
            seen.add(f.firm_id)
            if f.composition.labels != self.part_labels:
                raise UnknownLabelError(
                    sorted(set(f.composition.labels) ^ set(self.part_labels))
                )

    @property
    def n(self) -> int:
        return len(self.firms)

    def matrix(self) -> np.ndarray:
        """(n, D) array of magnitudes in part_labels order."""
        return np.array(
            [f.composition.as_array(self.part_labels) for f in self.firms], dtype=float
        )


def apply_zero_policy(rows, part_labels, policy: ZeroPolicy):
    """Resolve zero cells in parsed rows per the policy.

    ``rows`` is a sequence of (firm_id, values) with values aligned to
    part_labels; values must already be non-negative.  Returns a new list
    of rows.  drop_row logs how many firms were removed.
    """
    part_labels = tuple(part_labels)
    rows = [(firm_id, tuple(float(v) for v in values)) for firm_id, values in rows]
    zero_cells = [
        (firm_id, part)
        for firm_id, values in rows
        for part, v in zip(part_labels, values)
        if v == 0.0
    ]
    if not zero_cells:
        return rows
    if policy.mode == "reject":
        raise ZeroCellError(zero_cells)
    if policy.mode == "drop_row":
        bad_firms = {firm_id for firm_id, _ in zero_cells}
        kept = [row for row in rows if row[0] not in bad_firms]
        if not kept:
            raise AllRowsDroppedError(len(rows))
        logger.info("zero policy drop_row removed %d firm(s)", len(bad_firms))
        return kept
    # replace: 0 -> delta_fraction * (column's smallest positive value)
    replacement = {}
    for j, part in enumerate(part_labels):
        column = [values[j] for _, values in rows]
        positives = [v for v in column if v > 0.0]
        if 0.0 in column:
            if not positives:
                raise ZeroCellError(
                    [(firm_id, part) for firm_id, values in rows if values[j] == 0.0],
                    detail="cannot replace zeros: column has no positive values",
                )
            replacement[j] = policy.delta_fraction * min(positives)
    out = []
    for firm_id, values in rows:
        out.append(
            (
                firm_id,
                tuple(replacement[j] if v == 0.0 else v for j, v in enumerate(values)),
            )
        )
    return out


def load_dataset_csv(path, config: AnalysisConfig) -> FirmDataset:
    """Load a firm-per-row CSV and return a validated dataset."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return read_dataset_csv(fh, config)


def read_dataset_csv(fh, config: AnalysisConfig) -> FirmDataset:
    """Like load_dataset_csv but from an open text stream."""
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None:
        raise MissingColumnError("firm_id")
    header = [name.strip() for name in header]
    required = ["firm_id", *config.parts]
    if config.group_variable is not None:
        required.append(config.group_variable)
    for name in required:
        if name not in header:
            raise MissingColumnError(name)
    col = {name: header.index(name) for name in header}
    external_names = [
        name for name in header if name != "firm_id" and name not in config.parts
    ]

    parsed = []  # (line, firm_id, values, externals)
    malformed = []  # (line, column_name, raw)
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        cells = [row[i] if i < len(row) else "" for i in range(len(header))]
        firm_id = cells[col["firm_id"]].strip()
        values = []
        for part in config.parts:
            raw = cells[col[part]]
            try:
                v = float(raw)
            except ValueError:
                v = math.nan
            if not math.isfinite(v):
                malformed.append((line, part, raw))
                v = math.nan
            values.append(v)
        externals = {name: cells[col[name]].strip() for name in external_names}
        parsed.append((line, firm_id, values, externals))

    if malformed:
        raise MalformedNumberError(malformed)

    first_line = {}
    for line, firm_id, _, _ in parsed:
        if firm_id in first_line:
            raise DuplicateFirmIdError(line, firm_id)
        first_line[firm_id] = line

    negatives = [
        (f"{firm_id}:{part}", v)
        for _, firm_id, values, _ in parsed
        for part, v in zip(config.parts, values)
        if v < 0.0
    ]
    if negatives:
        raise NonPositivePartError(negatives)

    rows = [(firm_id, values) for _, firm_id, values, _ in parsed]
    rows = apply_zero_policy(rows, config.parts, config.zero_policy)

    externals_by_firm = {firm_id: ext for _, firm_id, _, ext in parsed}
    firms = tuple(
        FirmRecord(
            firm_id=firm_id,
            composition=Composition(labels=config.parts, values=values),
            externals=externals_by_firm[firm_id],
        )
        for firm_id, values in rows
    )
    return FirmDataset(firms=firms, part_labels=config.parts)


def split_by_group(ds: FirmDataset, variable: str) -> dict[str, FirmDataset]:
    """Partition a dataset by one categorical external variable.

    Groups appear in order of first appearance; each keeps the original
    firm order, so group sizes always sum to ds.n.
    """
    if ds.n == 0:
        return {}
    if not any(variable in f.externals for f in ds.firms):
        raise UnknownVariableError(variable)
    buckets: dict[str, list[FirmRecord]] = {}
    for f in ds.firms:
        if variable not in f.externals:
            raise MissingValueError(f.firm_id, variable)
        buckets.setdefault(f.externals[variable], []).append(f)
    return {
        value: FirmDataset(firms=tuple(records), part_labels=ds.part_labels)
        for value, records in buckets.items()
    }


# ---------------------------------------------------------------------------
# configuration file format


def parse_config(text: str) -> AnalysisConfig:
    """Parse the INI-style analysis configuration.

    ::

        [analysis]
        parts = TA, NCL, CL
        sbp = (TA|(NCL|CL))
        group_variable = brand

        [ratios]
        r1 = TA / NCL + CL
        r2 = NCL / CL

        [zeros]
        mode = replace
        delta_fraction = 0.65

    [ratios] and [zeros] are optional; a ratio value reads
    "<numerator parts> / <denominator parts>" with '+' separating parts.
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # ratio names and part labels are case-sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"bad configuration syntax: {exc}") from exc

    unknown_sections = set(cp.sections()) - {"analysis", "ratios", "zeros"}
    if unknown_sections:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown_sections))}")
    if not cp.has_section("analysis"):
        raise ConfigError("missing [analysis] section")

    analysis = dict(cp.items("analysis"))
    unknown_keys = set(analysis) - {"parts", "sbp", "group_variable"}
    if unknown_keys:
        raise ConfigError(
            f"unknown key(s) in [analysis]: {', '.join(sorted(unknown_keys))}"
        )
    for key in ("parts", "sbp"):
        if key not in analysis:
            raise ConfigError(f"[analysis] is missing required key {key!r}")
    parts = tuple(p.strip() for p in analysis["parts"].split(",") if p.strip())
    group_variable = analysis.get("group_variable", "").strip() or None

    ratios = []
    if cp.has_section("ratios"):
        for name, expr in cp.items("ratios"):
            sides = expr.split("/")
            if len(sides) != 2:
                raise ConfigError(
                    f"ratio {name!r} must be '<num> / <den>' with exactly one '/', got {expr!r}"
                )
            num = tuple(p.strip() for p in sides[0].split("+") if p.strip())
            den = tuple(p.strip() for p in sides[1].split("+") if p.strip())
            ratios.append(RatioSpec(name=name, numerator=num, denominator=den))

    zero_policy = ZeroPolicy()
    if cp.has_section("zeros"):
        zeros = dict(cp.items("zeros"))
        unknown_keys = set(zeros) - {"mode", "delta_fraction"}
        if unknown_keys:
            raise ConfigError(
                f"unknown key(s) in [zeros]: {', '.join(sorted(unknown_keys))}"
            )
        kwargs = {}
        if "mode" in zeros:
            kwargs["mode"] = zeros["mode"].strip()
        if "delta_fraction" in zeros:
            try:
                kwargs["delta_fraction"] = float(zeros["delta_fraction"])
            except ValueError:
                raise ConfigError(
                    f"delta_fraction must be a number, got {zeros['delta_fraction']!r}"
                ) from None
        zero_policy = ZeroPolicy(**kwargs)

    return AnalysisConfig(
        parts=parts,
        sbp=analysis["sbp"].strip(),
        standard_ratios=tuple(ratios),
        group_variable=group_variable,
        zero_policy=zero_policy,
    )


def load_config(path) -> AnalysisConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(config: AnalysisConfig) -> str:
    """Serialize a configuration back to the INI format parse_config reads."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp["analysis"] = {"parts": ", ".join(config.parts), "sbp": config.sbp}
    if config.group_variable is not None:
        cp["analysis"]["group_variable"] = config.group_variable
    if config.standard_ratios:
        cp["ratios"] = {
            spec.name: f"{' + '.join(spec.numerator)} / {' + '.join(spec.denominator)}"
            for spec in config.standard_ratios
        }
    cp["zeros"] = {
        "mode": config.zero_policy.mode,
        "delta_fraction": repr(config.zero_policy.delta_fraction),
    }
    out = io.StringIO()
    cp.write(out)
    return out.getvalue()
