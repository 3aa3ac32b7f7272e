"""CSV ingestion, manifests and the bundled reference datasets.

This is the only module that touches the filesystem. Every bundled dataset
is a ``<id>.csv`` file with a ``<id>.json`` manifest beside it; files keep
the source's native units (percent, billions, ...) and conversion to
fractions happens here, at load time, driven by the manifest.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Union

from .errors import (
    DataError,
    DuplicateYear,
    InsufficientData,
    InvalidValue,
    NotFound,
    ParseError,
)
from .series import AnnualSeries, Metric, OtherMetric, ShareMetric, parse_metric
from .transfer import EconomyYear

SERIES_HEADER = "year,value"
ECONOMY_HEADER = "year,gdp_real,employment,gdp_agri_real,employment_agri"
SECTOR_HEADER = "sector,gdp_billion,employment_million,gdp_per_employee_thousand"
DATA_ENV = "SECTORSHIFT_DATA"

PROVENANCES = ("transcribed", "derived", "assembled")


@dataclass(frozen=True)
class DatasetManifest:
    id: str
    country: str
    metric: Metric
    unit: str
    source: str
    provenance: str = "transcribed"
    kind: str = "series"
    base_year: int | None = None
    notes: str = ""
    path: Path | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "metric", parse_metric(self.metric))
        if not self.id:
            raise InvalidValue("manifest id is empty")
        if not self.unit.strip():
            raise InvalidValue(f"{self.id}: unit is empty")
        if not self.source.strip():
            raise InvalidValue(f"{self.id}: source is empty")
        if self.provenance not in PROVENANCES:
            raise InvalidValue(f"{self.id}: unknown provenance {self.provenance!r}")
        if self.kind not in ("series", "economy", "sectors"):
            raise InvalidValue(f"{self.id}: unknown kind {self.kind!r}")

    @classmethod
    def from_json(cls, data: dict[str, Any], path: Path | None = None) -> DatasetManifest:
        known = {"id", "country", "metric", "unit", "source", "provenance", "kind", "base_year", "notes"}
        missing = {"id", "country", "metric", "unit", "source"} - data.keys()
        if missing:
            raise InvalidValue(f"manifest missing keys: {sorted(missing)}")
        extra = {k: v for k, v in data.items() if k not in known}
        return cls(**{k: v for k, v in data.items() if k in known}, path=path, extra=extra)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "country": self.country,
            "metric": self.metric.value,
            "unit": self.unit,
        }
        if self.base_year is not None:
            out["base_year"] = self.base_year
        out.update(source=self.source, provenance=self.provenance, kind=self.kind)
        if self.notes:
            out["notes"] = self.notes
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class EconomyTable:
    country: str
    rows: tuple[EconomyYear, ...]

    def __post_init__(self) -> None:
        rows = tuple(sorted(self.rows, key=lambda r: r.year))
        for a, b in zip(rows, rows[1:]):
            if a.year == b.year:
                raise DuplicateYear(a.year)
        object.__setattr__(self, "rows", rows)

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(r.year for r in self.rows)

    def row(self, year: int) -> EconomyYear:
        for r in self.rows:
            if r.year == year:
                return r
        raise NotFound(f"no row for {year}")


@dataclass(frozen=True)
class SectorRow:
    sector: str
    gdp_billion: float
    employment_million: float
    gdp_per_employee_thousand: float


@dataclass(frozen=True)
class SectorTable:
    country: str
    year: int | None
    rows: tuple[SectorRow, ...]

    def row(self, sector: str) -> SectorRow:
        for r in self.rows:
            if r.sector == sector:
                return r
        raise NotFound(f"no sector {sector!r}")


Dataset = Union[AnnualSeries, EconomyTable, SectorTable]


def _data_lines(text: str) -> Iterable[tuple[int, str]]:
    """Yield ``(line_number, line)`` skipping leading comments and blank lines."""
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        yield num, line


def _split_header(text: str, header: str, path: object) -> list[tuple[int, str]]:
    lines = list(_data_lines(text))
    seen_header = False
    body = []
    for num, line in lines:
        if not seen_header:
            if line.startswith("#"):
                continue
            if line != header:
                raise ParseError(num, f"expected header {header!r} in {path}, got {line!r}")
            seen_header = True
            continue
        body.append((num, line))
    if not seen_header:
        raise ParseError(1, f"missing header {header!r} in {path}")
    return body


def _read_text(path: str | os.PathLike) -> str:
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def _parse_float(token: str, num: int) -> float:
    try:
        v = float(token)
    except ValueError:
        raise ParseError(num, f"not a number: {token!r}") from None
    if not math.isfinite(v):
        raise InvalidValue(f"line {num}: non-finite value {token!r}")
    return v


def _parse_year(token: str, num: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(num, f"not an integer year: {token!r}") from None


def _convert_units(values: list[float], manifest: DatasetManifest | None) -> tuple[list[float], str]:
    if manifest is None:
        return values, ""
    unit = manifest.unit
    if isinstance(manifest.metric, ShareMetric) and unit.lower().startswith("percent"):
        return [v / 100.0 for v in values], "fraction" + unit[len("percent"):]
    return values, unit


def parse_series_text(text: str, manifest: DatasetManifest | None = None, source: object = "<text>") -> AnnualSeries:
    points: dict[int, float] = {}
    for num, line in _split_header(text, SERIES_HEADER, source):
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(num, f"expected 2 fields, got {len(parts)}")
        year = _parse_year(parts[0].strip(), num)
        value = _parse_float(parts[1].strip(), num)
        if year in points:
            raise DuplicateYear(year)
        points[year] = value
    years = sorted(points)
    values, unit = _convert_units([points[y] for y in years], manifest)
    meta: dict[str, Any] = {}
    if manifest is not None:
        meta = {"country": manifest.country, "metric": manifest.metric, "unit": unit}
    return AnnualSeries(tuple(years), tuple(values), **meta)


def parse_series_csv(path: str | os.PathLike, manifest: DatasetManifest | None = None) -> AnnualSeries:
    """Read a ``year,value`` CSV.

    Comment lines starting with ``#`` may precede the header. Without a
    manifest the values are returned as written; with one, percent shares
    become fractions and the series carries the manifest's country, metric
    and unit.
    """
    return parse_series_text(_read_text(path), manifest, path)


def parse_economy_text(text: str, country: str = "XXX", source: object = "<text>") -> EconomyTable:
    rows = []
    seen: set[int] = set()
    for num, line in _split_header(text, ECONOMY_HEADER, source):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 5:
            raise ParseError(num, f"expected 5 fields, got {len(parts)}")
        year = _parse_year(parts[0], num)
        if year in seen:
            raise DuplicateYear(year)
        seen.add(year)
        G, E, G1, E1 = (_parse_float(p, num) for p in parts[1:])
        rows.append(EconomyYear(year=year, G=G, E=E, G1=G1, E1=E1))
    return EconomyTable(country=country, rows=tuple(rows))


def parse_economy_csv(path: str | os.PathLike, country: str = "XXX") -> EconomyTable:
    """Read a five-column economy CSV; row invariants are enforced on construction."""
    return parse_economy_text(_read_text(path), country, path)


def parse_sector_csv(path: str | os.PathLike, country: str = "XXX", year: int | None = None) -> SectorTable:
    text = _read_text(path)
    body = _split_header(text, SECTOR_HEADER, path)
    rows = []
    for num, line in body:
        fields = next(csv.reader([line]))
        if len(fields) != 4:
            raise ParseError(num, f"expected 4 fields, got {len(fields)}")
        name = fields[0].strip()
        nums = [_parse_float(f.strip(), num) for f in fields[1:]]
        rows.append(SectorRow(name, *nums))
    return SectorTable(country=country, year=year, rows=tuple(rows))


def format_number(v: float) -> str:
    """Shortest round-tripping text; integral values lose the trailing ``.0``."""
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def serialize_series(series: AnnualSeries) -> str:
    lines = [SERIES_HEADER]
    lines += [f"{y},{format_number(v)}" for y, v in series.points]
    return "\n".join(lines) + "\n"


def serialize_economy(table: EconomyTable) -> str:
    lines = [ECONOMY_HEADER]
    for r in table.rows:
        lines.append(",".join([str(r.year), *(format_number(v) for v in (r.G, r.E, r.G1, r.E1))]))
    return "\n".join(lines) + "\n"


def write_series_csv(series: AnnualSeries, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize_series(series))


def interpolate_linear(series: AnnualSeries) -> AnnualSeries:
    """Fill interior missing years by straight lines between neighbours.

    Filled years are added to ``series.filled``. Nothing is extrapolated
    beyond the first or last observation.
    """
    if len(series) < 2:
        raise InsufficientData("interpolation needs at least 2 points")
    years, values = list(series.years), list(series.values)
    out_y, out_v = [], []
    filled = set(series.filled)
    for (y0, v0), (y1, v1) in zip(zip(years, values), zip(years[1:], values[1:])):
        out_y.append(y0)
        out_v.append(v0)
        for y in range(y0 + 1, y1):
            out_y.append(y)
            out_v.append(v0 + (v1 - v0) * (y - y0) / (y1 - y0))
            filled.add(y)
    out_y.append(years[-1])
    out_v.append(values[-1])
    return replace(series, years=tuple(out_y), values=tuple(out_v), filled=frozenset(filled))


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def _manifest_paths(root: Path) -> list[Path]:
    if not root.is_dir():
        raise NotFound(f"data directory {root} does not exist")
    return sorted(root.glob("*.json"))


def list_bundled(root: Path | None = None) -> list[DatasetManifest]:
    root = data_dir() if root is None else root
    manifests = []
    seen: set[str] = set()
    for p in _manifest_paths(root):
        m = read_manifest(p)
        if m.id in seen:
            raise InvalidValue(f"duplicate dataset id {m.id!r}")
        seen.add(m.id)
        manifests.append(m)
    return manifests


def read_manifest(path: Path) -> DatasetManifest:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return DatasetManifest.from_json(data, path=path.with_suffix(".csv"))


def get_manifest(dataset_id: str, root: Path | None = None) -> DatasetManifest:
    root = data_dir() if root is None else root
    path = root / f"{dataset_id}.json"
    if not path.is_file():
        raise NotFound(f"no bundled dataset {dataset_id!r}")
    return read_manifest(path)


def load_manifest_dataset(manifest: DatasetManifest) -> Dataset:
    assert manifest.path is not None
    if not manifest.path.is_file():
        raise NotFound(f"{manifest.id}: data file {manifest.path} missing")
    if manifest.kind == "economy":
        return parse_economy_csv(manifest.path, manifest.country)
    if manifest.kind == "sectors":
        return parse_sector_csv(manifest.path, manifest.country, manifest.base_year)
    return parse_series_csv(manifest.path, manifest)


def load_bundled(dataset_id: str, with_manifest: bool = False) -> Dataset | tuple[Dataset, DatasetManifest]:
    """Load a bundled dataset by id; ``SECTORSHIFT_DATA`` overrides the directory."""
    manifest = get_manifest(dataset_id)
    data = load_manifest_dataset(manifest)
    return (data, manifest) if with_manifest else data


def published_productivities(manifest: DatasetManifest) -> dict[int, tuple[float, float]] | None:
    """``(p1, p2)`` pairs published alongside an economy table, keyed by year."""
    raw = manifest.extra.get("published_productivities")
    if not raw:
        return None
    return {int(y): (float(p[0]), float(p[1])) for y, p in raw.items()}


def resolve_series(ref: str) -> AnnualSeries:
    """A bundled id or a path to a ``year,value`` CSV (with optional ``.json`` sidecar)."""
    path = Path(ref)
    if path.suffix.lower() == ".csv" or path.is_file():
        if not path.is_file():
            raise NotFound(f"no such file {ref!r}")
        sidecar = path.with_suffix(".json")
        manifest = read_manifest(sidecar) if sidecar.is_file() else None
        return parse_series_csv(path, manifest)
    data = load_bundled(ref)
    if not isinstance(data, AnnualSeries):
        raise DataError(f"{ref!r} is not a time series")
    return data


def resolve_economy(ref: str) -> tuple[EconomyTable, DatasetManifest | None]:
    path = Path(ref)
    if path.suffix.lower() == ".csv" or path.is_file():
        if not path.is_file():
            raise NotFound(f"no such file {ref!r}")
        return parse_economy_csv(path), None
    data, manifest = load_bundled(ref, with_manifest=True)
    if not isinstance(data, EconomyTable):
        raise DataError(f"{ref!r} is not an economy table")
    return data, manifest
