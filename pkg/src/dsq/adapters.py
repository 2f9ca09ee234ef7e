"""Source access by data category.

Three categories of sources are readable through one interface:

  structured      CSV with a header row (stands in for a database table)
  semistructured  XML / JSON documents holding a sequence of records
  unstructured    plain text, searched by keyword or distilled into a
                  term co-occurrence net

Readers are pure with respect to file content: reading the same file twice
yields identical ResultSets, and any number of reads may run concurrently.
"""

from __future__ import annotations

import csv
import itertools
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import Attribute, Entity
from .errors import (
    MalformedDocument, NestedArrayUnsupported, RaggedRow, UnsupportedFormat,
)
from .results import Column, ResultSet, render_number

FORMAT_CATEGORIES = {
    "csv": "structured",
    "xml": "semistructured",
    "json": "semistructured",
    "txt": "unstructured",
}

_ENTITY_TYPES = {
    "structured": "table",
    "semistructured": "record",
    "unstructured": "text",
}

_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")
_WORD_RE = re.compile(r"\w+")


@dataclass(frozen=True)
class SourceDescriptor:
    """A registered data source."""

    id: str
    category: str
    format: str
    location: str
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if FORMAT_CATEGORIES.get(self.format) != self.category:
            raise ValueError(
                f"({self.category}, {self.format}) is not a supported "
                f"category/format pair")


def detect_kind(path) -> tuple[str, str]:
    """Map a file extension to its (category, format) pair."""
    extension = Path(path).suffix.lower().lstrip(".")
    if extension not in FORMAT_CATEGORIES:
        raise UnsupportedFormat(extension)
    return FORMAT_CATEGORIES[extension], extension


def descriptor_for(path, source_id: str | None = None,
                   options: dict | None = None) -> SourceDescriptor:
    """Build a descriptor for `path`, defaulting the id to the file stem."""
    category, fmt = detect_kind(path)
    return SourceDescriptor(
        id=source_id or Path(path).stem,
        category=category,
        format=fmt,
        location=str(path),
        options=dict(options or {}),
    )


# --- structured -------------------------------------------------------------

def _is_number(text: str) -> bool:
    return _NUMBER_RE.fullmatch(text) is not None


def read_structured(src: SourceDescriptor) -> ResultSet:
    """Read a CSV-with-header source. A column is numeric iff every
    non-empty cell parses as a decimal number; empty cells become null."""
    delimiter = src.options.get("delimiter", ",")
    with open(src.location, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        header = None
        raw_rows: list[list[str]] = []
        for record in reader:
            if header is None:
                header = record
                continue
            if not record:
                continue  # tolerate blank lines
            if len(record) != len(header):
                raise RaggedRow(reader.line_num,
                                f"{len(record)} cells under {len(header)} columns")
            raw_rows.append(record)
    if header is None:
        raise MalformedDocument(f"'{src.location}' has no header row")

    numeric = [all(_is_number(row[i]) for row in raw_rows if row[i] != "")
               for i in range(len(header))]
    columns = [Column(name, "number" if numeric[i] else "text")
               for i, name in enumerate(header)]
    rows = []
    for raw in raw_rows:
        rows.append([None if cell == "" else (float(cell) if numeric[i] else cell)
                     for i, cell in enumerate(raw)])
    return ResultSet(columns, rows, [src.id] * len(rows))


# --- semistructured ----------------------------------------------------------

def read_semistructured(src: SourceDescriptor) -> ResultSet:
    """Flatten a JSON array or the children of an XML root into rows.

    Column names are slash-joined paths from the record root to each scalar
    leaf; the column set is the union over all records, sorted; paths a
    record lacks become null.
    """
    if src.format == "json":
        records = _json_records(src.location)
    else:
        records = _xml_records(src.location)

    paths = sorted({path for record in records for path in record})
    numeric = {path: all(_leaf_is_numeric(record[path])
                         for record in records
                         if record.get(path) is not None)
               for path in paths}
    columns = [Column(path, "number" if numeric[path] else "text")
               for path in paths]
    rows = []
    for record in records:
        rows.append([_leaf_cell(record.get(path), numeric[path]) for path in paths])
    return ResultSet(columns, rows, [src.id] * len(rows))


def _json_records(location) -> list[dict]:
    with open(location, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"{location}: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(doc, list):
        raise MalformedDocument(f"{location}: top level must be an array of records")
    records = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict):
            raise MalformedDocument(f"{location}: record {i} is not an object")
        flat: dict = {}
        _flatten_json(item, "", flat)
        records.append(flat)
    return records


def _flatten_json(node, prefix: str, out: dict) -> None:
    for key, value in node.items():
        path = f"{prefix}/{key}" if prefix else str(key)
        if isinstance(value, dict):
            _flatten_json(value, path, out)
        elif isinstance(value, list):
            raise NestedArrayUnsupported(path)
        elif isinstance(value, bool):
            out[path] = "true" if value else "false"
        elif value is None:
            out[path] = None
        elif isinstance(value, (int, float)):
            out[path] = float(value)
        else:
            out[path] = str(value)


def _xml_records(location) -> list[dict]:
    try:
        root = ET.parse(location).getroot()
    except ET.ParseError as exc:
        raise MalformedDocument(f"{location}: {exc}") from exc
    records = []
    for i, child in enumerate(root):
        if len(child) == 0 and (child.text or "").strip():
            raise MalformedDocument(
                f"{location}: record {i} is a bare scalar, not a record")
        flat: dict = {}
        _flatten_xml(child, "", flat)
        records.append(flat)
    return records


def _flatten_xml(element, prefix: str, out: dict) -> None:
    children = list(element)
    if prefix and not children:
        text = (element.text or "").strip()
        if prefix in out:
            raise NestedArrayUnsupported(prefix)
        out[prefix] = text if text else None
        return
    for child in children:
        path = f"{prefix}/{child.tag}" if prefix else child.tag
        _flatten_xml(child, path, out)


def _leaf_is_numeric(value) -> bool:
    if isinstance(value, float):
        return True
    return isinstance(value, str) and _is_number(value)


def _leaf_cell(value, numeric: bool):
    if value is None:
        return None
    if numeric:
        return value if isinstance(value, float) else float(value)
    if isinstance(value, float):
        return render_number(value)
    return value


# --- unstructured ------------------------------------------------------------

def read_unstructured(src: SourceDescriptor) -> ResultSet:
    """Expose a text source as one `content` row per line."""
    _require_txt(src)
    with open(src.location, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    return ResultSet([Column("content", "text")],
                     [[line] for line in lines],
                     [src.id] * len(lines))


def keyword_search(src: SourceDescriptor, keyword: str) -> ResultSet:
    """Whole-word, case-insensitive search; one row per matching line."""
    _require_txt(src)
    pattern = re.compile(rf"\b{re.escape(keyword)}\b", re.IGNORECASE)
    columns = [Column("file", "text"), Column("line", "number"),
               Column("snippet", "text")]
    rows = []
    with open(src.location, encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            snippet = line.rstrip("\n")
            if pattern.search(snippet):
                rows.append([src.location, float(number), snippet])
    return ResultSet(columns, rows, [src.id] * len(rows))


@dataclass
class SemanticNet:
    """Undirected term co-occurrence graph with positive integer weights."""

    nodes: set = field(default_factory=set)
    _edges: dict = field(default_factory=dict)

    def add_pair(self, a: str, b: str) -> None:
        if a == b:
            return
        key = (a, b) if a <= b else (b, a)
        self._edges[key] = self._edges.get(key, 0) + 1

    def weight(self, a: str, b: str) -> int:
        key = (a, b) if a <= b else (b, a)
        return self._edges.get(key, 0)

    def edges(self) -> dict:
        return dict(self._edges)

    def total_weight(self) -> int:
        return sum(self._edges.values())

    def neighbors(self, term: str) -> list[tuple[str, int]]:
        """Neighbouring terms ordered by weight descending, then term."""
        found = []
        for (a, b), weight in self._edges.items():
            if a == term:
                found.append((b, weight))
            elif b == term:
                found.append((a, weight))
        found.sort(key=lambda pair: (-pair[1], pair[0]))
        return found


def build_semantic_net(src: SourceDescriptor, window: str = "sentence") -> SemanticNet:
    """Lowercase the text, split into sentences on [.!?], keep words of at
    least three characters, and count each unordered pair once per sentence."""
    _require_txt(src)
    if window != "sentence":
        raise ValueError(f"unsupported window {window!r}")
    text = Path(src.location).read_text(encoding="utf-8").lower()
    net = SemanticNet()
    for sentence in re.split(r"[.!?]", text):
        words = sorted({w for w in _WORD_RE.findall(sentence) if len(w) >= 3})
        net.nodes.update(words)
        for a, b in itertools.combinations(words, 2):
            net.add_pair(a, b)
    return net


def _require_txt(src: SourceDescriptor) -> None:
    if src.format != "txt":
        raise UnsupportedFormat(src.format)


# --- schema inference --------------------------------------------------------

def infer_schema(src: SourceDescriptor) -> Entity:
    """Derive an entity (with typed attributes) from a source's content.

    Structured and semistructured sources contribute one attribute per
    column; unstructured sources get a single `content` attribute.
    """
    if src.category == "unstructured":
        columns = [Column("content", "text")]
    elif src.category == "structured":
        columns = read_structured(src).columns
    else:
        columns = read_semistructured(src).columns
    return Entity(
        name=Path(src.location).stem,
        entityType=_ENTITY_TYPES[src.category],
        attributes=[Attribute(name=col.name, type=col.type) for col in columns],
    )
