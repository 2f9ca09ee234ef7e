"""Federated query evaluation over validated queries.

Dispatch by variant:

  Se / who / where / what / which / how
      projection over each item's entity; items carrying an aggregation
      fold into a single-row result. Items over distinct entities are
      consolidated: columns united by name, missing cells null, rows
      stacked in item order.
  Cons
      the entity's full row set filtered by the conjunction of predicates.
  Semant
      neighbours of the term in the source's co-occurrence net, ordered by
      weight descending then term ascending.
  Union / Inters / Differ
      per-item projections folded with set semantics.
  profile
      stores the given weights for the calling user; the result is empty.

Predicate semantics are total and deterministic: a null operand satisfies
nothing; comparing text against a number satisfies only `<>`; arithmetic
over null (or division by zero) poisons the expression to null. Parameters
in predicate right-hand sides name columns of the same entity and read the
current row; anything else is an UnboundParameter.

Everything here is read-only on the catalog and the sources; only profile
queries write, and only to the ProfileStore.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean

from .adapters import (
    SourceDescriptor, build_semantic_net, read_semistructured,
    read_structured, read_unstructured,
)
from .catalog import Catalog, Entity, compare_values
from .errors import (
    ColumnMismatch, NegativeDuration, NegativeWeight, NonNumericColumn,
    NotFound, UnboundParameter,
)
from .metalang import (
    BinaryOp, Cons, Expr, NumberLit, Paren, ParamRef, Predicate, Profile,
    Select, Semant, SetOp, Question, ValidatedQuery, expr_params,
)
from .metalang.validator import Binding
from .results import Column, ResultSet, render_number, row_sort_key

AGGREGATE_KINDS = ("SUM", "COUNT", "AVG")


# --- reading ------------------------------------------------------------------

def read_source(descriptor: SourceDescriptor) -> ResultSet:
    if descriptor.category == "structured":
        return read_structured(descriptor)
    if descriptor.category == "semistructured":
        return read_semistructured(descriptor)
    return read_unstructured(descriptor)


class _SourceCache:
    def __init__(self, sources: dict):
        self.sources = sources
        self._tables: dict[str, ResultSet] = {}

    def descriptor(self, source_id: str) -> SourceDescriptor:
        descriptor = self.sources.get(source_id)
        if descriptor is None:
            raise NotFound(f"source '{source_id}'")
        return descriptor

    def table(self, source_id: str) -> ResultSet:
        if source_id not in self._tables:
            self._tables[source_id] = read_source(self.descriptor(source_id))
        return self._tables[source_id]


# --- execution ----------------------------------------------------------------

def execute(vq: ValidatedQuery, catalog: Catalog, sources: dict,
            profiles: "ProfileStore | None" = None,
            user: str = "default") -> ResultSet:
    """Evaluate a validated query against the registered sources."""
    cache = _SourceCache(sources)
    ast = vq.ast

    if isinstance(ast, (Select, Question)):
        return _eval_projection(ast.items, vq.bindings, cache)
    if isinstance(ast, Cons):
        return _eval_cons(vq, cache)
    if isinstance(ast, Semant):
        return _eval_semant(ast, vq.bindings[0], cache)
    if isinstance(ast, SetOp):
        return _eval_setop(ast, vq.bindings, cache)
    if isinstance(ast, Profile):
        store = profiles if profiles is not None else ProfileStore()
        for (_, weight), binding in zip(ast.entries, vq.bindings):
            store.put(user, binding.entity, weight)
        return ResultSet([], [])
    raise TypeError(f"not a query: {ast!r}")


def _eval_projection(items, bindings, cache: _SourceCache) -> ResultSet:
    # Items over one entity evaluate together, like a single select list;
    # aggregated and plain items form separate parts.
    parts: list[tuple[int, str, list]] = []  # (first item index, flavor, members)
    slots: dict[tuple[str, str, str], list] = {}
    for index, (item, binding) in enumerate(zip(items, bindings)):
        flavor = "agg" if item.agg else "plain"
        key = (binding.source, binding.entity, flavor)
        if key not in slots:
            slots[key] = []
            parts.append((index, flavor, slots[key]))
        slots[key].append((item, binding))

    pieces = [_project_group(flavor, members, cache)
              for _, flavor, members in parts]
    if len(pieces) == 1:
        return pieces[0]
    return _consolidate(pieces)


def _project_group(flavor: str, members, cache: _SourceCache) -> ResultSet:
    binding = members[0][1]
    table = cache.table(binding.source)
    if flavor == "agg":
        columns = []
        row = []
        for item, b in members:
            if b.attribute is None:
                if item.agg != "COUNT":
                    raise NonNumericColumn("*", item.agg)
                columns.append(Column("COUNT(*)", "number"))
                row.append(float(len(table.rows)))
            else:
                columns.append(Column(f"{item.agg}({b.attribute})", "number"))
                row.append(aggregate(table, b.attribute, item.agg))
        return ResultSet(columns, [row], [binding.source])

    indices: list[int] = []
    columns = []
    for _, b in members:
        if b.attribute is None:
            indices.extend(range(len(table.columns)))
            columns.extend(table.columns)
        else:
            try:
                i = table.column_index(b.attribute)
            except KeyError:
                raise ColumnMismatch(
                    f"source '{binding.source}' has no column '{b.attribute}'")
            indices.append(i)
            columns.append(table.columns[i])
    rows = [[row[i] for i in indices] for row in table.rows]
    return ResultSet(columns, rows, list(table.provenance))


def _consolidate(pieces: list[ResultSet]) -> ResultSet:
    """Stack heterogeneous results: columns united by name in first-seen
    order; a name typed both ways degrades to text."""
    columns: list[Column] = []
    position: dict[str, int] = {}
    for piece in pieces:
        for col in piece.columns:
            if col.name not in position:
                position[col.name] = len(columns)
                columns.append(col)
            elif columns[position[col.name]].type != col.type:
                columns[position[col.name]] = Column(col.name, "text")

    rows = []
    provenance = []
    for piece in pieces:
        for row, origin in zip(piece.rows, piece.provenance):
            out = [None] * len(columns)
            for col, cell in zip(piece.columns, row):
                target = position[col.name]
                if (cell is not None and columns[target].type == "text"
                        and isinstance(cell, float)):
                    cell = render_number(cell)
                out[target] = cell
            rows.append(out)
            provenance.append(origin)
    return ResultSet(columns, rows, provenance)


def _eval_cons(vq: ValidatedQuery, cache: _SourceCache) -> ResultSet:
    binding = vq.bindings[0]
    table = cache.table(binding.source)
    names = set(table.column_names())
    for predicate in vq.predicates:
        if predicate.attribute not in names:
            raise ColumnMismatch(
                f"source '{binding.source}' has no column '{predicate.attribute}'")
        for param in sorted(expr_params(predicate.rhs)):
            if param not in names:
                raise UnboundParameter(param)

    kept_rows = []
    kept_prov = []
    for row, origin in zip(table.rows, table.provenance):
        values = dict(zip(table.column_names(), row))
        if all(_predicate_holds(p, values) for p in vq.predicates):
            kept_rows.append(list(row))
            kept_prov.append(origin)
    return ResultSet(list(table.columns), kept_rows, kept_prov)


def _predicate_holds(predicate: Predicate, values: dict) -> bool:
    rhs = eval_expr(predicate.rhs, values)
    return compare_values(values.get(predicate.attribute),
                          predicate.comparator, rhs)


def eval_expr(expr: Expr, values: dict) -> float | None:
    """Numeric expression evaluation over one row; null poisons."""
    if isinstance(expr, NumberLit):
        return float(expr.value)
    if isinstance(expr, ParamRef):
        cell = values.get(expr.name)
        if isinstance(cell, float):
            return cell
        return None
    if isinstance(expr, Paren):
        return eval_expr(expr.inner, values)
    if isinstance(expr, BinaryOp):
        left = eval_expr(expr.left, values)
        right = eval_expr(expr.right, values)
        if left is None or right is None:
            return None
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        if expr.op == "*":
            return left * right
        if right == 0:
            return None
        return left / right
    raise TypeError(f"not an expression: {expr!r}")


def _eval_semant(ast: Semant, binding: Binding, cache: _SourceCache) -> ResultSet:
    net = build_semantic_net(cache.descriptor(binding.source))
    neighbours = net.neighbors(ast.term.lower())
    columns = [Column("term", "text"), Column("weight", "number")]
    rows = [[term, float(weight)] for term, weight in neighbours]
    return ResultSet(columns, rows, [binding.source] * len(rows))


def _eval_setop(ast: SetOp, bindings, cache: _SourceCache) -> ResultSet:
    operands = [_project_group("plain", [(item, binding)], cache)
                for item, binding in zip(ast.items, bindings)]
    result = operands[0]
    for operand in operands[1:]:
        result = set_op(ast.kind, result, operand)
    return result


# --- core operators -----------------------------------------------------------

def aggregate(rs: ResultSet, column: str, kind: str) -> float | None:
    """SUM/COUNT/AVG over a column, nulls excluded. An empty column sums
    to 0, counts 0 and averages to null."""
    if kind not in AGGREGATE_KINDS:
        raise ValueError(f"bad aggregation kind {kind!r}")
    try:
        index = rs.column_index(column)
    except KeyError:
        raise ColumnMismatch(f"no column '{column}' to aggregate")
    if kind in ("SUM", "AVG") and rs.columns[index].type != "number":
        raise NonNumericColumn(column, kind)
    cells = [row[index] for row in rs.rows if row[index] is not None]
    if kind == "COUNT":
        return float(len(cells))
    if kind == "SUM":
        return float(sum(cells))
    if not cells:
        return None
    return float(sum(cells)) / len(cells)


def set_op(kind: str, a: ResultSet, b: ResultSet) -> ResultSet:
    """Union/Inters/Differ with set semantics on whole rows (null equals
    null here). Output is deduplicated and canonically sorted; a duplicate
    row keeps the provenance it had in `a`."""
    if kind not in ("Union", "Inters", "Differ"):
        raise ValueError(f"bad set operator {kind!r}")
    if [c.name for c in a.columns] != [c.name for c in b.columns] \
            or [c.type for c in a.columns] != [c.type for c in b.columns]:
        raise ColumnMismatch(
            f"operand columns differ: {[c.name for c in a.columns]} vs "
            f"{[c.name for c in b.columns]}")

    first: dict[tuple, tuple[list, str]] = {}
    for row, origin in zip(a.rows, a.provenance):
        first.setdefault(tuple(row), (list(row), origin))
    second: dict[tuple, tuple[list, str]] = {}
    for row, origin in zip(b.rows, b.provenance):
        second.setdefault(tuple(row), (list(row), origin))

    if kind == "Union":
        merged = dict(second)
        merged.update(first)  # provenance of duplicates comes from `a`
        chosen = merged
    elif kind == "Inters":
        chosen = {key: first[key] for key in first if key in second}
    else:
        chosen = {key: first[key] for key in first if key not in second}

    ordered = sorted(chosen, key=row_sort_key)
    rows = [chosen[key][0] for key in ordered]
    provenance = [chosen[key][1] for key in ordered]
    return ResultSet(list(a.columns), rows, provenance)


def clean_cut(rs: ResultSet, entity: Entity) -> ResultSet:
    """Cleaning cut: drop rows violating any of the entity's constraints."""
    names = rs.column_names()
    rows = []
    provenance = []
    for row, origin in zip(rs.rows, rs.provenance):
        values = {name: cell for name, cell in zip(names, row) if cell is not None}
        if not entity.check_constraints(values):
            rows.append(list(row))
            provenance.append(origin)
    return ResultSet(list(rs.columns), rows, provenance)


def clean_coagulate(rs: ResultSet) -> ResultSet:
    """Cleaning coagulation: merge exact-duplicate rows, keeping the first
    occurrence (and its provenance)."""
    seen: dict[tuple, None] = {}
    rows = []
    provenance = []
    for row, origin in zip(rs.rows, rs.provenance):
        key = tuple(row)
        if key not in seen:
            seen[key] = None
            rows.append(list(row))
            provenance.append(origin)
    return ResultSet(list(rs.columns), rows, provenance)


# --- profile store -------------------------------------------------------------

@dataclass
class ProfileStore:
    """Per-user object weights; the write target of profile queries."""

    weights: dict = field(default_factory=dict)  # (user, object) -> int

    def put(self, user: str, obj: str, weight: int) -> None:
        if weight < 0:
            raise NegativeWeight(weight)
        self.weights[(user, obj)] = int(weight)

    def get(self, user: str, obj: str) -> int:
        return self.weights.get((user, obj), 0)

    def to_dict(self) -> dict:
        entries = [{"user": user, "object": obj, "weight": weight}
                   for (user, obj), weight in sorted(self.weights.items())]
        return {"version": 1, "profiles": entries}

    @classmethod
    def from_dict(cls, doc) -> "ProfileStore":
        store = cls()
        for entry in doc.get("profiles", []):
            store.put(entry["user"], entry["object"], entry["weight"])
        return store

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8")

    @classmethod
    def load(cls, path) -> "ProfileStore":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# --- runtime history -------------------------------------------------------------

@dataclass
class RuntimeHistory:
    """Observed execution times in milliseconds, keyed by query shape
    (operator keyword, source category)."""

    samples: dict = field(default_factory=dict)  # (kind, category) -> [ms]

    def record(self, key: tuple[str, str], duration_ms: float) -> "RuntimeHistory":
        if duration_ms < 0:
            raise NegativeDuration(duration_ms)
        self.samples.setdefault(tuple(key), []).append(float(duration_ms))
        return self

    def estimate(self, key: tuple[str, str]) -> float | None:
        """Arithmetic mean of the recorded durations; None when unknown."""
        values = self.samples.get(tuple(key))
        if not values:
            return None
        return fmean(values)

    def to_dict(self) -> dict:
        entries = [{"kind": kind, "category": category, "durations": values}
                   for (kind, category), values in sorted(self.samples.items())]
        return {"version": 1, "runtimes": entries}

    @classmethod
    def from_dict(cls, doc) -> "RuntimeHistory":
        history = cls()
        for entry in doc.get("runtimes", []):
            for value in entry["durations"]:
                history.record((entry["kind"], entry["category"]), value)
        return history

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8")

    @classmethod
    def load(cls, path) -> "RuntimeHistory":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def record_runtime(key: tuple[str, str], duration_ms: float,
                   history: RuntimeHistory) -> RuntimeHistory:
    return history.record(key, duration_ms)


def estimate_time(key: tuple[str, str], history: RuntimeHistory) -> float | None:
    return history.estimate(key)


def shape_key(vq: ValidatedQuery) -> tuple[str, str]:
    """(operator keyword, category of the first bound source)."""
    category = vq.bindings[0].category if vq.bindings else ""
    return vq.ast.keyword, category
