"""The meta-descriptions level: a file-backed registry of models, entities,
relations, attributes and constraints, plus a synonym table.

The catalog is the database of the meta level. Persistence is deterministic
JSON: keys sorted, named collections sorted by name, so saving the same
catalog twice yields byte-identical files and `load(save(c)) == c`.

Element paths are slash-joined: "model", "model/entity",
"model/entity/attribute". Two-segment paths prefer entities over relations
with the same name; pass `kind=` to the path operations to disambiguate.

Concurrency contract: single writer, multiple readers. Mutating operations
(`upsert`, `remove`, synonym updates) require exclusive access; lookups may
run concurrently between mutations.
"""

from __future__ import annotations

import copy
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    AmbiguousSynonym, FormatError, InvariantViolation, NotFound, UnknownParent,
)

COMPARATORS = ("=", "<>", "<", "<=", ">", ">=")

#: Cardinality value meaning "no upper bound"; encoded as "N" on disk.
UNBOUNDED = None

_REFERENCE_RE = re.compile(r"reference\([A-Za-z][A-Za-z0-9_]*\)")


def compare_values(left, sign, right) -> bool:
    """Total comparison used by constraints and predicates.

    Numbers compare numerically, strings lexicographically. A missing value
    (None) satisfies nothing. Mismatched runtime types satisfy only `<>`.
    """
    if left is None or right is None:
        return False
    left_num = isinstance(left, (int, float)) and not isinstance(left, bool)
    right_num = isinstance(right, (int, float)) and not isinstance(right, bool)
    if left_num != right_num:
        return sign == "<>"
    if sign == "=":
        return left == right
    if sign == "<>":
        return left != right
    if sign == "<":
        return left < right
    if sign == "<=":
        return left <= right
    if sign == ">":
        return left > right
    if sign == ">=":
        return left >= right
    raise ValueError(f"bad comparator {sign!r}")


def _card_le(a, b) -> bool:
    # UNBOUNDED compares greater than every integer.
    if b is UNBOUNDED:
        return True
    if a is UNBOUNDED:
        return False
    return a <= b


@dataclass
class Violation:
    attributeName: str
    errorMessage: str


@dataclass
class Attribute:
    name: str
    type: str = "text"  # "number" | "text" | "reference(<entity>)"
    description: str = ""
    default: float | int | str | None = None


@dataclass
class Constraint:
    attributeName: str
    sign: str
    value: float | int | str
    errorMessage: str = ""


@dataclass
class Entity:
    name: str
    description: str = ""
    entityType: str = ""
    drawType: str = ""
    attributes: list[Attribute] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    operations: list[str] = field(default_factory=list)
    values: list[str] = field(default_factory=list)

    def attribute(self, name: str) -> Attribute | None:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None

    def check_constraints(self, row: dict) -> list[Violation]:
        """One Violation per constraint the row fails; missing values
        (absent key or None) fail every constraint on that attribute."""
        out = []
        for c in self.constraints:
            value = row.get(c.attributeName)
            if not compare_values(value, c.sign, c.value):
                out.append(Violation(c.attributeName, c.errorMessage))
        return out


@dataclass
class Relation:
    name: str
    startEntity: str
    endEntity: str
    description: str = ""
    type: str = ""
    startMin: int | None = 0
    startMax: int | None = UNBOUNDED
    endMin: int | None = 0
    endMax: int | None = UNBOUNDED
    constraints: list[Constraint] = field(default_factory=list)


@dataclass
class Model:
    name: str
    description: str = ""
    metaModelName: str = ""  # source type tag (csv/xml/json/txt)
    fileName: str = ""       # source location
    connection: str = ""     # source descriptor id
    linkedModels: list[str] = field(default_factory=list)
    entities: list[Entity] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)

    def entity(self, name: str) -> Entity | None:
        for ent in self.entities:
            if ent.name == name:
                return ent
        return None

    def relation(self, name: str) -> Relation | None:
        for rel in self.relations:
            if rel.name == name:
                return rel
        return None

    def entity_count(self) -> int:
        return len(self.entities)


@dataclass
class Catalog:
    """In-memory catalog; named collections are kept sorted by name."""

    models: list[Model] = field(default_factory=list)
    synonyms: dict[str, list[str]] = field(default_factory=dict)

    # --- persistence --------------------------------------------------------

    @classmethod
    def load(cls, path) -> "Catalog":
        """Read a catalog file, verifying format and invariants."""
        text = Path(path).read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"line {exc.lineno}: {exc.msg}") from exc
        catalog = cls.from_dict(doc)
        problems = catalog.audit()
        if problems:
            raise InvariantViolation(problems)
        return catalog

    def save(self, path) -> None:
        """Write the catalog deterministically (sorted keys and arrays)."""
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True,
                          ensure_ascii=False) + "\n"

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "models": [_model_doc(m) for m in sorted(self.models, key=lambda m: m.name)],
            "synonyms": {name: sorted(targets)
                         for name, targets in self.synonyms.items()},
        }

    @classmethod
    def from_dict(cls, doc) -> "Catalog":
        if not isinstance(doc, dict):
            raise FormatError("top level must be an object")
        if doc.get("version") != 1:
            raise FormatError(f"unsupported version {doc.get('version')!r}")
        models_doc = _get(doc, "models", list, "document")
        synonyms_doc = _get(doc, "synonyms", dict, "document", default={})
        models = [_model_from(item, f"models[{i}]")
                  for i, item in enumerate(models_doc)]
        synonyms = {}
        for name, targets in synonyms_doc.items():
            if not isinstance(targets, list) or not all(isinstance(t, str) for t in targets):
                raise FormatError(f"synonyms[{name!r}] must be a list of paths")
            synonyms[str(name)] = sorted(targets)
        for model in models:
            _normalize_model(model)
        models.sort(key=lambda m: m.name)
        return cls(models=models, synonyms=synonyms)

    # --- search -------------------------------------------------------------

    def model(self, name: str) -> Model | None:
        for model in self.models:
            if model.name == name:
                return model
        return None

    def lookup(self, name_or_path: str):
        """Resolve a slash path or bare name to a catalogue element.

        Bare names try exact matches tier by tier (entities, attributes,
        models, relations) and fall back to the synonym table. A name that
        matches several elements in the winning tier, or a synonym with
        several targets, raises AmbiguousSynonym.
        """
        if "/" in name_or_path:
            element = self._resolve_path(name_or_path)
            if element is None:
                raise NotFound(name_or_path)
            return element

        name = name_or_path
        tiers = (
            [e for m in self.models for e in m.entities if e.name == name],
            [a for m in self.models for e in m.entities
             for a in e.attributes if a.name == name],
            [m for m in self.models if m.name == name],
            [r for m in self.models for r in m.relations if r.name == name],
        )
        for matches in tiers:
            if len(matches) > 1:
                raise AmbiguousSynonym(name, [_describe(x) for x in matches])
            if matches:
                return matches[0]

        targets = [t for t in self.synonyms.get(name, ())
                   if self._resolve_path(t) is not None]
        if len(targets) > 1:
            raise AmbiguousSynonym(name, targets)
        if targets:
            return self._resolve_path(targets[0])
        raise NotFound(name_or_path)

    def _resolve_path(self, path: str, kind: str | None = None):
        parts = path.split("/")
        model = self.model(parts[0])
        if model is None or len(parts) > 3 or "" in parts:
            return None
        if len(parts) == 1:
            return model if kind in (None, "model") else None
        if len(parts) == 2:
            if kind in (None, "entity"):
                entity = model.entity(parts[1])
                if entity is not None:
                    return entity
            if kind in (None, "relation"):
                return model.relation(parts[1])
            return None
        entity = model.entity(parts[1])
        if entity is None or kind not in (None, "attribute", "constraint"):
            return None
        return entity.attribute(parts[2])

    def relations_of(self, entity: str, direction: str = "all") -> list[Relation]:
        """Relations touching an entity: `out` leaves it, `in` enters it,
        `all` is their union with self-loops listed once. Sorted by name."""
        if direction not in ("all", "in", "out"):
            raise ValueError(f"bad direction {direction!r}")
        model, ent = self._owning_entity(entity)
        outgoing = [r for r in model.relations if r.startEntity == ent.name]
        incoming = [r for r in model.relations if r.endEntity == ent.name]
        if direction == "out":
            picked = outgoing
        elif direction == "in":
            picked = incoming
        else:
            seen = {}
            for rel in outgoing + incoming:
                seen.setdefault(rel.name, rel)
            picked = list(seen.values())
        return sorted(picked, key=lambda r: r.name)

    def _owning_entity(self, name_or_path: str) -> tuple[Model, Entity]:
        if "/" in name_or_path:
            model_name, _, entity_name = name_or_path.partition("/")
            model = self.model(model_name)
            entity = model.entity(entity_name) if model else None
            if entity is None:
                raise NotFound(name_or_path)
            return model, entity
        matches = [(m, e) for m in self.models for e in m.entities
                   if e.name == name_or_path]
        if len(matches) > 1:
            raise AmbiguousSynonym(name_or_path,
                                   [f"{m.name}/{e.name}" for m, e in matches])
        if not matches:
            raise NotFound(name_or_path)
        return matches[0]

    # --- mutation -----------------------------------------------------------

    def upsert(self, element, parent: str | None = None) -> "Catalog":
        """Insert or replace an element by name under `parent`, then re-check
        all invariants (the catalog is untouched when they fail)."""
        snapshot = (copy.deepcopy(self.models), copy.deepcopy(self.synonyms))
        try:
            self._place(element, parent)
            problems = self.audit()
            if problems:
                raise InvariantViolation(problems)
        except Exception:
            self.models, self.synonyms = snapshot
            raise
        return self

    def _place(self, element, parent: str | None) -> None:
        if isinstance(element, Model):
            _normalize_model(element)
            _replace_named(self.models, element)
            return
        if parent is None:
            raise UnknownParent("<none>")
        if isinstance(element, (Entity, Relation)):
            model = self.model(parent)
            if model is None:
                raise UnknownParent(parent)
            if isinstance(element, Entity):
                element.attributes.sort(key=lambda a: a.name)
                _replace_named(model.entities, element)
            else:
                _replace_named(model.relations, element)
            return
        if isinstance(element, Attribute):
            owner = self._resolve_path(parent, kind="entity")
            if owner is None:
                raise UnknownParent(parent)
            _replace_named(owner.attributes, element)
            return
        if isinstance(element, Constraint):
            owner = self._resolve_path(parent, kind="entity")
            if owner is None:
                owner = self._resolve_path(parent, kind="relation")
            if owner is None:
                raise UnknownParent(parent)
            # Constraints have no name; identity is (attribute, sign).
            for i, existing in enumerate(owner.constraints):
                if (existing.attributeName, existing.sign) == (element.attributeName, element.sign):
                    owner.constraints[i] = element
                    return
            owner.constraints.append(element)
            return
        raise TypeError(f"cannot upsert {type(element).__name__}")

    def remove(self, path: str, kind: str | None = None) -> "Catalog":
        """Remove the element at `path`, cascading: an entity takes its
        attributes, constraints and touching relations with it; an attribute
        takes constraints naming it; synonyms to removed elements go too."""
        snapshot = (copy.deepcopy(self.models), copy.deepcopy(self.synonyms))
        try:
            self._remove(path, kind)
            problems = self.audit()
            if problems:
                raise InvariantViolation(problems)
        except Exception:
            self.models, self.synonyms = snapshot
            raise
        return self

    def _remove(self, path: str, kind: str | None) -> None:
        parts = path.split("/")
        model = self.model(parts[0])
        if model is None:
            raise NotFound(path)

        if len(parts) == 1 and kind in (None, "model"):
            self.models.remove(model)
            for other in self.models:
                if model.name in other.linkedModels:
                    other.linkedModels.remove(model.name)
            self._drop_synonyms_under(model.name)
            return

        if len(parts) == 2:
            entity = model.entity(parts[1]) if kind in (None, "entity") else None
            if entity is not None:
                model.entities.remove(entity)
                model.relations = [r for r in model.relations
                                   if entity.name not in (r.startEntity, r.endEntity)]
                self._drop_synonyms_under(f"{model.name}/{entity.name}")
                return
            if kind in (None, "relation"):
                relation = model.relation(parts[1])
                if relation is not None:
                    model.relations.remove(relation)
                    return
            raise NotFound(path)

        if len(parts) == 3:
            entity = model.entity(parts[1])
            if entity is None:
                raise NotFound(path)
            if kind == "constraint":
                kept = [c for c in entity.constraints if c.attributeName != parts[2]]
                if len(kept) == len(entity.constraints):
                    raise NotFound(path)
                entity.constraints = kept
                return
            attribute = entity.attribute(parts[2])
            if attribute is None:
                raise NotFound(path)
            entity.attributes.remove(attribute)
            entity.constraints = [c for c in entity.constraints
                                  if c.attributeName != attribute.name]
            for relation in model.relations:
                if entity.name in (relation.startEntity, relation.endEntity):
                    relation.constraints = [c for c in relation.constraints
                                            if c.attributeName != attribute.name]
            self._drop_synonyms_under(f"{model.name}/{entity.name}/{attribute.name}")
            return

        raise NotFound(path)

    def _drop_synonyms_under(self, prefix: str) -> None:
        for name in list(self.synonyms):
            kept = [t for t in self.synonyms[name]
                    if t != prefix and not t.startswith(prefix + "/")]
            if kept:
                self.synonyms[name] = kept
            else:
                del self.synonyms[name]

    def set_synonym(self, name: str, *targets: str) -> "Catalog":
        """Register (or replace) a synonym pointing at element paths."""
        snapshot = copy.deepcopy(self.synonyms)
        self.synonyms[name] = sorted(targets)
        problems = self.audit()
        if problems:
            self.synonyms = snapshot
            raise InvariantViolation(problems)
        return self

    def drop_synonym(self, name: str) -> "Catalog":
        if name not in self.synonyms:
            raise NotFound(name)
        del self.synonyms[name]
        return self

    # --- integrity ----------------------------------------------------------

    def audit(self) -> list[str]:
        """Full referential-integrity check; returns problem descriptions
        (empty list means the catalog is sound)."""
        problems: list[str] = []
        names = [m.name for m in self.models]
        for name in sorted({n for n in names if names.count(n) > 1}):
            problems.append(f"duplicate model name '{name}'")

        for model in self.models:
            prefix = f"model '{model.name}'"
            if model.name in model.linkedModels:
                problems.append(f"{prefix} links to itself")
            for linked in model.linkedModels:
                if linked != model.name and self.model(linked) is None:
                    problems.append(f"{prefix} links to missing model '{linked}'")
            entity_names = [e.name for e in model.entities]
            for name in sorted({n for n in entity_names if entity_names.count(n) > 1}):
                problems.append(f"{prefix}: duplicate entity name '{name}'")
            relation_names = [r.name for r in model.relations]
            for name in sorted({n for n in relation_names if relation_names.count(n) > 1}):
                problems.append(f"{prefix}: duplicate relation name '{name}'")
            for entity in model.entities:
                problems.extend(_audit_entity(prefix, entity))
            for relation in model.relations:
                problems.extend(_audit_relation(prefix, model, relation))

        problems.extend(self._audit_synonyms())
        return problems

    def _audit_synonyms(self) -> list[str]:
        problems = []
        for name, targets in self.synonyms.items():
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                problems.append(f"synonym '{name}' is not an identifier")
            for target in targets:
                if self._resolve_path(target) is None:
                    problems.append(f"synonym '{name}' targets missing '{target}'")
                    continue
                model = self.model(target.split("/")[0])
                if _names_in_model(model) & {name}:
                    problems.append(
                        f"synonym '{name}' collides with a primary name in "
                        f"model '{model.name}'")
        return problems


def _audit_entity(prefix: str, entity: Entity) -> list[str]:
    problems = []
    where = f"{prefix}, entity '{entity.name}'"
    attr_names = [a.name for a in entity.attributes]
    for name in sorted({n for n in attr_names if attr_names.count(n) > 1}):
        problems.append(f"{where}: duplicate attribute name '{name}'")
    for attr in entity.attributes:
        problems.extend(_audit_attribute(where, attr))
    for constraint in entity.constraints:
        attr = entity.attribute(constraint.attributeName)
        if attr is None:
            problems.append(f"{where}: constraint names missing attribute "
                            f"'{constraint.attributeName}'")
        else:
            problems.extend(_audit_constraint(where, attr, constraint))
    return problems


def _audit_attribute(where: str, attr: Attribute) -> list[str]:
    problems = []
    if attr.type not in ("number", "text") and not _REFERENCE_RE.fullmatch(attr.type):
        problems.append(f"{where}: attribute '{attr.name}' has bad type "
                        f"'{attr.type}'")
        return problems
    if attr.default is None:
        return problems
    if attr.type == "number":
        if isinstance(attr.default, bool) or not isinstance(attr.default, (int, float)):
            problems.append(f"{where}: default of numeric attribute "
                            f"'{attr.name}' is not a number")
    elif not isinstance(attr.default, str):
        problems.append(f"{where}: default of attribute '{attr.name}' "
                        f"is not text")
    return problems


def _audit_constraint(where: str, attr: Attribute, constraint: Constraint) -> list[str]:
    problems = []
    if constraint.sign not in COMPARATORS:
        problems.append(f"{where}: constraint on '{attr.name}' has bad sign "
                        f"'{constraint.sign}'")
    value_is_number = (isinstance(constraint.value, (int, float))
                       and not isinstance(constraint.value, bool))
    if attr.type == "number" and not value_is_number:
        problems.append(f"{where}: constraint on numeric '{attr.name}' "
                        f"compares against non-number")
    if attr.type != "number" and value_is_number:
        problems.append(f"{where}: constraint on text '{attr.name}' "
                        f"compares against a number")
    return problems


def _audit_relation(prefix: str, model: Model, relation: Relation) -> list[str]:
    problems = []
    where = f"{prefix}, relation '{relation.name}'"
    endpoints = []
    for role, name in (("start", relation.startEntity), ("end", relation.endEntity)):
        entity = model.entity(name)
        if entity is None:
            problems.append(f"{where}: {role} entity '{name}' is missing")
        else:
            endpoints.append(entity)
    if not _card_le(relation.startMin, relation.startMax):
        problems.append(f"{where}: startMin exceeds startMax")
    if not _card_le(relation.endMin, relation.endMax):
        problems.append(f"{where}: endMin exceeds endMax")
    for constraint in relation.constraints:
        owners = [e for e in endpoints if e.attribute(constraint.attributeName)]
        if not owners:
            problems.append(f"{where}: constraint names attribute "
                            f"'{constraint.attributeName}' of neither endpoint")
        else:
            attr = owners[0].attribute(constraint.attributeName)
            problems.extend(_audit_constraint(where, attr, constraint))
    return problems


def _names_in_model(model: Model) -> set[str]:
    names = {model.name}
    for entity in model.entities:
        names.add(entity.name)
        names.update(a.name for a in entity.attributes)
    names.update(r.name for r in model.relations)
    return names


def _describe(element) -> str:
    return f"{type(element).__name__.lower()} '{element.name}'"


def _normalize_model(model: Model) -> None:
    # Keep every named collection sorted so persistence round-trips exactly.
    model.linkedModels.sort()
    for entity in model.entities:
        entity.attributes.sort(key=lambda a: a.name)
    model.entities.sort(key=lambda e: e.name)
    model.relations.sort(key=lambda r: r.name)


def _replace_named(bucket: list, element) -> None:
    for i, existing in enumerate(bucket):
        if existing.name == element.name:
            bucket[i] = element
            break
    else:
        bucket.append(element)
    bucket.sort(key=lambda item: item.name)


# --- serialization helpers ---------------------------------------------------

_MISSING = object()


def _get(doc: dict, key: str, expected: type, where: str, default=_MISSING):
    if key not in doc:
        if default is not _MISSING:
            return default
        raise FormatError(f"{where}: missing field '{key}'")
    value = doc[key]
    if not isinstance(value, expected) or isinstance(value, bool):
        raise FormatError(f"{where}.{key}: expected {expected.__name__}")
    return value


def _get_str_list(doc: dict, key: str, where: str) -> list[str]:
    items = _get(doc, key, list, where, default=[])
    if not all(isinstance(item, str) for item in items):
        raise FormatError(f"{where}.{key}: expected a list of strings")
    return list(items)


def _card_doc(value):
    return "N" if value is UNBOUNDED else value


def _card_from(doc: dict, key: str, where: str):
    value = doc.get(key, 0 if key.endswith("Min") else "N")
    if value == "N":
        return UNBOUNDED
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise FormatError(f"{where}.{key}: expected a non-negative integer or \"N\"")
    return value


def _scalar_from(doc: dict, key: str, where: str, optional: bool = False):
    if key not in doc:
        if optional:
            return None
        raise FormatError(f"{where}: missing field '{key}'")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise FormatError(f"{where}.{key}: expected a number or string")
    return value


def _model_doc(model: Model) -> dict:
    return {
        "name": model.name,
        "description": model.description,
        "metaModelName": model.metaModelName,
        "fileName": model.fileName,
        "connection": model.connection,
        "linkedModels": sorted(model.linkedModels),
        "entities": [_entity_doc(e) for e in sorted(model.entities, key=lambda e: e.name)],
        "relations": [_relation_doc(r) for r in sorted(model.relations, key=lambda r: r.name)],
    }


def _entity_doc(entity: Entity) -> dict:
    return {
        "name": entity.name,
        "description": entity.description,
        "entityType": entity.entityType,
        "drawType": entity.drawType,
        "attributes": [_attribute_doc(a)
                       for a in sorted(entity.attributes, key=lambda a: a.name)],
        "constraints": [_constraint_doc(c) for c in entity.constraints],
        "operations": list(entity.operations),
        "values": list(entity.values),
    }


def _attribute_doc(attr: Attribute) -> dict:
    doc = {"name": attr.name, "type": attr.type, "description": attr.description}
    if attr.default is not None:
        doc["default"] = attr.default
    return doc


def _constraint_doc(constraint: Constraint) -> dict:
    return {
        "attributeName": constraint.attributeName,
        "sign": constraint.sign,
        "value": constraint.value,
        "errorMessage": constraint.errorMessage,
    }


def _relation_doc(relation: Relation) -> dict:
    return {
        "name": relation.name,
        "description": relation.description,
        "type": relation.type,
        "startEntity": relation.startEntity,
        "endEntity": relation.endEntity,
        "startMin": _card_doc(relation.startMin),
        "startMax": _card_doc(relation.startMax),
        "endMin": _card_doc(relation.endMin),
        "endMax": _card_doc(relation.endMax),
        "constraints": [_constraint_doc(c) for c in relation.constraints],
    }


def _model_from(doc, where: str) -> Model:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    entities = [_entity_from(item, f"{where}.entities[{i}]")
                for i, item in enumerate(_get(doc, "entities", list, where, default=[]))]
    relations = [_relation_from(item, f"{where}.relations[{i}]")
                 for i, item in enumerate(_get(doc, "relations", list, where, default=[]))]
    return Model(
        name=_get(doc, "name", str, where),
        description=_get(doc, "description", str, where, default=""),
        metaModelName=_get(doc, "metaModelName", str, where, default=""),
        fileName=_get(doc, "fileName", str, where, default=""),
        connection=_get(doc, "connection", str, where, default=""),
        linkedModels=_get_str_list(doc, "linkedModels", where),
        entities=entities,
        relations=relations,
    )


def _entity_from(doc, where: str) -> Entity:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    attributes = [_attribute_from(item, f"{where}.attributes[{i}]")
                  for i, item in enumerate(_get(doc, "attributes", list, where, default=[]))]
    constraints = [_constraint_from(item, f"{where}.constraints[{i}]")
                   for i, item in enumerate(_get(doc, "constraints", list, where, default=[]))]
    return Entity(
        name=_get(doc, "name", str, where),
        description=_get(doc, "description", str, where, default=""),
        entityType=_get(doc, "entityType", str, where, default=""),
        drawType=_get(doc, "drawType", str, where, default=""),
        attributes=attributes,
        constraints=constraints,
        operations=_get_str_list(doc, "operations", where),
        values=_get_str_list(doc, "values", where),
    )


def _attribute_from(doc, where: str) -> Attribute:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    return Attribute(
        name=_get(doc, "name", str, where),
        type=_get(doc, "type", str, where, default="text"),
        description=_get(doc, "description", str, where, default=""),
        default=_scalar_from(doc, "default", where, optional=True),
    )


def _constraint_from(doc, where: str) -> Constraint:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    return Constraint(
        attributeName=_get(doc, "attributeName", str, where),
        sign=_get(doc, "sign", str, where),
        value=_scalar_from(doc, "value", where),
        errorMessage=_get(doc, "errorMessage", str, where, default=""),
    )


def _relation_from(doc, where: str) -> Relation:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    constraints = [_constraint_from(item, f"{where}.constraints[{i}]")
                   for i, item in enumerate(_get(doc, "constraints", list, where, default=[]))]
    return Relation(
        name=_get(doc, "name", str, where),
        startEntity=_get(doc, "startEntity", str, where),
        endEntity=_get(doc, "endEntity", str, where),
        description=_get(doc, "description", str, where, default=""),
        type=_get(doc, "type", str, where, default=""),
        startMin=_card_from(doc, "startMin", where),
        startMax=_card_from(doc, "startMax", where),
        endMin=_card_from(doc, "endMin", where),
        endMax=_card_from(doc, "endMax", where),
        constraints=constraints,
    )
