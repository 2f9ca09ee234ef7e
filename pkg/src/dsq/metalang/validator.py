"""Catalog-aware validation: resolve query names to catalogue elements.

Every object must resolve to an entity, directly or through a synonym;
`par` qualifiers must resolve to attributes of that entity (again possibly
through a synonym). The resolution result is embedded as a Binding so the
engine and the SQL translator never search the catalog again.

Question operators (who/where/what/which/how) additionally apply an
optional role filter: when an entity's entityType is one of the role tags
(agent, location, subject, selector, measure) it is only reachable through
the matching operator. Untagged entities are reachable through all of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog import Catalog, Entity, Model
from ..errors import (
    AmbiguousSynonym, RoleMismatch, UnknownAttribute, UnknownObject,
)
from .nodes import (
    Cons, ObjectItem, Predicate, Profile, Query, Select, Semant, SetOp,
    Question,
)

FORMAT_CATEGORIES = {
    "csv": "structured",
    "xml": "semistructured",
    "json": "semistructured",
    "txt": "unstructured",
}

ROLE_BY_KIND = {
    "who": "agent",
    "where": "location",
    "what": "subject",
    "which": "selector",
    "how": "measure",
}

_ROLE_TAGS = frozenset(ROLE_BY_KIND.values())


@dataclass(frozen=True)
class Binding:
    """Where one query item landed in the catalog."""

    model: str
    entity: str
    attribute: str | None
    source: str            # source descriptor id (the model's connection)
    category: str          # structured / semistructured / unstructured
    format: str            # csv / xml / json / txt
    entity_attributes: tuple[str, ...]

    def describe(self) -> str:
        attr = f".{self.attribute}" if self.attribute else ""
        return f"{self.model}/{self.entity}{attr}@{self.source or '-'}"


@dataclass(frozen=True)
class ValidatedQuery:
    ast: Query
    bindings: tuple[Binding, ...]
    predicates: tuple[Predicate, ...] = ()  # Cons only, attributes resolved


def validate(query: Query, catalog: Catalog) -> ValidatedQuery:
    """Resolve all names in `query` against `catalog`."""
    if isinstance(query, Select):
        bindings = tuple(_bind_item(item, catalog) for item in query.items)
        return ValidatedQuery(query, bindings)
    if isinstance(query, Question):
        role = ROLE_BY_KIND[query.kind]
        bindings = []
        for item in query.items:
            binding, entity = _bind_item_entity(item, catalog)
            if entity.entityType in _ROLE_TAGS and entity.entityType != role:
                raise RoleMismatch(query.kind, entity.name, role)
            bindings.append(binding)
        return ValidatedQuery(query, tuple(bindings))
    if isinstance(query, SetOp):
        bindings = tuple(_bind_item(item, catalog) for item in query.items)
        return ValidatedQuery(query, bindings)
    if isinstance(query, Cons):
        model, entity = _resolve_object(query.object, catalog)
        binding = _binding(model, entity, None)
        resolved = tuple(
            Predicate(_resolve_par(model, entity, p.attribute, catalog),
                      p.comparator, p.rhs)
            for p in query.predicates)
        return ValidatedQuery(query, (binding,), resolved)
    if isinstance(query, Semant):
        model, entity = _resolve_object(query.object, catalog)
        return ValidatedQuery(query, (_binding(model, entity, None),))
    if isinstance(query, Profile):
        bindings = []
        for obj, _weight in query.entries:
            model, entity = _resolve_object(obj, catalog)
            bindings.append(_binding(model, entity, None))
        return ValidatedQuery(query, tuple(bindings))
    raise TypeError(f"not a query: {query!r}")


def _bind_item(item: ObjectItem, catalog: Catalog) -> Binding:
    binding, _entity = _bind_item_entity(item, catalog)
    return binding


def _bind_item_entity(item: ObjectItem, catalog: Catalog) -> tuple[Binding, Entity]:
    model, entity = _resolve_object(item.object, catalog)
    attribute = None
    if item.par is not None:
        attribute = _resolve_par(model, entity, item.par, catalog)
    return _binding(model, entity, attribute), entity


def _binding(model: Model, entity: Entity, attribute: str | None) -> Binding:
    fmt = model.metaModelName if model.metaModelName in FORMAT_CATEGORIES else ""
    return Binding(
        model=model.name,
        entity=entity.name,
        attribute=attribute,
        source=model.connection or model.name,
        category=FORMAT_CATEGORIES.get(fmt, ""),
        format=fmt,
        entity_attributes=tuple(a.name for a in entity.attributes),
    )


def _resolve_object(name: str, catalog: Catalog) -> tuple[Model, Entity]:
    matches = [(m, e) for m in catalog.models for e in m.entities
               if e.name == name]
    if len(matches) > 1:
        raise AmbiguousSynonym(name, [f"{m.name}/{e.name}" for m, e in matches])
    if matches:
        return matches[0]

    # Fall back to synonyms whose target is an entity.
    targets = []
    for target in catalog.synonyms.get(name, ()):
        parts = target.split("/")
        if len(parts) != 2:
            continue
        model = catalog.model(parts[0])
        entity = model.entity(parts[1]) if model else None
        if entity is not None:
            targets.append((target, model, entity))
    if len(targets) > 1:
        raise AmbiguousSynonym(name, [t for t, _, _ in targets])
    if targets:
        return targets[0][1], targets[0][2]
    raise UnknownObject(name)


def _resolve_par(model: Model, entity: Entity, name: str,
                 catalog: Catalog) -> str:
    if entity.attribute(name) is not None:
        return name

    # Synonyms may name an attribute of this entity.
    prefix = f"{model.name}/{entity.name}/"
    targets = [t for t in catalog.synonyms.get(name, ())
               if t.startswith(prefix)
               and entity.attribute(t[len(prefix):]) is not None]
    if len(targets) > 1:
        raise AmbiguousSynonym(name, targets)
    if targets:
        return targets[0][len(prefix):]
    raise UnknownAttribute(entity.name, name)
