from __future__ import annotations

import pytest

from dsq.catalog import Attribute, Catalog, Entity, Model
from dsq.errors import (
    AmbiguousSynonym, RoleMismatch, UnknownAttribute, UnknownObject,
)
from dsq.metalang import parse, validate


def test_object_binds_to_entity_and_source(data_catalog):
    vq = validate(parse("Se(sales.amount Agg SUM)"), data_catalog)
    binding = vq.bindings[0]
    assert binding.model == "sales"
    assert binding.entity == "sales"
    assert binding.attribute == "amount"
    assert binding.source == "sales"
    assert binding.category == "structured"
    assert binding.format == "csv"
    assert binding.entity_attributes == ("amount", "region")


def test_object_synonym_resolves_to_entity(data_catalog):
    vq = validate(parse("Se(turnover)"), data_catalog)
    assert vq.bindings[0].entity == "sales"


def test_par_synonym_resolves_to_attribute(data_catalog):
    vq = validate(parse("Se(sales.volume)"), data_catalog)
    assert vq.bindings[0].attribute == "amount"


def test_unknown_object(data_catalog):
    with pytest.raises(UnknownObject):
        validate(parse("Se(nosuch)"), data_catalog)


def test_unknown_attribute(data_catalog):
    with pytest.raises(UnknownAttribute) as err:
        validate(parse("Se(sales.nosuch)"), data_catalog)
    assert err.value.entity == "sales"
    assert err.value.name == "nosuch"


def test_attribute_synonym_in_object_position_is_unknown(data_catalog):
    # `volume` names an attribute; object positions need entities.
    with pytest.raises(UnknownObject):
        validate(parse("Se(volume)"), data_catalog)


def test_ambiguous_entity_name():
    catalog = Catalog()
    for model_name in ("m1", "m2"):
        catalog.upsert(Model(name=model_name,
                             entities=[Entity(name="shared")]))
    with pytest.raises(AmbiguousSynonym):
        validate(parse("Se(shared)"), catalog)


def test_ambiguous_synonym():
    catalog = Catalog()
    catalog.upsert(Model(name="m1", entities=[Entity(name="e1")]))
    catalog.upsert(Model(name="m2", entities=[Entity(name="e2")]))
    catalog.set_synonym("alias", "m1/e1", "m2/e2")
    with pytest.raises(AmbiguousSynonym) as err:
        validate(parse("Se(alias)"), catalog)
    assert err.value.candidates == ["m1/e1", "m2/e2"]


def test_cons_predicates_resolved(data_catalog):
    vq = validate(parse("Cons(sales, volume > 10)"), data_catalog)
    assert vq.predicates[0].attribute == "amount"


def test_cons_unknown_predicate_attribute(data_catalog):
    with pytest.raises(UnknownAttribute):
        validate(parse("Cons(sales, nosuch > 10)"), data_catalog)


def test_profile_objects_must_resolve(data_catalog):
    vq = validate(parse("profile(sales.5, reviews.2)"), data_catalog)
    assert [b.entity for b in vq.bindings] == ["sales", "reviews"]
    with pytest.raises(UnknownObject):
        validate(parse("profile(nosuch.5)"), data_catalog)


def _role_catalog() -> Catalog:
    catalog = Catalog()
    catalog.upsert(Model(name="crm", entities=[
        Entity(name="people", entityType="agent",
               attributes=[Attribute("name", "text")]),
        Entity(name="offices", entityType="location"),
        Entity(name="misc", entityType=""),
        Entity(name="stock", entityType="table"),
    ]))
    return catalog


def test_question_role_filter():
    catalog = _role_catalog()
    assert validate(parse("who(people.name)"), catalog).bindings[0].entity == "people"
    with pytest.raises(RoleMismatch):
        validate(parse("where(people)"), catalog)
    assert validate(parse("where(offices)"), catalog)


def test_untagged_entities_accept_any_question_kind():
    catalog = _role_catalog()
    for kind in ("who", "where", "what", "which", "how"):
        assert validate(parse(f"{kind}(misc)"), catalog)
        # Non-role tags impose no restriction either.
        assert validate(parse(f"{kind}(stock)"), catalog)


def test_role_filter_only_affects_questions():
    catalog = _role_catalog()
    assert validate(parse("Se(people.name)"), catalog)
    assert validate(parse("Cons(offices)"), catalog)
