from __future__ import annotations

from pathlib import Path

import pytest

from dsq.adapters import descriptor_for, infer_schema
from dsq.catalog import Attribute, Catalog, Constraint, Entity, Model, Relation

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

DATA_FILES = ("sales.csv", "costs.csv", "customers.xml", "products.json",
              "reviews.txt", "notes.txt")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def shop_catalog() -> Catalog:
    """A hand-built model with two entities, one relation, one synonym."""
    catalog = Catalog()
    catalog.upsert(Model(name="shop"))
    catalog.upsert(Entity(
        name="sales",
        attributes=[Attribute("region", "text"), Attribute("amount", "number")],
        constraints=[Constraint("amount", ">=", 0, "amount must be non-negative")],
    ), parent="shop")
    catalog.upsert(Entity(
        name="customer",
        attributes=[Attribute("name", "text")],
    ), parent="shop")
    catalog.upsert(Relation(name="buys", startEntity="customer",
                            endEntity="sales"), parent="shop")
    catalog.set_synonym("turnover", "shop/sales/amount")
    return catalog


def build_data_catalog(stems=("sales", "costs", "reviews")) -> Catalog:
    """One model per fixture source, entities inferred from the content."""
    catalog = Catalog()
    by_stem = {Path(name).stem: name for name in DATA_FILES}
    for stem in stems:
        path = FIXTURES / by_stem[stem]
        descriptor = descriptor_for(path)
        catalog.upsert(Model(
            name=stem,
            metaModelName=descriptor.format,
            fileName=str(path),
            connection=stem,
            entities=[infer_schema(descriptor)],
        ))
    return catalog


@pytest.fixture
def data_catalog() -> Catalog:
    catalog = build_data_catalog(("sales", "costs", "reviews", "products",
                                  "customers"))
    catalog.set_synonym("turnover", "sales/sales")
    catalog.set_synonym("volume", "sales/sales/amount")
    return catalog


@pytest.fixture
def data_sources(data_catalog) -> dict:
    sources = {}
    for model in data_catalog.models:
        sources[model.connection] = descriptor_for(model.fileName,
                                                   model.connection)
    return sources
