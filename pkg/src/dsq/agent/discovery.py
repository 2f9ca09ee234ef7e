"""The discovery agent: probe a source, infer its structure, register it.

The machine itself ships as data (data/discovery.json) and runs on the
generic engine:

    Start -> Probe -> ExtractSchema -> Register -> Done

Probe detects the source kind, ExtractSchema infers an entity from the
content (the reader choice is guarded by the source category), Register
upserts a model carrying the entity. Re-discovering a known source replaces
its model, so discovery is idempotent.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..adapters import (
    FORMAT_CATEGORIES, SourceDescriptor, descriptor_for, infer_schema,
)
from ..catalog import Catalog, Model
from ..errors import AgentError
from .machine import ActionRegistry, StateMachineDef, machine_from_dict, run

#: Event script the driver feeds to the discovery machine.
DISCOVERY_EVENTS = ("begin", "probed", "schemaReady", "registered")


def discovery_machine() -> StateMachineDef:
    doc = json.loads(
        resources.files(__package__).joinpath("data/discovery.json")
        .read_text(encoding="utf-8"))
    return machine_from_dict(doc)


def discovery_registry() -> ActionRegistry:
    def probe(ctx):
        ctx["descriptor"] = descriptor_for(ctx["path"], ctx["source_id"])

    def infer(ctx):
        ctx["entity"] = infer_schema(ctx["descriptor"])

    def register(ctx):
        descriptor = ctx["descriptor"]
        entity = ctx["entity"]
        ctx["catalog"].upsert(Model(
            name=entity.name,
            metaModelName=descriptor.format,
            fileName=descriptor.location,
            connection=descriptor.id,
            entities=[entity],
        ))

    def note(tag):
        return lambda ctx: ctx.setdefault("log", []).append(tag)

    def category_is(wanted):
        return lambda ctx: ctx["descriptor"].category == wanted

    return ActionRegistry(
        guards={
            "isStructured": category_is("structured"),
            "isSemistructured": category_is("semistructured"),
            "isUnstructured": category_is("unstructured"),
        },
        actions={
            "beginDiscovery": note("begin"),
            "probeSource": probe,
            "chooseTableReader": note("reader:table"),
            "chooseRecordReader": note("reader:record"),
            "chooseTextReader": note("reader:text"),
            "inferSchema": infer,
            "registerModel": register,
            "noteRegistered": note("registered"),
            "finishDiscovery": note("done"),
        },
    )


def discover(path, catalog: Catalog, source_id: str | None = None) -> Catalog:
    """Drive the discovery machine over `path` and register the result.

    Returns the updated catalog. Unsupported formats and reader failures
    propagate before the catalog is touched.
    """
    context = {
        "path": str(path),
        "source_id": source_id or Path(path).stem,
        "catalog": catalog,
    }
    trace = run(discovery_machine(), DISCOVERY_EVENTS, context,
                discovery_registry())
    if trace.status != "finished":
        raise AgentError(f"discovery did not finish: {trace.error or trace.status}")
    return catalog


def descriptor_from_model(model: Model) -> SourceDescriptor | None:
    """Reconstruct the source descriptor a model was registered from, or
    None when the model does not describe a readable source."""
    fmt = model.metaModelName
    if fmt not in FORMAT_CATEGORIES or not model.fileName:
        return None
    return SourceDescriptor(
        id=model.connection or model.name,
        category=FORMAT_CATEGORIES[fmt],
        format=fmt,
        location=model.fileName,
    )


def sources_from_catalog(catalog: Catalog) -> dict[str, SourceDescriptor]:
    """All readable sources registered in the catalog, keyed by id."""
    sources = {}
    for model in catalog.models:
        descriptor = descriptor_from_model(model)
        if descriptor is not None:
            sources[descriptor.id] = descriptor
    return sources
