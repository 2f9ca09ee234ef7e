"""dsq: a small dataspace engine over files.

A metadata catalog describes heterogeneous sources (CSV tables, XML/JSON
records, plain text); a state-machine agent discovers their structure; a
query metalanguage is parsed, validated against the catalog, evaluated
federated across the sources, and — for structured sources — translated
to SQL.
"""

__version__ = "0.1.0"

from .adapters import (
    SourceDescriptor, build_semantic_net, detect_kind, infer_schema,
    keyword_search, read_semistructured, read_structured,
)
from .agent import discover, sources_from_catalog
from .catalog import Attribute, Catalog, Constraint, Entity, Model, Relation
from .engine import (
    ProfileStore, RuntimeHistory, aggregate, clean_coagulate, clean_cut,
    execute, set_op,
)
from .metalang import parse, pretty_print, tokenize, validate
from .results import Column, ResultSet, render_table
from .sqlgen import SqlText, translate

__all__ = [
    "Attribute", "Catalog", "Column", "Constraint", "Entity", "Model",
    "ProfileStore", "Relation", "ResultSet", "RuntimeHistory", "SqlText",
    "SourceDescriptor", "aggregate", "build_semantic_net", "clean_coagulate",
    "clean_cut", "detect_kind", "discover", "execute", "infer_schema",
    "keyword_search", "parse", "pretty_print", "read_semistructured",
    "read_structured", "render_table", "set_op", "sources_from_catalog",
    "tokenize", "translate", "validate",
]
