"""Command-line surface: catalog management, discovery, queries, SQL.

One process, one shot per invocation. Data goes to stdout and errors to
stderr, so output composes in pipelines. Exit codes: 0 success, 1 usage
error, 2 domain error. Catalog writes take an advisory lock file next to
the catalog, so concurrent invocations do not interleave writes.

Profile weights and runtime history live in sidecar files next to the
catalog (<stem>.profiles.json, <stem>.runtimes.json).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from filelock import FileLock, Timeout

from . import __version__
from .agent import discover, sources_from_catalog
from .adapters import descriptor_for
from .catalog import Catalog, Model
from .engine import (
    ProfileStore, RuntimeHistory, execute, shape_key,
)
from .errors import CatalogLocked, DsqError, NotFound
from .metalang import parse, validate
from .results import render_csv, render_number, render_table
from .sqlgen import translate

DEFAULT_CATALOG = "./dataspace.json"
LOCK_TIMEOUT_S = 10.0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # Usage problems exit 1 (argparse defaults to 2, which we reserve
        # for domain errors).
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="dsq", description="dataspace queries over files")
    parser.add_argument("--catalog", default=None,
                        help="catalog file (env DSQ_CATALOG, default "
                             f"{DEFAULT_CATALOG})")
    parser.add_argument("--user", default="default",
                        help="user id for profile weights")
    parser.add_argument("--output", choices=("table", "csv"), default="table",
                        help="result rendering")
    parser.add_argument("--version", action="version", version=__version__)

    commands = parser.add_subparsers(dest="command", required=True)

    init = commands.add_parser("init", help="create an empty catalog")
    init.add_argument("--force", action="store_true",
                      help="overwrite an existing catalog")

    add = commands.add_parser("add-source", help="register a data source")
    add.add_argument("path")
    add.add_argument("--id", dest="source_id", default=None,
                     help="source id (defaults to the file stem)")

    disc = commands.add_parser("discover",
                               help="infer a source's structure into the catalog")
    disc.add_argument("target", help="a registered source id or a file path")

    commands.add_parser("show", help="print models, entities and synonyms")

    query = commands.add_parser("query", help="evaluate a query")
    query.add_argument("text")
    query.add_argument("--estimate", action="store_true",
                       help="print the estimated runtime instead of executing")

    tr = commands.add_parser("translate", help="translate a query to SQL")
    tr.add_argument("text")

    profile = commands.add_parser("profile", help="read or write profile weights")
    actions = profile.add_subparsers(dest="action", required=True)
    get = actions.add_parser("get")
    get.add_argument("object")
    put = actions.add_parser("set")
    put.add_argument("object")
    put.add_argument("weight", type=int)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    catalog_path = Path(args.catalog or os.environ.get("DSQ_CATALOG")
                        or DEFAULT_CATALOG)
    try:
        return _dispatch(args, catalog_path)
    except (DsqError, OSError) as exc:
        print(f"dsq: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, catalog_path: Path) -> int:
    if args.command == "init":
        return _cmd_init(catalog_path, args.force)
    if args.command == "add-source":
        return _cmd_add_source(catalog_path, args.path, args.source_id)
    if args.command == "discover":
        return _cmd_discover(catalog_path, args.target)
    if args.command == "show":
        return _cmd_show(catalog_path)
    if args.command == "query":
        return _cmd_query(catalog_path, args.text, args.estimate,
                          args.user, args.output)
    if args.command == "translate":
        return _cmd_translate(catalog_path, args.text)
    return _cmd_profile(catalog_path, args.action, args.object,
                        getattr(args, "weight", None), args.user)


def _locked_save(catalog: Catalog, path: Path) -> None:
    lock = FileLock(str(path) + ".lock")
    try:
        with lock.acquire(timeout=LOCK_TIMEOUT_S):
            catalog.save(path)
    except Timeout:
        raise CatalogLocked(str(path))


def _cmd_init(path: Path, force: bool) -> int:
    if path.exists() and not force:
        raise DsqError(f"'{path}' already exists (use --force to overwrite)")
    _locked_save(Catalog(), path)
    print(f"created {path}")
    return 0


def _cmd_add_source(path: Path, source_path: str, source_id: str | None) -> int:
    catalog = Catalog.load(path)
    descriptor = descriptor_for(source_path, source_id)
    catalog.upsert(Model(
        name=descriptor.id,
        metaModelName=descriptor.format,
        fileName=descriptor.location,
        connection=descriptor.id,
    ))
    _locked_save(catalog, path)
    print(f"registered {descriptor.id} ({descriptor.category}, {descriptor.format})")
    return 0


def _cmd_discover(path: Path, target: str) -> int:
    catalog = Catalog.load(path)
    if Path(target).exists():
        discover(target, catalog)
    else:
        model = next((m for m in catalog.models
                      if target in (m.connection, m.name)), None)
        if model is None or not model.fileName:
            raise NotFound(target)
        discover(model.fileName, catalog, source_id=model.connection or model.name)
    _locked_save(catalog, path)
    print(f"discovered {target}")
    return 0


def _cmd_show(path: Path) -> int:
    catalog = Catalog.load(path)
    lines = [f"catalog: {len(catalog.models)} model(s), "
             f"{len(catalog.synonyms)} synonym(s)"]
    for model in sorted(catalog.models, key=lambda m: m.name):
        kind = model.metaModelName or "-"
        origin = model.fileName or "-"
        lines.append(f"model {model.name} ({kind}, {origin}, "
                     f"connection={model.connection or '-'})")
        for entity in sorted(model.entities, key=lambda e: e.name):
            tag = f" [{entity.entityType}]" if entity.entityType else ""
            lines.append(f"  entity {entity.name}{tag}")
            for attr in sorted(entity.attributes, key=lambda a: a.name):
                lines.append(f"    {attr.name}: {attr.type}")
            for constraint in entity.constraints:
                lines.append(f"    constraint {constraint.attributeName} "
                             f"{constraint.sign} {constraint.value!r}")
        for relation in sorted(model.relations, key=lambda r: r.name):
            lines.append(f"  relation {relation.name}: "
                         f"{relation.startEntity} -> {relation.endEntity}")
    for name in sorted(catalog.synonyms):
        targets = ", ".join(catalog.synonyms[name])
        lines.append(f"synonym {name} -> {targets}")
    print("\n".join(lines))
    return 0


def _sidecar(path: Path, suffix: str) -> Path:
    return path.with_name(path.stem + suffix)


def _cmd_query(path: Path, text: str, estimate: bool, user: str,
               output: str) -> int:
    catalog = Catalog.load(path)
    vq = validate(parse(text), catalog)
    runtimes_path = _sidecar(path, ".runtimes.json")
    history = (RuntimeHistory.load(runtimes_path)
               if runtimes_path.exists() else RuntimeHistory())

    if estimate:
        mean = history.estimate(shape_key(vq))
        print("unknown" if mean is None else f"{render_number(mean)}ms")
        return 0

    profiles_path = _sidecar(path, ".profiles.json")
    profiles = (ProfileStore.load(profiles_path)
                if profiles_path.exists() else ProfileStore())

    started = time.perf_counter()
    result = execute(vq, catalog, sources_from_catalog(catalog),
                     profiles=profiles, user=user)
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    history.record(shape_key(vq), elapsed_ms)
    history.save(runtimes_path)
    if vq.ast.keyword == "profile":
        profiles.save(profiles_path)

    if result.columns:
        print(render_table(result) if output == "table" else render_csv(result))
    return 0


def _cmd_translate(path: Path, text: str) -> int:
    catalog = Catalog.load(path)
    vq = validate(parse(text), catalog)
    print(translate(vq).statement)
    return 0


def _cmd_profile(path: Path, action: str, obj: str, weight: int | None,
                 user: str) -> int:
    profiles_path = _sidecar(path, ".profiles.json")
    profiles = (ProfileStore.load(profiles_path)
                if profiles_path.exists() else ProfileStore())
    if action == "get":
        print(profiles.get(user, obj))
        return 0
    profiles.put(user, obj, weight)
    profiles.save(profiles_path)
    print(f"{obj} = {weight}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
