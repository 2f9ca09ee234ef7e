"""Seeded random generators shared by module and acceptance tests:
query trees, loosely-spaced sentences, result sets, catalogs, machines."""

from __future__ import annotations

import random
import string

from dsq.catalog import Attribute, Catalog, Constraint, Entity, Model, Relation
from dsq.metalang import (
    AGG_KINDS, BinaryOp, COMPARATORS, Cons, KEYWORDS, NumberLit, ObjectItem,
    Paren, ParamRef, Predicate, Profile, Select, Semant, SetOp, Question,
)
from dsq.agent import State, StateKind, StateMachineDef, Transition
from dsq.results import Column, ResultSet

RESERVED = set(KEYWORDS) | set(AGG_KINDS)

_ARITH = "+-*/"


# --- identifiers and expressions ----------------------------------------------

def gen_ident(rng: random.Random, max_tail: int = 7) -> str:
    while True:
        head = rng.choice(string.ascii_letters)
        tail = "".join(rng.choices(string.ascii_letters + string.digits + "_",
                                   k=rng.randint(0, max_tail)))
        name = head + tail
        if name not in RESERVED:
            return name


def gen_operand(rng: random.Random, depth: int, params=()):
    roll = rng.random()
    if depth > 0 and roll < 0.2:
        return Paren(gen_expr(rng, depth - 1, params))
    if params and roll < 0.45:
        return ParamRef(rng.choice(params))
    return NumberLit(rng.randint(0, 99))


def gen_expr(rng: random.Random, depth: int = 2, params=()):
    node = gen_operand(rng, depth, params)
    for _ in range(rng.randint(0, 2)):
        node = BinaryOp(rng.choice(_ARITH), node, gen_operand(rng, depth, params))
    return node


def gen_item(rng: random.Random, allow_agg: bool) -> ObjectItem:
    par = gen_ident(rng) if rng.random() < 0.6 else None
    agg = rng.choice(AGG_KINDS) if allow_agg and rng.random() < 0.3 else None
    return ObjectItem(gen_ident(rng), par, agg)


def gen_query(rng: random.Random):
    form = rng.choice(("Se", "who", "where", "what", "which", "how",
                       "Cons", "Semant", "profile", "Union", "Inters",
                       "Differ"))
    if form == "Se":
        items = tuple(gen_item(rng, True) for _ in range(rng.randint(1, 4)))
        return Select(items)
    if form in ("who", "where", "how"):
        items = tuple(gen_item(rng, False) for _ in range(rng.randint(1, 4)))
        return Question(form, items)
    if form in ("what", "which"):
        items = tuple(gen_item(rng, False) for _ in range(rng.randint(1, 2)))
        return Question(form, items)
    if form == "Cons":
        predicates = tuple(
            Predicate(gen_ident(rng), rng.choice(COMPARATORS),
                      gen_expr(rng, params=(gen_ident(rng),)))
            for _ in range(rng.randint(0, 3)))
        return Cons(gen_ident(rng), predicates)
    if form == "Semant":
        return Semant(gen_ident(rng), gen_ident(rng))
    if form == "profile":
        entries = tuple((gen_ident(rng), rng.randint(0, 99))
                        for _ in range(rng.randint(1, 3)))
        return Profile(entries)
    size = 2 if form == "Differ" else rng.randint(2, 4)
    items = tuple(gen_item(rng, False) for _ in range(size))
    return SetOp(form, items)


# --- sentence rendering ---------------------------------------------------------
# An independent walk from the tree to the token strings of the grammar, so
# sentence generation does not lean on the package's printer or lexer.

def query_tokens(query) -> list[str]:
    if isinstance(query, Select):
        return ["Se", "("] + _item_tokens(query.items) + [")"]
    if isinstance(query, Question):
        return [query.kind, "("] + _item_tokens(query.items) + [")"]
    if isinstance(query, SetOp):
        return [query.kind, "("] + _item_tokens(query.items) + [")"]
    if isinstance(query, Cons):
        tokens = ["Cons", "(", query.object]
        for p in query.predicates:
            tokens += [",", p.attribute, p.comparator] + _expr_tokens(p.rhs)
        return tokens + [")"]
    if isinstance(query, Semant):
        return ["Semant", "(", query.object, ".", query.term, ")"]
    if isinstance(query, Profile):
        tokens = ["profile", "("]
        for i, (obj, weight) in enumerate(query.entries):
            if i:
                tokens.append(",")
            tokens += [obj, ".", str(weight)]
        return tokens + [")"]
    raise TypeError(query)


def _item_tokens(items) -> list[str]:
    tokens: list[str] = []
    for i, item in enumerate(items):
        if i:
            tokens.append(",")
        tokens.append(item.object)
        if item.par is not None:
            tokens += [".", item.par]
        if item.agg is not None:
            tokens += ["Agg", item.agg]
    return tokens


def _expr_tokens(expr) -> list[str]:
    if isinstance(expr, NumberLit):
        return [str(expr.value)]
    if isinstance(expr, ParamRef):
        return [expr.name]
    if isinstance(expr, Paren):
        return ["("] + _expr_tokens(expr.inner) + [")"]
    if isinstance(expr, BinaryOp):
        return _expr_tokens(expr.left) + [expr.op] + _expr_tokens(expr.right)
    raise TypeError(expr)


_WORDISH = set(string.ascii_letters + string.digits + "_")


def render_loose(query, rng: random.Random) -> str:
    """A sentence with randomized whitespace wherever the grammar allows."""
    tokens = query_tokens(query)
    out = [rng.choice(["", " ", "  "])]
    for i, token in enumerate(tokens):
        if i:
            prev = tokens[i - 1]
            must_split = prev[-1] in _WORDISH and token[0] in _WORDISH
            gap = rng.choice([" ", "  ", "\t", " \n "]) if must_split \
                else rng.choice(["", "", " ", "  ", "\t"])
            out.append(gap)
        out.append(token)
    out.append(rng.choice(["", " ", "\n"]))
    return "".join(out)


# --- result sets -----------------------------------------------------------------

_NUM_POOL = (0.0, 1.0, 2.0, 5.0, 10.5, -3.0)
_TEXT_POOL = ("a", "b", "east", "x")


def gen_schema(rng: random.Random) -> list[Column]:
    width = rng.randint(1, 3)
    return [Column(f"c{i}", rng.choice(("number", "text")))
            for i in range(width)]


def gen_cell(rng: random.Random, column: Column):
    if rng.random() < 0.15:
        return None
    if column.type == "number":
        return rng.choice(_NUM_POOL)
    return rng.choice(_TEXT_POOL)


def gen_resultset(rng: random.Random, columns: list[Column],
                  source: str = "gen") -> ResultSet:
    rows = [[gen_cell(rng, col) for col in columns]
            for _ in range(rng.randint(0, 8))]
    return ResultSet(list(columns), rows, [source] * len(rows))


# --- catalogs ---------------------------------------------------------------------

def gen_attribute(rng: random.Random, index: int) -> Attribute:
    kind = rng.choice(("number", "text", "reference(thing)"))
    default = None
    if rng.random() < 0.4:
        default = rng.choice((1, 2.5, 10)) if kind == "number" else "dflt"
    return Attribute(f"a{index}", kind, description=f"attr {index}",
                     default=default)


def gen_constraint(rng: random.Random, attr: Attribute) -> Constraint:
    sign = rng.choice(COMPARATORS)
    value = rng.choice((0, 5, 7.5)) if attr.type == "number" else "bound"
    return Constraint(attr.name, sign, value, f"violates {attr.name}")


def gen_entity(rng: random.Random, index: int) -> Entity:
    attributes = [gen_attribute(rng, i) for i in range(rng.randint(0, 4))]
    constraints = [gen_constraint(rng, rng.choice(attributes))
                   for _ in range(rng.randint(0, 2))] if attributes else []
    return Entity(
        name=f"e{index}",
        description=f"entity {index}",
        entityType=rng.choice(("", "table", "record", "agent")),
        drawType=rng.choice(("", "box")),
        attributes=attributes,
        constraints=constraints,
        operations=[f"op{i}" for i in range(rng.randint(0, 2))],
        values=[f"v{i}" for i in range(rng.randint(0, 2))],
    )


def gen_cardinality(rng: random.Random):
    low = rng.choice((0, 0, 1, 2))
    high = rng.choice((None, low, low + 3))
    return low, high


def gen_relation(rng: random.Random, index: int, entities) -> Relation:
    start = rng.choice(entities)
    end = rng.choice(entities)
    smin, smax = gen_cardinality(rng)
    emin, emax = gen_cardinality(rng)
    # A name present in both endpoints resolves to the start entity's
    # attribute, so constraint values must be typed against that one.
    candidates = {a.name: a for a in end.attributes}
    candidates.update({a.name: a for a in start.attributes})
    constraints = [gen_constraint(rng, rng.choice(list(candidates.values())))] \
        if candidates and rng.random() < 0.3 else []
    return Relation(
        name=f"r{index}", startEntity=start.name, endEntity=end.name,
        type=rng.choice(("", "owns", "uses")),
        startMin=smin, startMax=smax, endMin=emin, endMax=emax,
        constraints=constraints,
    )


def gen_catalog(rng: random.Random) -> Catalog:
    """A random valid catalog (normalized ordering)."""
    models = []
    for m in range(rng.randint(0, 3)):
        entities = [gen_entity(rng, i) for i in range(rng.randint(0, 3))]
        relations = [gen_relation(rng, i, entities)
                     for i in range(rng.randint(0, 2))] if entities else []
        models.append(Model(
            name=f"m{m}",
            description=f"model {m}",
            metaModelName=rng.choice(("", "csv", "txt")),
            fileName=rng.choice(("", f"file{m}.csv")),
            connection=rng.choice(("", f"src{m}")),
            linkedModels=[f"m{i}" for i in range(m) if rng.random() < 0.3],
            entities=entities,
            relations=relations,
        ))
    synonyms = {}
    for s in range(rng.randint(0, 3)):
        if not models:
            break
        model = rng.choice(models)
        paths = [model.name]
        for entity in model.entities:
            paths.append(f"{model.name}/{entity.name}")
            paths.extend(f"{model.name}/{entity.name}/{a.name}"
                         for a in entity.attributes)
        synonyms[f"syn{s}"] = [rng.choice(paths)]
    catalog = Catalog.from_dict(Catalog(models, synonyms).to_dict())
    assert catalog.audit() == []
    return catalog


# --- state machines ----------------------------------------------------------------

def gen_machine(rng: random.Random) -> tuple[StateMachineDef, dict]:
    """A random validated machine plus the flag context its guards read.

    Reachability holds by construction (a spanning chain); triggers are
    unique per source state, so the machine is trivially deterministic.
    """
    n_mid = rng.randint(1, 4)
    mids = [State(f"S{i}", StateKind.INTERMEDIATE,
                  entry_action=f"enter{i}" if rng.random() < 0.7 else None,
                  exit_action=f"leave{i}" if rng.random() < 0.7 else None)
            for i in range(n_mid)]
    start = State("Start", StateKind.INITIAL, initial_activity="boot")
    final = State("End", StateKind.FINAL, final_activity="wrap")
    states = [start] + mids + [final]

    flags = {"flagA": rng.random() < 0.5, "flagB": rng.random() < 0.5}
    counters = {}

    def next_trigger(source: str) -> str:
        counters[source] = counters.get(source, 0) + 1
        return f"ev{counters[source]}"

    chain = [start.name] + [s.name for s in mids] + [final.name]
    transitions = []
    for a, b in zip(chain, chain[1:]):
        transitions.append(Transition(a, b, next_trigger(a),
                                      guard=None,
                                      action=f"go_{b}" if rng.random() < 0.5 else None))
    for _ in range(rng.randint(0, 4)):
        source = rng.choice(chain[:-1])
        target = rng.choice(chain)
        guard = rng.choice((None, "flagA", "flagB"))
        transitions.append(Transition(source, target, next_trigger(source),
                                      guard=guard,
                                      action=rng.choice((None, "hop"))))
    defn = StateMachineDef("random", tuple(states), tuple(transitions))
    return defn, flags
