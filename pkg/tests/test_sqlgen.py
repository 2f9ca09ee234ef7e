from __future__ import annotations

import random

import pytest

import oracles
from dsq.engine import execute
from dsq.errors import CrossSourceSetOp, NotTranslatable, UnboundParameter
from dsq.metalang import parse, validate
from dsq.sqlgen import SqlText, render_expr, translate, translate_predicate

from test_engine import _structured_query


def _sql(text, catalog):
    return translate(validate(parse(text), catalog)).statement


# --- the mapping table --------------------------------------------------------

def test_sum_select(data_catalog):
    assert _sql("Se(sales.amount Agg SUM)", data_catalog) == \
        "SELECT SUM(amount) FROM sales"


def test_plain_select(data_catalog):
    assert _sql("Se(sales.amount)", data_catalog) == \
        "SELECT amount FROM sales"


def test_merged_select_list(data_catalog):
    assert _sql("Se(sales.region, sales.amount)", data_catalog) == \
        "SELECT region, amount FROM sales"


def test_whole_entity_select(data_catalog):
    assert _sql("Se(sales)", data_catalog) == "SELECT * FROM sales"


def test_count_star(data_catalog):
    assert _sql("Se(sales Agg COUNT)", data_catalog) == \
        "SELECT COUNT(*) FROM sales"


def test_cons_where(data_catalog):
    assert _sql("Cons(sales, amount > 10)", data_catalog) == \
        "SELECT * FROM sales WHERE amount > 10"


def test_cons_conjunction(data_catalog):
    assert _sql("Cons(sales, amount > 10, amount <> 20)", data_catalog) == \
        "SELECT * FROM sales WHERE amount > 10 AND amount <> 20"


def test_cons_no_predicates(data_catalog):
    assert _sql("Cons(sales)", data_catalog) == "SELECT * FROM sales"


def test_question_translates_like_select(data_catalog):
    assert _sql("how(sales.amount)", data_catalog) == \
        "SELECT amount FROM sales"


def test_differ_except(data_catalog):
    # Both operands live in the same source here.
    assert _sql("Differ(sales.region, sales.region)", data_catalog) == \
        "SELECT region FROM sales EXCEPT SELECT region FROM sales"


def test_union_chain(data_catalog):
    sql = _sql("Union(sales.region, sales.region, sales.region)", data_catalog)
    assert sql == ("SELECT region FROM sales UNION SELECT region FROM sales "
                   "UNION SELECT region FROM sales")


def test_synonyms_translate_canonically(data_catalog):
    assert _sql("Se(turnover.volume Agg AVG)", data_catalog) == \
        "SELECT AVG(amount) FROM sales"


# --- refusals -------------------------------------------------------------------

def test_semant_not_translatable(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("Semant(reviews.data)", data_catalog)


def test_profile_not_translatable(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("profile(sales.5)", data_catalog)


def test_unstructured_binding_not_translatable(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("Se(reviews.content)", data_catalog)
    with pytest.raises(NotTranslatable):
        _sql("Cons(products)", data_catalog)


def test_cross_source_setop_rejected(data_catalog):
    with pytest.raises(CrossSourceSetOp):
        _sql("Differ(sales.region, costs.region)", data_catalog)


def test_cross_entity_select_rejected(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("Se(sales.amount, costs.amount)", data_catalog)


def test_mixed_aggregation_rejected(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("Se(sales.region, sales.amount Agg SUM)", data_catalog)


def test_sum_star_rejected(data_catalog):
    with pytest.raises(NotTranslatable):
        _sql("Se(sales Agg SUM)", data_catalog)


# --- predicates --------------------------------------------------------------------

def test_predicate_rendering(data_catalog):
    assert _sql("Cons(sales, amount >= (2+3))", data_catalog) == \
        "SELECT * FROM sales WHERE amount >= (2 + 3)"


def test_predicate_tree_parenthesized(data_catalog):
    assert _sql("Cons(sales, amount > 2+3*4)", data_catalog) == \
        "SELECT * FROM sales WHERE amount > (2 + 3) * 4"


def test_predicate_column_reference(data_catalog):
    assert _sql("Cons(sales, amount >= amount)", data_catalog) == \
        "SELECT * FROM sales WHERE amount >= amount"


def test_unbound_parameter(data_catalog):
    with pytest.raises(UnboundParameter) as err:
        _sql("Cons(sales, amount > ghost)", data_catalog)
    assert err.value.name == "ghost"


def test_translate_predicate_direct(data_catalog):
    vq = validate(parse("Cons(sales, amount <> 0)"), data_catalog)
    fragment = translate_predicate(vq.predicates[0],
                                   frozenset(vq.bindings[0].entity_attributes))
    assert fragment == "amount <> 0"


def test_render_expr_paren_nodes():
    query = parse("Cons(s, a >= ((1+2))*3)")
    assert render_expr(query.predicates[0].rhs) == "((1 + 2)) * 3"


# --- determinism and closure ----------------------------------------------------------

def test_translation_is_deterministic(data_catalog):
    vq = validate(parse("Cons(sales, amount > 10)"), data_catalog)
    assert translate(vq) == translate(vq) == SqlText(
        "SELECT * FROM sales WHERE amount > 10")


def test_emitted_sql_reparses(data_catalog):
    rng = random.Random(77)
    reparsed = 0
    for _ in range(200):
        text = _structured_query(rng)
        vq = validate(parse(text), data_catalog)
        try:
            statement = translate(vq).statement
        except (NotTranslatable, CrossSourceSetOp):
            continue
        oracles.SqlParser(statement).parse_query()
        reparsed += 1
    assert reparsed > 100


def test_soundness_sample(data_catalog, data_sources):
    tables = {
        "sales": oracles.load_csv_table(data_sources["sales"].location),
        "costs": oracles.load_csv_table(data_sources["costs"].location),
    }
    rng = random.Random(5)
    compared = 0
    for _ in range(150):
        text = _structured_query(rng)
        vq = validate(parse(text), data_catalog)
        try:
            statement = translate(vq).statement
        except (NotTranslatable, CrossSourceSetOp):
            continue
        got = execute(vq, data_catalog, data_sources).sorted_canonical()
        want = oracles.eval_sql(statement, tables)
        oracles.assert_matches(got, want)
        compared += 1
    assert compared > 80
