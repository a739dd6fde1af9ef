import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amda import expr as X
from amda.expr import GenericType as T


def val(t, data):
    return X.Value(t, data)


INT = lambda n: val(T.INTEGER, n)
FLAG = lambda b: val(T.FLAG, b)


class TestParse:
    def test_guard_equality(self):
        e = X.parse_expr("PIN_code_OK = true")
        assert e == X.Binary("=", X.Var("PIN_code_OK"), X.Lit(T.FLAG, True))

    def test_guard_comparison(self):
        e = X.parse_expr("errors = 3")
        assert e == X.Binary("=", X.Var("errors"), X.Lit(T.INTEGER, 3))

    def test_literal(self):
        assert X.parse_expr("true") == X.Lit(T.FLAG, True)

    def test_precedence(self):
        e = X.parse_expr("a + b * 2 = 7 and not c")
        assert isinstance(e, X.Binary) and e.op == "and"
        left, right = e.left, e.right
        assert left.op == "=" and isinstance(left.left, X.Binary) and left.left.op == "+"
        assert isinstance(right, X.Unary) and right.op == "not"

    def test_collection_and_size(self):
        e = X.parse_expr("Sequence{1, 2, 3}->size()")
        assert isinstance(e, X.SizeOf)
        assert e.operand == X.CollectionLit(True, (X.Lit(T.INTEGER, 1),
                                                   X.Lit(T.INTEGER, 2),
                                                   X.Lit(T.INTEGER, 3)))

    def test_char_vs_string(self):
        assert X.parse_expr("'a'") == X.Lit(T.CHAR, "a")
        assert X.parse_expr('"abc"') == X.Lit(T.STRING, "abc")

    def test_error_position(self):
        with pytest.raises(X.ExprSyntaxError) as info:
            X.parse_expr("1 +\n  * 2")
        assert info.value.line == 2
        assert info.value.column == 3
        assert info.value.expected

    def test_comparison_does_not_chain(self):
        with pytest.raises(X.ExprSyntaxError):
            X.parse_expr("a = b = c")

    def test_char_literal_single_character(self):
        with pytest.raises(X.ExprSyntaxError):
            X.parse_expr("'ab'")

    def test_trailing_junk(self):
        with pytest.raises(X.ExprSyntaxError):
            X.parse_expr("1 2")


class TestStmts:
    def test_assignment(self):
        stmts = X.parse_stmts("v1 := v1 + 1")
        assert stmts == (X.Assign("v1", X.Binary("+", X.Var("v1"), X.Lit(T.INTEGER, 1))),)

    def test_list(self):
        stmts = X.parse_stmts("x := 1; send(ev9); verify(); io(report)")
        assert stmts == (X.Assign("x", X.Lit(T.INTEGER, 1)), X.SendStmt("ev9"),
                         X.CallFunc("verify"), X.IoStmt("report"))

    def test_empty(self):
        assert X.parse_stmts("") == ()

    def test_equals_is_not_assignment(self):
        with pytest.raises(X.ExprSyntaxError):
            X.parse_stmts("v2 = true")


class TestTypecheck:
    SCHEMA = {"errors": T.INTEGER, "PIN_code_OK": T.FLAG, "name": T.STRING,
              "rate": T.REAL, "items": T.ORD_COLLECT}

    def test_arithmetic(self):
        assert X.typecheck(X.parse_expr("errors + 1"), self.SCHEMA) is T.INTEGER

    def test_mixed_promotes(self):
        assert X.typecheck(X.parse_expr("errors + rate"), self.SCHEMA) is T.REAL

    def test_flag_guard(self):
        assert X.typecheck(X.parse_expr("PIN_code_OK = true"), self.SCHEMA) is T.FLAG

    def test_mismatch_names_types(self):
        with pytest.raises(X.ExprTypeError) as info:
            X.typecheck(X.parse_expr("errors and true"), self.SCHEMA)
        assert "integer" in str(info.value) and "flag" in str(info.value)

    def test_string_int_comparison_rejected(self):
        with pytest.raises(X.ExprTypeError):
            X.typecheck(X.parse_expr("name = 3"), self.SCHEMA)

    def test_size(self):
        assert X.typecheck(X.parse_expr("items->size()"), self.SCHEMA) is T.INTEGER
        assert X.typecheck(X.parse_expr("name->size()"), self.SCHEMA) is T.INTEGER

    def test_unbound(self):
        with pytest.raises(X.ExprTypeError) as info:
            X.typecheck(X.parse_expr("ghost"), self.SCHEMA)
        assert info.value.code == "unbound-variable"


class TestEval:
    def test_wrong_pin_guard(self):
        mem = {"PIN_code_OK": FLAG(False), "errors": INT(1)}
        e = X.parse_expr("PIN_code_OK = false and errors < 3")
        assert X.eval_expr(e, mem) == FLAG(True)

    def test_guard_false(self):
        assert X.eval_expr(X.parse_expr("errors = 3"), {"errors": INT(0)}) == FLAG(False)

    def test_division_by_zero(self):
        with pytest.raises(X.EvalError) as info:
            X.eval_expr(X.parse_expr("1/0"), {})
        assert info.value.code == "division-by-zero"

    def test_int_division_truncates_toward_zero(self):
        assert X.eval_expr(X.parse_expr("-7/2"), {}) == INT(-3)
        assert X.eval_expr(X.parse_expr("7/2"), {}) == INT(3)

    def test_overflow_is_an_error(self):
        with pytest.raises(X.EvalError) as info:
            X.eval_expr(X.parse_expr("%d + 1" % (2**63 - 1)), {})
        assert info.value.code == "integer-overflow"

    def test_no_side_effects(self):
        mem = {"errors": INT(2)}
        before = dict(mem)
        X.eval_expr(X.parse_expr("errors + 40"), mem)
        assert mem == before

    def test_unordered_collection_equality_ignores_order(self):
        a = X.eval_expr(X.parse_expr("Set{1, 2}"), {})
        b = X.eval_expr(X.parse_expr("Set{2, 1}"), {})
        assert a == b

    def test_int_real_equality(self):
        assert X.eval_expr(X.parse_expr("1 = 1.0"), {}) == FLAG(True)

    def test_unbound_variable(self):
        with pytest.raises(X.EvalError) as info:
            X.eval_expr(X.parse_expr("ghost"), {})
        assert info.value.code == "unbound-variable"


# -- round-trip stability -----------------------------------------------------

_names = st.sampled_from(["x", "y", "errors", "PIN_code_OK", "rate"])


def _exprs():
    leaves = st.one_of(
        st.integers(min_value=0, max_value=10_000).map(lambda n: X.Lit(T.INTEGER, n)),
        st.floats(min_value=0, max_value=100, allow_nan=False).map(lambda f: X.Lit(T.REAL, f)),
        st.booleans().map(lambda b: X.Lit(T.FLAG, b)),
        st.text(st.characters(codec="ascii", exclude_characters='\x00'),
                max_size=6).map(lambda s: X.Lit(T.STRING, s)),
        st.characters(codec="ascii", exclude_characters="\x00").map(lambda c: X.Lit(T.CHAR, c)),
        _names.map(X.Var),
    )

    def extend(children):
        binop = st.sampled_from(["+", "-", "*", "/", "=", "<>", "<", "<=", ">", ">=", "and", "or"])
        return st.one_of(
            st.tuples(binop, children, children).map(lambda t: X.Binary(*t)),
            st.tuples(st.sampled_from(["not", "-"]), children).map(lambda t: X.Unary(*t)),
            st.lists(children, max_size=3).map(lambda items: X.CollectionLit(True, tuple(items))),
            children.map(X.SizeOf),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_exprs())
@settings(max_examples=300, deadline=None)
def test_pretty_parse_round_trip(e):
    text = X.pretty(e)
    reparsed = X.parse_expr(text)
    assert reparsed == e
    assert X.parse_expr(X.pretty(reparsed)) == reparsed


@given(st.text(max_size=40))
@settings(max_examples=200, deadline=None)
def test_parser_never_crashes(text):
    try:
        X.parse_expr(text)
    except X.ExprSyntaxError:
        pass
