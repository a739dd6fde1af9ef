"""Expression and statement language used in guards, initializers and actions.

The grammar is a small, fixed subset of OCL-style expression syntax:
comparisons, boolean connectives, arithmetic, literals for every generic
type, and collection size.  Anything else is a parse error.  The full
grammar is documented in docs/expr-grammar.md.

Statements (``parse_stmts``) cover what routine bodies and inline actions
need: assignment with ``:=``, calling another function action, sending an
event and invoking an I/O action.  ``=`` is always equality; assignment is
spelled ``:=``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Union


class GenericType(Enum):
    """Platform-independent variable types."""

    INTEGER = "integer"
    REAL = "real"
    FLAG = "flag"
    CHAR = "char"
    STRING = "string"
    ORD_COLLECT = "ord_collect"
    UNORD_COLLECT = "unord_collect"

    def __str__(self) -> str:
        return self.value


SCALAR_TYPES = (
    GenericType.INTEGER,
    GenericType.REAL,
    GenericType.FLAG,
    GenericType.CHAR,
    GenericType.STRING,
)
COLLECTION_TYPES = (GenericType.ORD_COLLECT, GenericType.UNORD_COLLECT)

# Evaluation uses wide fixed-size integers: leaving this range is a
# runtime error, never wraparound.
INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class ExprError(Exception):
    """Base class for expression-language failures."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.code = code
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line:
            return "%s at %d:%d: %s" % (self.code, self.line, self.column, self.message)
        return "%s: %s" % (self.code, self.message)


class ExprSyntaxError(ExprError):
    def __init__(self, message, line, column, expected=()):
        super().__init__("syntax-error", message, line, column)
        self.expected = tuple(expected)


class ExprTypeError(ExprError):
    def __init__(self, message, code="type-mismatch"):
        super().__init__(code, message)


class EvalError(ExprError):
    def __init__(self, code, message):
        super().__init__(code, message)


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    type: GenericType
    value: object  # int | float | bool | str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "not" | "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / = <> < <= > >= and or
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class CollectionLit:
    ordered: bool
    items: tuple


@dataclass(frozen=True)
class SizeOf:
    operand: "Expr"


Expr = Union[Lit, Var, Unary, Binary, CollectionLit, SizeOf]


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr


@dataclass(frozen=True)
class CallFunc:
    func: str


@dataclass(frozen=True)
class SendStmt:
    event: str


@dataclass(frozen=True)
class IoStmt:
    action: str


Stmt = Union[Assign, CallFunc, SendStmt, IoStmt]


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_KEYWORDS = {"true", "false", "and", "or", "not", "send", "io", "Sequence", "Set"}
_PUNCT = ("->", ":=", "<=", ">=", "<>", "+", "-", "*", "/", "=", "<", ">", "(", ")", "{", "}", ",", ";")


@dataclass(frozen=True)
class Token:
    kind: str  # INT REAL IDENT STRING CHAR keyword/punct EOF
    text: str
    line: int
    column: int


# ASCII-only classes: unicode "digits" like superscripts must not lex as numbers
def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _is_ident_start(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z" or c == "_"


def _is_ident_char(c: str) -> bool:
    return _is_ident_start(c) or _is_digit(c)


def _lex(text: str) -> list:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if _is_digit(c) or (c == "." and i + 1 < n and _is_digit(text[i + 1])):
            j = i
            while j < n and _is_digit(text[j]):
                j += 1
            if j < n and text[j] == "." and j + 1 < n and _is_digit(text[j + 1]):
                j += 1
                while j < n and _is_digit(text[j]):
                    j += 1
                kind = "REAL"
            else:
                kind = "INT"
            tokens.append(Token(kind, text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = word if word in _KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if c in "\"'":
            quote = c
            j = i + 1
            buf = []
            while j < n and text[j] != quote:
                if text[j] == "\\" and j + 1 < n:
                    esc = text[j + 1]
                    buf.append({"n": "\n", "t": "\t", "\\": "\\", quote: quote}.get(esc, esc))
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise ExprSyntaxError("unterminated %s literal" % ("string" if quote == '"' else "char"),
                                      start_line, start_col, [quote])
            value = "".join(buf)
            if quote == "'":
                if len(value) != 1:
                    raise ExprSyntaxError("char literal must hold exactly one character",
                                          start_line, start_col, ["'"])
                tokens.append(Token("CHAR", value, start_line, start_col))
            else:
                tokens.append(Token("STRING", value, start_line, start_col))
            col += (j + 1) - i
            i = j + 1
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token(p, p, start_line, start_col))
                i += len(p)
                col += len(p)
                break
        else:
            raise ExprSyntaxError("unexpected character %r" % c, start_line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent)
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(
                "expected %s, found %r" % (kind, tok.text or "end of input"),
                tok.line, tok.column, [kind])
        return self.next()

    # expr := or_expr
    def expr(self) -> Expr:
        return self.or_expr()

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.peek().kind == "or":
            self.next()
            left = Binary("or", left, self.and_expr())
        return left

    def and_expr(self) -> Expr:
        left = self.not_expr()
        while self.peek().kind == "and":
            self.next()
            left = Binary("and", left, self.not_expr())
        return left

    def not_expr(self) -> Expr:
        if self.peek().kind == "not":
            self.next()
            return Unary("not", self.not_expr())
        return self.comparison()

    # comparison is non-associative: a = b = c is a parse error
    def comparison(self) -> Expr:
        left = self.additive()
        tok = self.peek()
        if tok.kind in ("=", "<>", "<", "<=", ">", ">="):
            self.next()
            right = self.additive()
            nxt = self.peek()
            if nxt.kind in ("=", "<>", "<", "<=", ">", ">="):
                raise ExprSyntaxError("comparison operators do not chain",
                                      nxt.line, nxt.column,
                                      ["and", "or", "end of expression"])
            return Binary(tok.kind, left, right)
        return left

    def additive(self) -> Expr:
        left = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek().kind == "-":
            self.next()
            return Unary("-", self.unary())
        return self.postfix()

    def postfix(self) -> Expr:
        node = self.primary()
        while self.peek().kind == "->":
            self.next()
            member = self.expect("IDENT")
            if member.text != "size":
                raise ExprSyntaxError("unknown collection operation %r" % member.text,
                                      member.line, member.column, ["size"])
            self.expect("(")
            self.expect(")")
            node = SizeOf(node)
        return node

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return Lit(GenericType.INTEGER, int(tok.text))
        if tok.kind == "REAL":
            self.next()
            return Lit(GenericType.REAL, float(tok.text))
        if tok.kind == "true":
            self.next()
            return Lit(GenericType.FLAG, True)
        if tok.kind == "false":
            self.next()
            return Lit(GenericType.FLAG, False)
        if tok.kind == "STRING":
            self.next()
            return Lit(GenericType.STRING, tok.text)
        if tok.kind == "CHAR":
            self.next()
            return Lit(GenericType.CHAR, tok.text)
        if tok.kind == "IDENT":
            self.next()
            return Var(tok.text)
        if tok.kind in ("Sequence", "Set"):
            self.next()
            self.expect("{")
            items = []
            if self.peek().kind != "}":
                items.append(self.expr())
                while self.peek().kind == ",":
                    self.next()
                    items.append(self.expr())
            self.expect("}")
            return CollectionLit(tok.kind == "Sequence", tuple(items))
        if tok.kind == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError("expected expression, found %r" % (tok.text or "end of input"),
                              tok.line, tok.column,
                              ["literal", "identifier", "(", "Sequence", "Set", "not", "-"])

    # stmt := IDENT ":=" expr | IDENT "(" ")" | "send" "(" IDENT ")" | "io" "(" IDENT ")"
    def stmt(self) -> Stmt:
        tok = self.peek()
        if tok.kind == "send":
            self.next()
            self.expect("(")
            ev = self.expect("IDENT")
            self.expect(")")
            return SendStmt(ev.text)
        if tok.kind == "io":
            self.next()
            self.expect("(")
            act = self.expect("IDENT")
            self.expect(")")
            return IoStmt(act.text)
        if tok.kind == "IDENT":
            name = self.next()
            follow = self.peek()
            if follow.kind == ":=":
                self.next()
                return Assign(name.text, self.expr())
            if follow.kind == "(":
                self.next()
                self.expect(")")
                return CallFunc(name.text)
            raise ExprSyntaxError("expected ':=' or '()' after %r" % name.text,
                                  follow.line, follow.column, [":=", "("])
        raise ExprSyntaxError("expected statement, found %r" % (tok.text or "end of input"),
                              tok.line, tok.column, ["identifier", "send", "io"])


def parse_expr(text: str) -> Expr:
    """Parse a single expression; raises ExprSyntaxError with position info."""
    parser = _Parser(_lex(text))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ExprSyntaxError("unexpected %r after expression" % tok.text,
                              tok.line, tok.column, ["end of expression"])
    return node


def parse_stmts(text: str) -> tuple:
    """Parse a semicolon/newline-separated statement list (may be empty)."""
    tokens = _lex(text)
    parser = _Parser(tokens)
    stmts = []
    while parser.peek().kind == ";":
        parser.next()
    while parser.peek().kind != "EOF":
        stmts.append(parser.stmt())
        while parser.peek().kind == ";":
            parser.next()
    return tuple(stmts)


# ---------------------------------------------------------------------------
# Pretty printer (stable: parse(pretty(parse(s))) == parse(s))
# ---------------------------------------------------------------------------

_PRECEDENCE = {
    "or": 1,
    "and": 2,
    "=": 4, "<>": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6,
}
_COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")


def _escape(value: str, quote: str) -> str:
    out = []
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == quote:
            out.append("\\" + quote)
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        else:
            out.append(ch)
    return "".join(out)


def pretty(e: Expr) -> str:
    """Render an expression to canonical text."""
    return _pretty(e, 0)


def _render_real(value: float) -> str:
    """Positional decimal that parses back to the same float (no exponent)."""
    value = float(value)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError("non-finite real %r has no literal form" % value)
    text = repr(value)
    if "e" in text or "E" in text:
        from decimal import Decimal
        text = format(Decimal(text), "f")
    if "." not in text:
        text += ".0"
    return text


def _pretty(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Lit):
        if e.type is GenericType.FLAG:
            return "true" if e.value else "false"
        if e.type is GenericType.STRING:
            return '"%s"' % _escape(e.value, '"')
        if e.type is GenericType.CHAR:
            return "'%s'" % _escape(e.value, "'")
        if e.type is GenericType.REAL:
            return _render_real(e.value)
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        # 'not' sits between 'and' and the comparisons; '-' binds just
        # below the postfix operations
        if e.op == "not":
            text = "not %s" % _pretty(e.operand, 3)
            return "(%s)" % text if parent_prec > 3 else text
        text = "-%s" % _pretty(e.operand, 7)
        return "(%s)" % text if parent_prec > 7 else text
    if isinstance(e, Binary):
        prec = _PRECEDENCE[e.op]
        # comparisons are non-associative; same-precedence operands need parens
        left = _pretty(e.left, prec if e.op not in _COMPARISON_OPS else prec + 1)
        right = _pretty(e.right, prec + 1)
        text = "%s %s %s" % (left, e.op, right)
        if prec < parent_prec:
            return "(%s)" % text
        return text
    if isinstance(e, CollectionLit):
        head = "Sequence" if e.ordered else "Set"
        return "%s{%s}" % (head, ", ".join(_pretty(item, 0) for item in e.items))
    if isinstance(e, SizeOf):
        return "%s->size()" % _pretty(e.operand, 8)
    raise TypeError("not an expression node: %r" % (e,))


def pretty_stmt(s: Stmt) -> str:
    if isinstance(s, Assign):
        return "%s := %s" % (s.target, pretty(s.value))
    if isinstance(s, CallFunc):
        return "%s()" % s.func
    if isinstance(s, SendStmt):
        return "send(%s)" % s.event
    if isinstance(s, IoStmt):
        return "io(%s)" % s.action
    raise TypeError("not a statement node: %r" % (s,))


def pretty_stmts(stmts) -> str:
    return "; ".join(pretty_stmt(s) for s in stmts)


# ---------------------------------------------------------------------------
# Typechecker
# ---------------------------------------------------------------------------

_NUMERIC = (GenericType.INTEGER, GenericType.REAL)


def typecheck(e: Expr, schema: Mapping) -> GenericType:
    """Infer the generic type of ``e`` against ``schema`` (name -> GenericType).

    Raises ExprTypeError naming the conflicting types; integer promotes to
    real in mixed arithmetic, no other implicit conversion exists.
    """
    if isinstance(e, Lit):
        return e.type
    if isinstance(e, Var):
        if e.name not in schema:
            raise ExprTypeError("unbound variable %r" % e.name, code="unbound-variable")
        return schema[e.name]
    if isinstance(e, Unary):
        t = typecheck(e.operand, schema)
        if e.op == "not":
            if t is not GenericType.FLAG:
                raise ExprTypeError("'not' needs flag, got %s" % t)
            return GenericType.FLAG
        if t not in _NUMERIC:
            raise ExprTypeError("unary '-' needs integer or real, got %s" % t)
        return t
    if isinstance(e, Binary):
        lt = typecheck(e.left, schema)
        rt = typecheck(e.right, schema)
        op = e.op
        if op in ("and", "or"):
            for t in (lt, rt):
                if t is not GenericType.FLAG:
                    raise ExprTypeError("'%s' needs flag operands, got %s and %s" % (op, lt, rt))
            return GenericType.FLAG
        if op in ("+", "-", "*", "/"):
            if lt not in _NUMERIC or rt not in _NUMERIC:
                raise ExprTypeError("'%s' needs numeric operands, got %s and %s" % (op, lt, rt))
            if GenericType.REAL in (lt, rt):
                return GenericType.REAL
            return GenericType.INTEGER
        if op in ("<", "<=", ">", ">="):
            if lt not in _NUMERIC or rt not in _NUMERIC:
                raise ExprTypeError("'%s' needs numeric operands, got %s and %s" % (op, lt, rt))
            return GenericType.FLAG
        # = and <>
        if lt in _NUMERIC and rt in _NUMERIC:
            return GenericType.FLAG
        if lt is not rt:
            raise ExprTypeError("cannot compare %s with %s" % (lt, rt))
        return GenericType.FLAG
    if isinstance(e, CollectionLit):
        item_types = [typecheck(item, schema) for item in e.items]
        for t in item_types:
            if t not in SCALAR_TYPES:
                raise ExprTypeError("collection items must be scalar, got %s" % t)
        distinct = set(item_types)
        if len(distinct) > 1 and distinct != {GenericType.INTEGER, GenericType.REAL}:
            a, b = sorted(str(t) for t in distinct)[:2]
            raise ExprTypeError("mixed collection item types %s and %s" % (a, b))
        return GenericType.ORD_COLLECT if e.ordered else GenericType.UNORD_COLLECT
    if isinstance(e, SizeOf):
        t = typecheck(e.operand, schema)
        if t not in COLLECTION_TYPES and t is not GenericType.STRING:
            raise ExprTypeError("size() needs a collection or string, got %s" % t)
        return GenericType.INTEGER
    raise TypeError("not an expression node: %r" % (e,))


def assignable(target: GenericType, value: GenericType) -> bool:
    """integer widens to real on assignment; everything else must match."""
    if target is value:
        return True
    return target is GenericType.REAL and value is GenericType.INTEGER


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Value:
    """Tagged runtime value; flag stays distinct from integer."""

    type: GenericType
    data: object

    def render(self) -> str:
        """Canonical literal text (re-parseable where the grammar allows)."""
        if self.type is GenericType.FLAG:
            return "true" if self.data else "false"
        if self.type is GenericType.STRING:
            return '"%s"' % _escape(self.data, '"')
        if self.type is GenericType.CHAR:
            return "'%s'" % _escape(self.data, "'")
        if self.type is GenericType.REAL:
            return _render_real(self.data)
        if self.type in COLLECTION_TYPES:
            head = "Sequence" if self.type is GenericType.ORD_COLLECT else "Set"
            return "%s{%s}" % (head, ", ".join(v.render() for v in self.data))
        return str(self.data)


def _int_guard(n: int) -> int:
    if n < INT_MIN or n > INT_MAX:
        raise EvalError("integer-overflow", "integer result %d out of range" % n)
    return n


def _as_real(v: Value) -> float:
    return float(v.data)


def _canonical_unordered(items) -> tuple:
    return tuple(sorted(items, key=lambda v: (v.type.value, v.render())))


def eval_expr(e: Expr, mem: Mapping) -> Value:
    """Evaluate ``e`` against memory snapshot ``mem`` (name -> Value).

    Pure: never mutates ``mem``.  Raises EvalError for unbound-variable,
    type-mismatch, division-by-zero and integer-overflow.
    """
    if isinstance(e, Lit):
        return Value(e.type, e.value)
    if isinstance(e, Var):
        if e.name not in mem:
            raise EvalError("unbound-variable", "variable %r is not bound" % e.name)
        return mem[e.name]
    if isinstance(e, Unary):
        v = eval_expr(e.operand, mem)
        if e.op == "not":
            if v.type is not GenericType.FLAG:
                raise EvalError("type-mismatch", "'not' applied to %s" % v.type)
            return Value(GenericType.FLAG, not v.data)
        if v.type is GenericType.INTEGER:
            return Value(GenericType.INTEGER, _int_guard(-v.data))
        if v.type is GenericType.REAL:
            return Value(GenericType.REAL, -v.data)
        raise EvalError("type-mismatch", "unary '-' applied to %s" % v.type)
    if isinstance(e, Binary):
        op = e.op
        if op in ("and", "or"):
            left = eval_expr(e.left, mem)
            if left.type is not GenericType.FLAG:
                raise EvalError("type-mismatch", "'%s' applied to %s" % (op, left.type))
            # strict evaluation would be equivalent (guards are pure); short
            # circuit anyway so 1/0 on a dead branch cannot fire
            if op == "and" and not left.data:
                return Value(GenericType.FLAG, False)
            if op == "or" and left.data:
                return Value(GenericType.FLAG, True)
            right = eval_expr(e.right, mem)
            if right.type is not GenericType.FLAG:
                raise EvalError("type-mismatch", "'%s' applied to %s" % (op, right.type))
            return Value(GenericType.FLAG, bool(right.data))
        left = eval_expr(e.left, mem)
        right = eval_expr(e.right, mem)
        if op in ("+", "-", "*", "/"):
            return _arith(op, left, right)
        if op in ("<", "<=", ">", ">="):
            if left.type not in _NUMERIC or right.type not in _NUMERIC:
                raise EvalError("type-mismatch",
                                "'%s' applied to %s and %s" % (op, left.type, right.type))
            a, b = left.data, right.data
            result = {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
            return Value(GenericType.FLAG, result)
        # = and <>
        equal = _values_equal(left, right)
        return Value(GenericType.FLAG, equal if op == "=" else not equal)
    if isinstance(e, CollectionLit):
        items = tuple(eval_expr(item, mem) for item in e.items)
        if e.ordered:
            return Value(GenericType.ORD_COLLECT, items)
        return Value(GenericType.UNORD_COLLECT, _canonical_unordered(items))
    if isinstance(e, SizeOf):
        v = eval_expr(e.operand, mem)
        if v.type in COLLECTION_TYPES:
            return Value(GenericType.INTEGER, len(v.data))
        if v.type is GenericType.STRING:
            return Value(GenericType.INTEGER, len(v.data))
        raise EvalError("type-mismatch", "size() applied to %s" % v.type)
    raise TypeError("not an expression node: %r" % (e,))


def _arith(op: str, left: Value, right: Value) -> Value:
    if left.type not in _NUMERIC or right.type not in _NUMERIC:
        raise EvalError("type-mismatch",
                        "'%s' applied to %s and %s" % (op, left.type, right.type))
    if GenericType.REAL in (left.type, right.type):
        a, b = _as_real(left), _as_real(right)
        if op == "/" and b == 0.0:
            raise EvalError("division-by-zero", "real division by zero")
        result = {"+": lambda: a + b, "-": lambda: a - b,
                  "*": lambda: a * b, "/": lambda: a / b}[op]()
        if result != result or result in (float("inf"), float("-inf")):
            raise EvalError("real-overflow", "real result is not finite")
        return Value(GenericType.REAL, result)
    a, b = left.data, right.data
    if op == "+":
        return Value(GenericType.INTEGER, _int_guard(a + b))
    if op == "-":
        return Value(GenericType.INTEGER, _int_guard(a - b))
    if op == "*":
        return Value(GenericType.INTEGER, _int_guard(a * b))
    if b == 0:
        raise EvalError("division-by-zero", "integer division by zero")
    # truncate toward zero, matching the arithmetic of the generated code
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return Value(GenericType.INTEGER, _int_guard(q))


def _values_equal(left: Value, right: Value) -> bool:
    if left.type in _NUMERIC and right.type in _NUMERIC:
        if left.type is right.type:
            return left.data == right.data
        return float(left.data) == float(right.data)
    if left.type is not right.type:
        raise EvalError("type-mismatch",
                        "cannot compare %s with %s" % (left.type, right.type))
    if left.type in COLLECTION_TYPES:
        if len(left.data) != len(right.data):
            return False
        return all(_values_equal(a, b) for a, b in zip(left.data, right.data))
    return left.data == right.data


def default_value(t: GenericType) -> Value:
    """Zero value per type, used when an initializer is the empty string."""
    if t is GenericType.INTEGER:
        return Value(t, 0)
    if t is GenericType.REAL:
        return Value(t, 0.0)
    if t is GenericType.FLAG:
        return Value(t, False)
    if t is GenericType.CHAR:
        return Value(t, " ")
    if t is GenericType.STRING:
        return Value(t, "")
    return Value(t, ())
