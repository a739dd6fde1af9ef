"""Lower subset expressions to C-family source text.

Shared by the model transformer (I/O statement subjects) and the code
generator (guards, initializers, routine bodies).  Both target syntaxes
agree on operators; only surrounding syntax differs and lives in codegen.
"""

from __future__ import annotations

from . import expr as X

_C_OPS = {
    "or": ("||", 1),
    "and": ("&&", 2),
    "=": ("==", 3), "<>": ("!=", 3),
    "<": ("<", 4), "<=": ("<=", 4), ">": (">", 4), ">=": (">=", 4),
    "+": ("+", 5), "-": ("-", 5),
    "*": ("*", 6), "/": ("/", 6),
}
_COMPARE = ("=", "<>", "<", "<=", ">", ">=")


class LoweringError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__("%s: %s" % (code, message))
        self.code = code


def lower_expr(e, parent_prec: int = 0) -> str:
    if isinstance(e, X.Lit):
        if e.type is X.GenericType.FLAG:
            return "true" if e.value else "false"
        if e.type is X.GenericType.STRING:
            return '"%s"' % _escape(e.value)
        if e.type is X.GenericType.CHAR:
            return "'%s'" % _escape(e.value)
        if e.type is X.GenericType.REAL:
            return X._render_real(e.value)
        return str(e.value)
    if isinstance(e, X.Var):
        return e.name
    if isinstance(e, X.Unary):
        inner = lower_expr(e.operand, 7)
        return ("!" if e.op == "not" else "-") + inner
    if isinstance(e, X.Binary):
        op, prec = _C_OPS[e.op]
        # comparisons do not associate; spacing matches the handler idiom:
        # comparison operators bind tight, logical connectives get air
        left = lower_expr(e.left, prec if e.op not in _COMPARE else prec + 1)
        right = lower_expr(e.right, prec + 1)
        joiner = "%s %s %s" if prec <= 2 else "%s%s%s"
        text = joiner % (left, op, right)
        return "(%s)" % text if prec < parent_prec else text
    if isinstance(e, X.CollectionLit):
        helper = "seq" if e.ordered else "set"
        return "%s(%s)" % (helper, ", ".join(lower_expr(item, 0) for item in e.items))
    if isinstance(e, X.SizeOf):
        return "size(%s)" % lower_expr(e.operand, 0)
    raise LoweringError("unsupported-expression-node", "cannot lower %r" % (e,))


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")


def lower_expr_text(text: str) -> str:
    return lower_expr(X.parse_expr(text))
