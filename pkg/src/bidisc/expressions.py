"""Safe arithmetic expression compiler for recipe files.

Recipe equations are stored as plain strings like
``(x4 - x3)**2 + (y4 - y3)**2 - (2*r)**2``.  They are parsed with ``ast``,
checked against a whitelist of arithmetic node types, and compiled once.
The resulting callable evaluates in any scalar algebra that supports
+, -, *, / and integer ** : floats, ``Dual`` numbers, ``Interval``.
"""

import ast
from collections.abc import Mapping, Sequence

from .errors import RecipeError

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_ALLOWED_UNARY = (ast.UAdd, ast.USub)


def _check(node: ast.AST, names: set[str], src: str) -> None:
    if isinstance(node, ast.Expression):
        _check(node.body, names, src)
    elif isinstance(node, ast.BinOp):
        if not isinstance(node.op, _ALLOWED_BINOPS):
            raise RecipeError(f"operator not allowed in {src!r}")
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise RecipeError(f"only integer constant exponents allowed in {src!r}")
        _check(node.left, names, src)
        _check(node.right, names, src)
    elif isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, _ALLOWED_UNARY):
            raise RecipeError(f"operator not allowed in {src!r}")
        _check(node.operand, names, src)
    elif isinstance(node, ast.Name):
        if node.id not in names:
            raise RecipeError(f"unknown name {node.id!r} in {src!r}")
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)):
            raise RecipeError(f"non-numeric constant in {src!r}")
    else:
        raise RecipeError(f"syntax not allowed in {src!r}: {type(node).__name__}")


class Expr:
    """A validated, compiled arithmetic expression over named scalars."""

    __slots__ = ("source", "names", "_code")

    def __init__(self, source: str, names: Sequence[str]):
        self.source = source
        self.names = tuple(names)
        try:
            tree = ast.parse(source, mode="eval")
        except SyntaxError as exc:
            raise RecipeError(f"cannot parse expression {source!r}: {exc}") from exc
        _check(tree, set(self.names), source)
        self._code = compile(tree, "<recipe>", "eval")

    def __call__(self, env: Mapping):
        return eval(self._code, {"__builtins__": {}}, env)

    def __repr__(self):
        return f"Expr({self.source!r})"
