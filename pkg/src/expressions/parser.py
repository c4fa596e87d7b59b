"""A small arithmetic language for coefficient profiles and nonlinearities.

Expressions such as ``exp(k*(10-k)^2)`` or ``atan(400*t)/400`` are parsed
with a LALR grammar into an immutable AST that evaluates elementwise on
numpy arrays.
"""
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, Mapping, Tuple, Union
import logging
import math

import numpy as np
from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError

from src.utils.errors import ExpressionSyntaxError, UnknownIdentifierError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

GRAMMAR = r"""
    ?start: sum

    ?sum: product
        | sum "+" product       -> add
        | sum "-" product       -> sub

    ?product: unary
        | product "*" unary     -> mul
        | product "/" unary     -> div

    ?unary: power
        | "-" unary             -> neg
        | "+" unary             -> pos

    ?power: atom
        | atom "^" unary        -> pow

    ?atom: NUMBER               -> number
        | NAME                  -> name
        | NAME "(" sum ("," sum)* ")" -> call
        | "(" sum ")"

    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    %import common.NUMBER
    %import common.WS

    %ignore WS
"""

VARIABLES: Tuple[str, ...] = ("k", "x", "t")

CONSTANTS: Dict[str, float] = {"pi": math.pi, "e": math.e}

# name -> (arity, numpy implementation)
FUNCTIONS: Dict[str, Tuple[int, Callable]] = {
    "exp": (1, np.exp),
    "ln": (1, np.log),
    "abs": (1, np.abs),
    "sqrt": (1, np.sqrt),
    "atan": (1, np.arctan),
    "sin": (1, np.sin),
    "cos": (1, np.cos),
    "pow": (2, np.float_power),
    "min": (2, np.minimum),
    "max": (2, np.maximum),
}

BINARY = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": np.divide,
    "^": np.float_power,
}


class Node:
    """Base AST node."""

    def evaluate(self, env: Mapping[str, ArrayLike]) -> ArrayLike:
        raise NotImplementedError

    def free_variables(self) -> FrozenSet[str]:
        return frozenset()


@dataclass(frozen=True)
class Number(Node):
    value: float

    def evaluate(self, env):
        return self.value

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Variable(Node):
    name: str

    def evaluate(self, env):
        return np.asarray(env[self.name], dtype=float)

    def free_variables(self):
        return frozenset((self.name,))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class UnaryOp(Node):
    op: str
    operand: Node

    def evaluate(self, env):
        value = self.operand.evaluate(env)
        return np.negative(value) if self.op == "-" else value

    def free_variables(self):
        return self.operand.free_variables()

    def __str__(self) -> str:
        return f"({self.op}{self.operand})"


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, env):
        return BINARY[self.op](self.left.evaluate(env), self.right.evaluate(env))

    def free_variables(self):
        return self.left.free_variables() | self.right.free_variables()

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: Tuple[Node, ...]

    def evaluate(self, env):
        _, fn = FUNCTIONS[self.name]
        return fn(*(a.evaluate(env) for a in self.args))

    def free_variables(self):
        out: FrozenSet[str] = frozenset()
        for a in self.args:
            out = out | a.free_variables()
        return out

    def __str__(self) -> str:
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


def _byte_offset(src: str, char_pos: int) -> int:
    return len(src[:char_pos].encode("utf-8"))


@v_args(inline=True)
class _AstBuilder(Transformer):
    """Turns the parse tree into AST nodes, resolving identifiers."""

    def __init__(self, src: str, variables: Iterable[str]):
        super().__init__()
        self.src = src
        self.variables = frozenset(variables)

    def number(self, token):
        return Number(float(token))

    def name(self, token: Token):
        ident = str(token)
        if ident in self.variables:
            return Variable(ident)
        if ident in CONSTANTS:
            return Number(CONSTANTS[ident])
        raise UnknownIdentifierError(
            f"unknown identifier '{ident}' at offset {_byte_offset(self.src, token.start_pos)}",
            identifier=ident,
            offset=_byte_offset(self.src, token.start_pos),
            allowed=sorted(self.variables | set(CONSTANTS)),
        )

    def call(self, token: Token, *args):
        ident = str(token)
        offset = _byte_offset(self.src, token.start_pos)
        if ident not in FUNCTIONS:
            raise UnknownIdentifierError(
                f"unknown function '{ident}' at offset {offset}",
                identifier=ident,
                offset=offset,
                allowed=sorted(FUNCTIONS),
            )
        arity, _ = FUNCTIONS[ident]
        if len(args) != arity:
            raise UnknownIdentifierError(
                f"{ident} takes {arity} argument(s), got {len(args)}",
                identifier=ident,
                offset=offset,
                arity=arity,
            )
        return Call(ident, tuple(args))

    def neg(self, operand):
        return UnaryOp("-", operand)

    def pos(self, operand):
        return operand

    def add(self, a, b):
        return BinaryOp("+", a, b)

    def sub(self, a, b):
        return BinaryOp("-", a, b)

    def mul(self, a, b):
        return BinaryOp("*", a, b)

    def div(self, a, b):
        return BinaryOp("/", a, b)

    def pow(self, a, b):
        return BinaryOp("^", a, b)


_parser = Lark(GRAMMAR, parser="lalr")


class Expression:
    """A parsed expression together with its source text."""

    __slots__ = ("source", "root", "variables")

    def __init__(self, source: str, root: Node, variables: Iterable[str]):
        self.source = source
        self.root = root
        self.variables = tuple(variables)

    @property
    def free_variables(self) -> FrozenSet[str]:
        return self.root.free_variables()

    def evaluate(self, **env: ArrayLike) -> ArrayLike:
        """Evaluate elementwise; unused variables may be omitted."""
        missing = self.free_variables - set(env)
        if missing:
            raise UnknownIdentifierError(
                f"no value bound for {', '.join(sorted(missing))} in '{self.source}'",
                identifier=sorted(missing)[0],
            )
        with np.errstate(all="ignore"):
            return self.root.evaluate(env)

    def bind(self, *names: str) -> Callable:
        """Positional callable, e.g. ``expr.bind("k", "x")(k, x)``."""
        unknown = self.free_variables - set(names)
        if unknown:
            raise UnknownIdentifierError(
                f"'{self.source}' uses {', '.join(sorted(unknown))}, only {', '.join(names)} available",
                identifier=sorted(unknown)[0],
            )

        def fn(*args):
            value = self.evaluate(**dict(zip(names, args)))
            shapes = [np.shape(a) for a in args]
            shape = np.broadcast_shapes(*shapes) if shapes else ()
            return np.array(np.broadcast_to(value, shape), dtype=float) if shape else float(value)

        fn.__name__ = f"expr<{self.source}>"
        return fn

    def __str__(self) -> str:
        return self.source

    def __repr__(self) -> str:
        return f"Expression({self.source!r})"


def parse_expression(src: str, variables: Iterable[str] = VARIABLES) -> Expression:
    """Parse ``src``; errors report a byte offset into the UTF-8 text."""
    variables = tuple(variables)
    try:
        tree = _parser.parse(src)
    except UnexpectedToken as exc:
        if exc.token.type == "$END":
            offset = len(src.encode("utf-8"))
            found = "end of input"
        else:
            offset = _byte_offset(src, exc.token.start_pos)
            found = repr(str(exc.token))
        logger.debug(f"Syntax error in {src!r}: unexpected {found}")
        raise ExpressionSyntaxError(
            f"syntax error at offset {offset}: unexpected {found}",
            offset=offset,
            source=src,
        ) from None
    except UnexpectedCharacters as exc:
        offset = _byte_offset(src, exc.pos_in_stream)
        raise ExpressionSyntaxError(
            f"syntax error at offset {offset}: unexpected character {src[exc.pos_in_stream]!r}",
            offset=offset,
            source=src,
        ) from None
    except UnexpectedInput as exc:
        offset = len(src.encode("utf-8"))
        raise ExpressionSyntaxError(f"syntax error at offset {offset}: {exc}", offset=offset, source=src) from None

    try:
        root = _AstBuilder(src, variables).transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from None
    return Expression(src, root, variables)
