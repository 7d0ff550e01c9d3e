"""Parser and evaluator for the expressions accepted by the CLI.

Grammar:

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | '+' unary | power
    power := atom ('^' unary)?            right associative
    atom  := number | ident | ident '(' args ')' | '(' expr ')'
    args  := expr (',' expr)*

Variables are x, y, z (Cartesian) or r, lam, th (spherical); pi and e are
constants.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .errors import ArityError, DomainError, ExprSyntaxError, UnknownIdentifierError

logger = logging.getLogger(__name__)

VARIABLES = {
    "cart": ("x", "y", "z"),
    "sph": ("r", "lam", "th"),
}

CONSTANTS = {"pi": np.pi, "e": np.e}


def _log(a):
    if np.any(np.real(a) <= 0):
        raise DomainError("log of a nonpositive value")
    return np.log(a)


def _sqrt(a):
    if np.any(np.real(a) < 0):
        raise DomainError("sqrt of a negative value")
    return np.sqrt(a)


# name -> (implementation, arity)
FUNCTIONS: Dict[str, Tuple[Callable, int]] = {
    "sin": (np.sin, 1),
    "cos": (np.cos, 1),
    "tan": (np.tan, 1),
    "exp": (np.exp, 1),
    "log": (_log, 1),
    "sqrt": (_sqrt, 1),
    "sinh": (np.sinh, 1),
    "cosh": (np.cosh, 1),
}

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Node", ...]


Node = Union[Num, Const, Var, Neg, BinOp, Call]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    """Split source text into tokens carrying their byte offsets."""
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        match = TOKEN_PATTERN.match(src, pos)
        if not match or match.end() == pos:
            raise ExprSyntaxError(f"Unexpected character {src[pos]!r}", _byte_offset(src, pos))
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), _byte_offset(src, match.start(kind))))
        pos = match.end()
    tokens.append(Token("end", "", _byte_offset(src, len(src))))
    return tokens


def _byte_offset(src: str, index: int) -> int:
    return len(src[:index].encode("utf-8"))


class Parser:
    """Recursive descent parser producing a Node tree."""

    def __init__(self, src: str, coords: str = "cart"):
        if coords not in VARIABLES:
            raise ValueError(f"Unknown coordinate system: {coords}")
        self.src = src
        self.coords = coords
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind != "op":
            found = self.current.text or "end of input"
            raise ExprSyntaxError(f"Expected {text!r}, found {found!r}", self.current.offset)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise ExprSyntaxError(f"Unexpected {self.current.text!r}", self.current.offset)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.current.kind == "op" and self.current.text == "-":
            self.advance()
            return Neg(self.unary())
        if self.current.kind == "op" and self.current.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            caret = self.advance()
            exponent = self.unary()
            _check_power(base, exponent, caret.offset)
            return BinOp("^", base, exponent)
        return base

    def atom(self) -> Node:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self.advance()
            if self.current.kind == "op" and self.current.text == "(":
                return self.call(token)
            if token.text in CONSTANTS:
                return Const(token.text)
            if token.text in VARIABLES[self.coords]:
                return Var(token.text)
            raise UnknownIdentifierError(f"Unknown variable {token.text!r} at offset {token.offset}")
        if token.kind == "op" and token.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = token.text or "end of input"
        raise ExprSyntaxError(f"Unexpected {found!r}", token.offset)

    def call(self, name: Token) -> Node:
        if name.text not in FUNCTIONS:
            raise UnknownIdentifierError(f"Unknown function {name.text!r} at offset {name.offset}")
        self.expect("(")
        args = [self.expr()]
        while self.current.kind == "op" and self.current.text == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        arity = FUNCTIONS[name.text][1]
        if len(args) != arity:
            raise ArityError(f"{name.text} takes {arity} argument(s), got {len(args)}")
        return Call(name.text, tuple(args))


def _constant_value(node: Node) -> Optional[float]:
    """Value of a constant subtree, or None if it depends on variables."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Neg):
        value = _constant_value(node.operand)
        return None if value is None else -value
    return None


def _check_power(base: Node, exponent: Node, offset: int) -> None:
    b, p = _constant_value(base), _constant_value(exponent)
    if b is not None and p is not None and b < 0 and not float(p).is_integer():
        logger.warning(f"Non-integer power of a negative constant at offset {offset}")


def parse_expr(src: str, coords: str = "cart") -> Node:
    """Parse expression text into an AST.

    Raises:
        ExprSyntaxError: malformed text (carries the byte offset)
        UnknownIdentifierError: unknown variable or function
        ArityError: wrong number of function arguments
    """
    return Parser(src, coords).parse()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _power(base, exponent):
    p = np.asarray(exponent)
    if p.ndim == 0 and float(p).is_integer():
        return np.power(base, int(p)) if int(p) >= 0 else 1.0 / np.power(base, -int(p))
    if np.any((np.asarray(base) < 0) & ~np.equal(np.mod(p, 1.0), 0.0)):
        raise DomainError("Non-integer power of a negative value")
    return np.power(base, exponent)


def evaluate(node: Node, env: Dict[str, np.ndarray]):
    """Evaluate an AST with numpy broadcasting over the variables in env."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, Call):
        func = FUNCTIONS[node.name][0]
        return func(*(evaluate(arg, env) for arg in node.args))
    left, right = evaluate(node.left, env), evaluate(node.right, env)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return np.divide(left, right)
    return _power(left, right)


def to_function(node: Node, coords: str = "cart") -> Callable:
    """Turn an AST into a vectorized evaluator f(a, b, c)."""
    names = VARIABLES[coords]

    def f(a, b, c):
        return evaluate(node, dict(zip(names, (a, b, c))))

    return f


def compile_expr(src: str, coords: str = "cart") -> Callable:
    """Parse text and return its vectorized evaluator."""
    return to_function(parse_expr(src, coords), coords)


# ---------------------------------------------------------------------------
# Pretty printing
# ---------------------------------------------------------------------------

def pretty(node: Node) -> str:
    """Render an AST as text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, (Const, Var)):
        return node.name
    if isinstance(node, Neg):
        return f"-({pretty(node.operand)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(pretty(a) for a in node.args)})"
    return f"({pretty(node.left)} {node.op} {pretty(node.right)})"
