"""Plain-text grammar for space descriptors.

    expr    := name "(" arg ("," arg)* ")"
    arg     := expr | literal
    literal := number ["/" number] | "inf"

Examples: ``lp(1.5)``, ``lorentz(4/3,2)``, ``dwp(pow(0.5),1.5)``,
``orlicz(power(1.5))``, ``dual(lp(4/3))``, ``power(lp(1),0.5)``,
``mult(lp(2),lp(1))``. Printing uses the shortest literal that parses back to
the same float, so parse(print(E)) == E.
"""

import math
import re
from fractions import Fraction
from typing import List, NamedTuple, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..exceptions import InvalidDescriptor

TOKEN = re.compile(
    r"\s*(?:(?P<number>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),/]))"
)


class Call(NamedTuple):
    name: str
    args: Tuple["Node", ...]


Node = Union[Call, float]


def format_literal(value: float) -> str:
    """Shortest literal that parses back to exactly `value`."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if float(value).is_integer():
        return str(int(value))
    fraction = Fraction(value).limit_denominator(1000)
    if fraction.denominator > 1 and fraction.numerator / fraction.denominator == value:
        candidate = f"{fraction.numerator}/{fraction.denominator}"
        if len(candidate) < len(repr(float(value))):
            return candidate
    return repr(float(value))


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = TOKEN.match(text, position)
        if match is None or match.end() == position:
            raise InvalidDescriptor(f"Unexpected character {text[position]!r} at {position} in {text!r}")
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.position = 0

    def peek(self) -> Tuple[str, str]:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return ("end", "")

    def take(self, value: str = None) -> Tuple[str, str]:
        token = self.peek()
        if token[0] == "end" or (value is not None and token[1] != value):
            expected = f"{value!r}" if value else "a token"
            raise InvalidDescriptor(f"Expected {expected} in {self.text!r}, found {token[1] or 'end'!r}")
        self.position += 1
        return token

    def node(self) -> Node:
        kind, value = self.peek()
        if kind == "number":
            return self.literal()
        if kind == "name":
            following = self.tokens[self.position + 1][1] if self.position + 1 < len(self.tokens) else ""
            if value.lower() == "inf" and following != "(":
                self.take()
                return math.inf
            self.take()
            self.take("(")
            args = [self.node()]
            while self.peek()[1] == ",":
                self.take(",")
                args.append(self.node())
            self.take(")")
            return Call(value.lower(), tuple(args))
        raise InvalidDescriptor(f"Unexpected {value or 'end'!r} in {self.text!r}")

    def literal(self) -> float:
        numerator = float(self.take()[1])
        if self.peek()[1] == "/":
            self.take("/")
            kind, value = self.take()
            if kind != "number":
                raise InvalidDescriptor(f"Expected a denominator in {self.text!r}")
            denominator = float(value)
            if denominator == 0:
                raise InvalidDescriptor(f"Zero denominator in {self.text!r}")
            return numerator / denominator
        return numerator

    def finish(self) -> None:
        if self.peek()[0] != "end":
            raise InvalidDescriptor(f"Trailing input {self.peek()[1]!r} in {self.text!r}")


def _number(node: Node, where: str) -> float:
    if isinstance(node, Call):
        raise InvalidDescriptor(f"{where} expects a number, got {node.name}(...)")
    return node


def _arity(node: Call, *counts: int) -> None:
    if len(node.args) not in counts:
        raise InvalidDescriptor(
            f"{node.name} takes {' or '.join(map(str, counts))} argument(s), got {len(node.args)}"
        )


def _build(node: Node):
    from ..models import descriptors as d

    if not isinstance(node, Call):
        raise InvalidDescriptor(f"Expected a space, got the number {node}")
    name = node.name
    if name == "lp":
        _arity(node, 1)
        return d.Lp(p=_number(node.args[0], "lp"))
    if name == "lorentz":
        _arity(node, 2)
        return d.LorentzPQ(p=_number(node.args[0], name), q=_number(node.args[1], name))
    if name == "dwp":
        _arity(node, 2)
        return d.LorentzD(w=_weight(node.args[0]), p=_number(node.args[1], name))
    if name == "orlicz":
        _arity(node, 1)
        return d.Orlicz(phi=_young(node.args[0]))
    if name == "marcinkiewicz":
        _arity(node, 1)
        rule = node.args[0]
        if isinstance(rule, Call) and rule.name == "pow":
            _arity(rule, 1)
            return d.Marcinkiewicz(exponent=_number(rule.args[0], "pow"))
        return d.Marcinkiewicz(base=_build(rule))
    if name == "dual":
        _arity(node, 1)
        return d.Dual(inner=_build(node.args[0]))
    if name == "power":
        _arity(node, 2)
        return d.Power(inner=_build(node.args[0]), r=_number(node.args[1], name))
    if name == "mult":
        _arity(node, 2)
        return d.Multiplier(source=_build(node.args[0]), target=_build(node.args[1]))
    raise InvalidDescriptor(f"Unknown space {name!r}")


def _weight(node: Node):
    from ..models.descriptors import WeightRule

    if not isinstance(node, Call) or node.name != "pow":
        raise InvalidDescriptor("dwp expects a weight rule pow(alpha)")
    _arity(node, 1)
    return WeightRule(alpha=_number(node.args[0], "pow"))


def _young(node: Node):
    from ..models.descriptors import OrliczFamily, OrliczFunction

    if not isinstance(node, Call):
        raise InvalidDescriptor("orlicz expects a Young function such as power(1.5)")
    try:
        family = OrliczFamily(node.name)
    except ValueError:
        raise InvalidDescriptor(f"Unknown Young function family {node.name!r}") from None
    return OrliczFunction(
        family=family, params=tuple(_number(arg, node.name) for arg in node.args)
    )


def parse(text: str):
    """Parse a descriptor expression; syntax and range errors raise InvalidDescriptor."""
    parser = _Parser(text)
    node = parser.node()
    parser.finish()
    try:
        return _build(node)
    except ValidationError as exc:
        raise InvalidDescriptor(f"Invalid descriptor {text!r}: {exc.errors()[0]['msg']}") from exc


def parse_couple(text: str) -> tuple:
    """Parse "E0,E1" splitting at the top-level comma."""
    depth = 0
    for i, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "," and depth == 0:
            return parse(text[:i]), parse(text[i + 1 :])
    raise InvalidDescriptor(f"Expected a couple 'E0,E1', got {text!r}")


def parse_numbers(text: str) -> np.ndarray:
    """Comma separated literals such as "1,1/2,inf"."""
    values = []
    for item in text.split(","):
        parser = _Parser(item)
        value = parser.node()
        parser.finish()
        values.append(_number(value, "vector"))
    return np.asarray(values, dtype=float)


def to_expression(E) -> str:
    """Print a descriptor in the expression grammar."""
    from ..models import descriptors as d

    f = format_literal
    if isinstance(E, d.Lp):
        return f"lp({f(E.p)})"
    if isinstance(E, d.LorentzPQ):
        return f"lorentz({f(E.p)},{f(E.q)})"
    if isinstance(E, d.LorentzD):
        return f"dwp({E.w.label()},{f(E.p)})"
    if isinstance(E, d.Orlicz):
        return f"orlicz({E.phi.label()})"
    if isinstance(E, d.Marcinkiewicz):
        if E.exponent is not None:
            return f"marcinkiewicz(pow({f(E.exponent)}))"
        return f"marcinkiewicz({to_expression(E.base)})"
    if isinstance(E, d.Dual):
        return f"dual({to_expression(E.inner)})"
    if isinstance(E, d.Power):
        return f"power({to_expression(E.inner)},{f(E.r)})"
    if isinstance(E, d.Multiplier):
        return f"mult({to_expression(E.source)},{to_expression(E.target)})"
    raise InvalidDescriptor(f"Cannot print {E!r}")
