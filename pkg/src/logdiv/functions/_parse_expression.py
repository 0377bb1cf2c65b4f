import re
from dataclasses import dataclass
from typing import List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing

from ._errors import ParseError
from ._polynomials import Poly, polynomial_ring, variable_names

_TOKEN = re.compile(r"(\n)|([ \t\r]+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")


@dataclass(frozen=True)
class Token:
    kind: str  # 'number', 'ident', 'op' or 'end'
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens carrying 1-based line and column positions."""
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN.finditer(text):
        newline, space, number, ident, op = match.groups()
        column = match.start() - line_start + 1
        if newline:
            line, line_start = line + 1, match.end()
        elif space:
            continue
        elif number:
            tokens.append(Token("number", number, line, column))
        elif ident:
            tokens.append(Token("ident", ident, line, column))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"Unexpected character '{op}'", line, column)
            tokens.append(Token("op", op, line, column))
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' NUMBER)?
    atom  := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'
    """

    def __init__(self, tokens: List[Token], ring: PolyRing):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.names = variable_names(ring)

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        raise ParseError(message, token.line, token.column)

    def expect(self, text: str) -> Token:
        if self.current.kind != "op" or self.current.text != text:
            self.fail(f"Expected '{text}'")
        return self.advance()

    def parse(self) -> Poly:
        if self.current.kind == "end":
            self.fail("Empty expression")
        value = self.expr()
        if self.current.kind != "end":
            self.fail(f"Unexpected '{self.current.text}'")
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.current.kind == "op" and self.current.text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> Poly:
        if self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            if self.current.kind == "op" and self.current.text == "-":
                self.fail("Negative exponents are not allowed")
            if self.current.kind != "number":
                self.fail("Exponent must be a non-negative integer literal")
            base = base ** int(self.advance().text)
        if self.current.kind in ("number", "ident") or (self.current.kind == "op" and self.current.text == "("):
            self.fail("Implicit multiplication is not allowed; use '*'")
        return base

    def atom(self) -> Poly:
        token = self.current
        if token.kind == "number":
            self.advance()
            numerator = int(token.text)
            if self.current.kind == "op" and self.current.text == "/":
                self.advance()
                if self.current.kind != "number":
                    self.fail("Rational literal needs an integer denominator")
                denominator = int(self.advance().text)
                if denominator == 0:
                    self.fail("Division by zero in rational literal", token)
                return self.ring.ground_new(QQ(numerator, denominator))
            return self.ring.ground_new(QQ(numerator))
        if token.kind == "ident":
            self.advance()
            if token.text not in self.names:
                self.fail(f"Unknown variable '{token.text}'", token)
            return self.ring.gens[self.names.index(token.text)]
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "end":
            self.fail("Unexpected end of input")
        self.fail(f"Unexpected '{token.text}'")


def expression_variables(text: str) -> List[str]:
    """Identifiers of ``text`` in order of first appearance."""
    seen = []
    for token in tokenize(text):
        if token.kind == "ident" and token.text not in seen:
            seen.append(token.text)
    return seen


def parse_expression(text: str, variables: Optional[Sequence[str]] = None,
                     ring: Optional[PolyRing] = None) -> Poly:
    """
    Parse a polynomial written with ``+ - * ^``, integers and ``a/b`` literals.

    Parameters:
    text (str): The expression, e.g. "x^2 - y^3".
    variables (list): Declared variable names in ring order. Defaults to the
        identifiers of ``text`` in order of first appearance.
    ring (PolyRing): Ring to parse into; overrides ``variables``.

    Returns:
    Poly: The parsed polynomial with exact rational coefficients.

    Raises:
    ParseError: On a grammar violation or an undeclared variable, with the
        line and column of the offending token.
    """
    if not isinstance(text, str):
        raise TypeError("Expression must be a string.")
    tokens = tokenize(text)
    if ring is None:
        names = list(variables) if variables is not None else expression_variables(text)
        if not names:
            names = ["x"]
        ring = polynomial_ring(names)
    return _Parser(tokens, ring).parse()
