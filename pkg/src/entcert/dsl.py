"""Text front end for operator expressions and moment inequalities.

Grammar (whitespace insensitive; ``-`` also accepts the unicode minus):

    query    := compare | arith
    compare  := arith (">=" | "<") arith
    arith    := aterm (("+" | "-") aterm)*
    aterm    := afact (("*" | "/") afact)*
    afact    := "E" "[" expr "]" | "Var" "[" expr "]"
              | "abs2" "(" arith ")" | number | "(" arith ")"
    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := primary ("^" posint)? | "-" factor
    primary  := "a" | "ad" | "b" | "bd" | "xa" | "pa" | "xb" | "pb"
              | "i" | number | "(" expr ")"

Operator symbols do not commute under "*"; all commutation rewriting
happens in the lowering pass.  Division is only defined by complex
scalars and is folded into coefficients.  ``i`` is the imaginary unit and
``abs2(z)`` is |z|^2.
"""

import re
from dataclasses import dataclass

from . import algebra
from .algebra import OperatorPoly, expectation_poly, variance
from .errors import EntcertError, LexError, ParseError
from .fock import DensityOperator

OPERATOR_SYMBOLS = ("a", "ad", "b", "bd", "xa", "pa", "xb", "pb")


class LoweringError(EntcertError):
    """Expression is grammatical but has no operator-polynomial meaning."""


# -- AST ----------------------------------------------------------------

@dataclass(frozen=True)
class ComplexLiteral:
    value: complex


@dataclass(frozen=True)
class Symbol:
    name: str  # one of OPERATOR_SYMBOLS or "i"


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Paren:
    inner: object


@dataclass(frozen=True)
class EQuery:
    expr: object


@dataclass(frozen=True)
class VarQuery:
    expr: object


@dataclass(frozen=True)
class Abs2:
    arg: object


@dataclass(frozen=True)
class QNum:
    value: float


@dataclass(frozen=True)
class QParen:
    inner: object


@dataclass(frozen=True)
class QBinary:
    op: str  # "+", "-", "*", "/"
    left: object
    right: object


@dataclass(frozen=True)
class Compare:
    left: object
    relation: str  # ">=" or "<"
    right: object


@dataclass(frozen=True)
class CompareResult:
    lhs: float
    rhs: float
    holds: bool
    relation: str


# -- lexer --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<geq>>=)"
    r"|(?P<punct>[+*/^()\[\]<]|-|−)"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "number", "name", or the punctuation itself
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == match.start():
            # skip leading whitespace manually to report the right offset
            stripped = len(text) - len(text[pos:].lstrip())
            if stripped >= len(text):
                break
            raise LexError(f"unexpected character {text[stripped]!r}", stripped)
        if match.lastgroup == "number":
            tokens.append(Token("number", match.group("number"), match.start("number")))
        elif match.lastgroup == "name":
            tokens.append(Token("name", match.group("name"), match.start("name")))
        elif match.lastgroup == "geq":
            tokens.append(Token(">=", ">=", match.start("geq")))
        else:
            ch = match.group("punct")
            if ch == "−":
                ch = "-"
            tokens.append(Token(ch, ch, match.start("punct")))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- parser -------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _fail(self, expected: str):
        tok = self.current
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {expected}, found {what}", tok.pos)

    def _expect(self, kind: str, expected: str) -> Token:
        if self.current.kind != kind:
            self._fail(expected)
        return self._advance()

    # query level ----------------------------------------------------

    def parse_query(self):
        left = self.parse_arith()
        if self.current.kind in (">=", "<"):
            relation = self._advance().kind
            right = self.parse_arith()
            node = Compare(left, relation, right)
        else:
            node = left
        if self.current.kind != "end":
            self._fail("end of input, an arithmetic operator, '>=' or '<'")
        return node

    def parse_arith(self):
        node = self.parse_aterm()
        while self.current.kind in ("+", "-"):
            op = self._advance().kind
            node = QBinary(op, node, self.parse_aterm())
        return node

    def parse_aterm(self):
        node = self.parse_afact()
        while self.current.kind in ("*", "/"):
            op = self._advance().kind
            node = QBinary(op, node, self.parse_afact())
        return node

    def parse_afact(self):
        tok = self.current
        if tok.kind == "name" and tok.text == "E":
            self._advance()
            self._expect("[", "'[' after E")
            expr = self.parse_expr()
            self._expect("]", "']'")
            return EQuery(expr)
        if tok.kind == "name" and tok.text == "Var":
            self._advance()
            self._expect("[", "'[' after Var")
            expr = self.parse_expr()
            self._expect("]", "']'")
            return VarQuery(expr)
        if tok.kind == "name" and tok.text == "abs2":
            self._advance()
            self._expect("(", "'(' after abs2")
            arg = self.parse_arith()
            self._expect(")", "')'")
            return Abs2(arg)
        if tok.kind == "number":
            self._advance()
            return QNum(float(tok.text))
        if tok.kind == "(":
            self._advance()
            inner = self.parse_arith()
            self._expect(")", "')'")
            return QParen(inner)
        self._fail("E[...], Var[...], abs2(...), a number, or '('")

    # operator-expression level ---------------------------------------

    def parse_expr(self):
        node = self.parse_term()
        while self.current.kind in ("+", "-"):
            op = self._advance().kind
            right = self.parse_term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.current.kind in ("*", "/"):
            op = self._advance().kind
            right = self.parse_factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def parse_factor(self):
        if self.current.kind == "-":
            self._advance()
            return Neg(self.parse_factor())
        base = self.parse_primary()
        if self.current.kind == "^":
            self._advance()
            tok = self._expect("number", "a positive integer exponent")
            if not tok.text.isdigit() or int(tok.text) < 1:
                raise ParseError(f"exponent must be a positive integer, got {tok.text!r}", tok.pos)
            return Pow(base, int(tok.text))
        return base

    def parse_primary(self):
        tok = self.current
        if tok.kind == "name":
            if tok.text in OPERATOR_SYMBOLS:
                self._advance()
                return Symbol(tok.text)
            if tok.text == "i":
                self._advance()
                return Symbol("i")
            self._fail("an operator symbol (a, ad, b, bd, xa, pa, xb, pb) or i")
        if tok.kind == "number":
            self._advance()
            return ComplexLiteral(complex(float(tok.text)))
        if tok.kind == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect(")", "')'")
            return Paren(inner)
        self._fail("an operator symbol, i, a number, or '('")


def parse(text: str):
    """Parse a query (or a bare arithmetic expression over E/Var results)."""
    return _Parser(text).parse_query()


def parse_operator(text: str):
    """Parse text as a pure operator expression (the inside of E[...])."""
    parser = _Parser(text)
    node = parser.parse_expr()
    if parser.current.kind != "end":
        parser._fail("end of input or an operator")
    return node


# -- printing (round-trip) ------------------------------------------------

def format_expr(node) -> str:
    if isinstance(node, ComplexLiteral):
        return _format_number(node.value)
    if isinstance(node, Symbol):
        return node.name
    if isinstance(node, Neg):
        return "-" + format_expr(node.operand)
    if isinstance(node, Add):
        return f"{format_expr(node.left)}+{format_expr(node.right)}"
    if isinstance(node, Sub):
        return f"{format_expr(node.left)}-{format_expr(node.right)}"
    if isinstance(node, Mul):
        return f"{format_expr(node.left)}*{format_expr(node.right)}"
    if isinstance(node, Div):
        return f"{format_expr(node.left)}/{format_expr(node.right)}"
    if isinstance(node, Pow):
        return f"{format_expr(node.base)}^{node.exponent}"
    if isinstance(node, Paren):
        return f"({format_expr(node.inner)})"
    raise TypeError(f"not an operator-expression node: {node!r}")


def format_query(node) -> str:
    if isinstance(node, Compare):
        return f"{format_query(node.left)}{node.relation}{format_query(node.right)}"
    if isinstance(node, QBinary):
        return f"{format_query(node.left)}{node.op}{format_query(node.right)}"
    if isinstance(node, QParen):
        return f"({format_query(node.inner)})"
    if isinstance(node, QNum):
        return _format_number(node.value)
    if isinstance(node, EQuery):
        return f"E[{format_expr(node.expr)}]"
    if isinstance(node, VarQuery):
        return f"Var[{format_expr(node.expr)}]"
    if isinstance(node, Abs2):
        return f"abs2({format_query(node.arg)})"
    raise TypeError(f"not a query node: {node!r}")


def _format_number(value) -> str:
    real = value.real if isinstance(value, complex) else float(value)
    if real == int(real) and abs(real) < 1e15:
        return str(int(real))
    return repr(real)


# -- lowering -------------------------------------------------------------

_SYMBOL_POLYS = {
    "a": algebra.A,
    "ad": algebra.AD,
    "b": algebra.B,
    "bd": algebra.BD,
    "i": OperatorPoly.scalar(1j),
    **algebra.QUADRATURES,
}


def lower(node) -> OperatorPoly:
    """Translate an operator-expression AST to its canonical polynomial."""
    if isinstance(node, ComplexLiteral):
        return OperatorPoly.scalar(node.value)
    if isinstance(node, Symbol):
        return _SYMBOL_POLYS[node.name]
    if isinstance(node, Neg):
        return -lower(node.operand)
    if isinstance(node, Add):
        return lower(node.left) + lower(node.right)
    if isinstance(node, Sub):
        return lower(node.left) - lower(node.right)
    if isinstance(node, Mul):
        return lower(node.left) * lower(node.right)
    if isinstance(node, Div):
        divisor = lower(node.right)
        scalar = _as_scalar(divisor)
        if scalar is None:
            raise LoweringError(f"division is only defined by complex scalars, got {divisor!r}")
        if scalar == 0:
            raise LoweringError("division by zero")
        return lower(node.left) * (1.0 / scalar)
    if isinstance(node, Pow):
        return lower(node.base) ** node.exponent
    if isinstance(node, Paren):
        return lower(node.inner)
    raise TypeError(f"not an operator-expression node: {node!r}")


def _as_scalar(poly: OperatorPoly):
    """The complex value of a scalar polynomial, or None if it has ladder terms."""
    if not poly.terms:
        return 0j
    if set(poly.terms) == {algebra.IDENTITY_MONO}:
        return poly.terms[algebra.IDENTITY_MONO]
    return None


# -- evaluation ------------------------------------------------------------

_COMPARE_REAL_TOL = 1e-9


def evaluate(node, rho: DensityOperator):
    """Evaluate a query AST against a state.

    Returns a complex number for value queries and a CompareResult for
    comparisons.  Comparisons are evaluated on the real parts after
    checking the imaginary parts are negligible.
    """
    if isinstance(node, Compare):
        lhs = _to_real(_evaluate_value(node.left, rho), "left side of comparison")
        rhs = _to_real(_evaluate_value(node.right, rho), "right side of comparison")
        holds = lhs >= rhs if node.relation == ">=" else lhs < rhs
        return CompareResult(lhs=lhs, rhs=rhs, holds=holds, relation=node.relation)
    return _evaluate_value(node, rho)


def _evaluate_value(node, rho: DensityOperator) -> complex:
    if isinstance(node, QNum):
        return complex(node.value)
    if isinstance(node, QParen):
        return _evaluate_value(node.inner, rho)
    if isinstance(node, EQuery):
        return expectation_poly(rho, lower(node.expr))
    if isinstance(node, VarQuery):
        poly = lower(node.expr)
        if not poly.is_hermitian():
            raise LoweringError(f"Var requires a Hermitian operator, got {poly!r}")
        return complex(variance(rho, poly))
    if isinstance(node, Abs2):
        return complex(abs(_evaluate_value(node.arg, rho)) ** 2)
    if isinstance(node, QBinary):
        left = _evaluate_value(node.left, rho)
        right = _evaluate_value(node.right, rho)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right == 0:
            raise LoweringError("division by zero in query arithmetic")
        return left / right
    raise TypeError(f"not a query node: {node!r}")


def _to_real(value: complex, label: str) -> float:
    if abs(value.imag) > _COMPARE_REAL_TOL * max(1.0, abs(value)):
        raise LoweringError(f"{label} is not real: {value!r}")
    return value.real


def evaluate_text(text: str, rho: DensityOperator):
    """Parse and evaluate in one step."""
    return evaluate(parse(text), rho)
