import re
from typing import Callable, List, NamedTuple, Optional

from linmba.expr.__expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width
from linmba.util.exceptions import ExpressionSyntaxError

TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<hex>0[xX][0-9A-Fa-f]+)
  | (?P<dec>[0-9]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[~&^|+\-*()])
""", re.VERBOSE)

class Token(NamedTuple):
    kind: str  # "hex", "dec", "id", "op" or "end"
    text: str
    position: int

def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    offset = 0
    while offset < len(text):
        m = TOKEN.match(text, offset)
        if not m:
            raise ExpressionSyntaxError(offset, 'unexpected character "%s"' % text[offset])
        kind = m.lastgroup
        assert kind is not None
        if kind in ("hex", "dec"):
            # 0x1g lexes as 0x1 followed by an identifier; reject it here.
            end = m.end()
            if end < len(text) and (text[end].isalnum() or text[end] == "_"):
                raise ExpressionSyntaxError(offset, 'malformed number "%s"' % text[offset:end + 1])
            tokens.append(Token(kind, m.group(), offset))
        elif kind == "id":
            tokens.append(Token("id", m.group(), offset))
        elif kind == "op":
            tokens.append(Token("op", m.group(), offset))
        offset = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens

class _Parser:
    """Recursive descent over the grammar in docs/grammar.md. Binary levels, loosest first: |, ^, &, + -, *; unary ~
    and - bind tightest. All binary operators associate to the left."""

    def __init__(self, text: str, width: Width):
        self.tokens = tokenize(text)
        self.index = 0
        self.width = width

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, *ops: str) -> Optional[Token]:
        token = self.current
        if token.kind == "op" and token.text in ops:
            return self._advance()
        return None

    def _left_assoc(self, ops: str, operand: Callable[[], Expr]) -> Expr:
        ret = operand()
        while True:
            token = self._accept(*ops)
            if token is None:
                return ret
            ret = Binary(BinaryOp(token.text), ret, operand())

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExpressionSyntaxError(0, "empty expression")
        ret = self._or()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(self.current.position, 'unexpected "%s"' % self.current.text)
        return ret

    def _or(self) -> Expr:
        return self._left_assoc("|", self._xor)

    def _xor(self) -> Expr:
        return self._left_assoc("^", self._and)

    def _and(self) -> Expr:
        return self._left_assoc("&", self._sum)

    def _sum(self) -> Expr:
        return self._left_assoc("+-", self._product)

    def _product(self) -> Expr:
        return self._left_assoc("*", self._unary)

    def _unary(self) -> Expr:
        token = self._accept("~", "-")
        if token is not None:
            return Unary(UnaryOp(token.text), self._unary())
        return self._atom()

    def _atom(self) -> Expr:
        token = self.current
        if token.kind in ("hex", "dec"):
            self._advance()
            value = int(token.text, 16 if token.kind == "hex" else 10)
            return Const(self.width.reduce(value))
        if token.kind == "id":
            self._advance()
            return Var(token.text)
        if self._accept("("):
            inner = self._or()
            if self._accept(")") is None:
                raise ExpressionSyntaxError(self.current.position, 'expected ")"')
            return inner
        if token.kind == "end":
            raise ExpressionSyntaxError(token.position, "unexpected end of input")
        raise ExpressionSyntaxError(token.position, 'unexpected "%s"' % token.text)

def parse(text: str, width: Width) -> Expr:
    """Parse an MBA expression. Constants (decimal or 0x hex) are reduced modulo 2^n."""
    return _Parser(text, width).parse()
