"""
Parser for polygon expressions.

Grammar (whitespace is ignored everywhere):

    expr := term ("+" term)*
    term := atom ("^" posint)?
    atom := "ord" | "ss" | "sigma" posint | "nu" posint | "G(" int "," int ")"
"""

import string
from typing import List, Tuple

from ..errors import NuTooSmallError, PolygonSyntaxError
from .polygon import NewtonPolygon

Triple = Tuple[int, int, int]


class _ExpressionParser:
    """Recursive-descent parser over the non-whitespace characters of the input."""

    def __init__(self, text: str):
        self.text = text
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0

    def offset(self) -> int:
        """Byte offset of the current character (end of input when exhausted)."""
        index = self.chars[self.pos][0] if self.pos < len(self.chars) else len(self.text)
        return len(self.text[:index].encode("utf-8"))

    def peek(self, literal: str) -> bool:
        end = self.pos + len(literal)
        if end > len(self.chars):
            return False
        return "".join(ch for _, ch in self.chars[self.pos:end]) == literal

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            raise PolygonSyntaxError(f"expected '{literal}'", self.offset())

    def integer(self, positive: bool) -> int:
        start = self.offset()
        digits = ""
        while self.pos < len(self.chars) and self.chars[self.pos][1] in string.digits:
            digits += self.chars[self.pos][1]
            self.pos += 1
        if not digits:
            kind = "positive integer" if positive else "integer"
            raise PolygonSyntaxError(f"expected {kind}", start)
        value = int(digits)
        if positive and value < 1:
            raise PolygonSyntaxError("expected positive integer", start)
        return value

    def atom(self) -> List[Triple]:
        if self.accept("ord"):
            return [(0, 1, 1), (1, 0, 1)]
        if self.accept("sigma"):
            return [(1, 1, self.integer(positive=True))]
        if self.accept("ss"):
            return [(1, 1, 1)]
        if self.accept("nu"):
            start = self.offset()
            d = self.integer(positive=True)
            if d < 3:
                raise NuTooSmallError(f"nu{d}: d must be at least 3 (at byte {start})")
            return [(1, d - 1, 1), (d - 1, 1, 1)]
        if self.accept("G"):
            self.expect("(")
            c = self.integer(positive=False)
            self.expect(",")
            d = self.integer(positive=False)
            self.expect(")")
            return [(c, d, 1)]
        raise PolygonSyntaxError("expected 'ord', 'ss', 'sigma', 'nu' or 'G('", self.offset())

    def term(self) -> List[Triple]:
        factors = self.atom()
        if self.accept("^"):
            power = self.integer(positive=True)
            factors = [(c, d, m * power) for c, d, m in factors]
        return factors

    def expression(self) -> List[Triple]:
        factors = self.term()
        while self.accept("+"):
            factors.extend(self.term())
        if self.pos != len(self.chars):
            raise PolygonSyntaxError("unexpected trailing input", self.offset())
        return factors


def parse_polygon(text: str) -> NewtonPolygon:
    """Parse a polygon expression such as "ord^2+nu3+ss"."""
    return NewtonPolygon.make(_ExpressionParser(text).expression())

