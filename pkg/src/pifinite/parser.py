"""Text grammar for space expressions.

    expr    := term { "+" term }
    term    := factor { "*" factor }
    factor  := INT | "pt" | "B" "^" INT "(" abelian ")" | "B" "(" group ")"
             | "(" expr ")"
    abelian := "C" INT { "x" "C" INT }
    group   := atomgrp { "x" atomgrp }
    atomgrp := "C" INT | "S" INT | "D" INT | atomgrp "wr" "C" INT

"+" is disjoint union, "*" is product, a bare integer is the discrete space
with that many points (0 parses to the empty space).  ``B^0(...)`` collapses
to the underlying finite set.  Printing a parsed expression and re-parsing
it yields an identical normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError
from .groups import (Cyclic, Dihedral, DirectProduct, GroupDescriptor, Symmetric,
                     Wreath, build_group, descriptor_name)
from .spaces import (EM, Classifying, Disjoint, Empty, FinSet, Product, SpaceExpr,
                     classifying, disjoint_union, em_space, finite_set, product)


class ParseError(InputError):
    """Syntax error, carrying the offending position in the source text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class _Token:
    kind: str      # INT, NAME, SYM, END
    text: str
    position: int


_KEYWORDS = ("pt", "wr")
_LETTERS = "BCSDx"
_SYMBOLS = "+*^()"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
        elif text[i:i + 2] in _KEYWORDS:
            tokens.append(_Token("NAME", text[i:i + 2], i))
            i += 2
        elif ch in _LETTERS:
            tokens.append(_Token("NAME", ch, i))
            i += 1
        elif ch in _SYMBOLS:
            tokens.append(_Token("SYM", ch, i))
            i += 1
        elif ch.isalpha():
            raise ParseError(f"unknown name {ch!r}", i)
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}",
                             tok.position)
        return self.advance()

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def parse_int(self) -> int:
        return int(self.expect("INT").text)

    # grammar rules

    def expr(self) -> SpaceExpr:
        parts = [self.term()]
        while self.at("SYM", "+"):
            self.advance()
            parts.append(self.term())
        return disjoint_union(*parts) if len(parts) > 1 else parts[0]

    def term(self) -> SpaceExpr:
        factors = [self.factor()]
        while self.at("SYM", "*"):
            self.advance()
            factors.append(self.factor())
        return product(*factors) if len(factors) > 1 else factors[0]

    def factor(self) -> SpaceExpr:
        tok = self.peek()
        if tok.kind == "INT":
            return finite_set(self.parse_int())
        if self.at("NAME", "pt"):
            self.advance()
            return finite_set(1)
        if self.at("NAME", "B"):
            self.advance()
            if self.at("SYM", "^"):
                self.advance()
                degree = self.parse_int()
                self.expect("SYM", "(")
                factors = self.abelian()
                self.expect("SYM", ")")
                return em_space(factors, degree)
            self.expect("SYM", "(")
            desc = self.group()
            self.expect("SYM", ")")
            return classifying(build_group(desc))
        if self.at("SYM", "("):
            self.advance()
            inner = self.expr()
            self.expect("SYM", ")")
            return inner
        raise ParseError(f"expected a factor, found {tok.text or 'end of input'!r}",
                         tok.position)

    def abelian(self) -> list[int]:
        factors = [self.cyclic_order()]
        while self.at("NAME", "x"):
            self.advance()
            factors.append(self.cyclic_order())
        return factors

    def cyclic_order(self) -> int:
        self.expect("NAME", "C")
        return self.parse_int()

    def group(self) -> GroupDescriptor:
        terms = [self.atom_group()]
        while self.at("NAME", "x"):
            self.advance()
            terms.append(self.atom_group())
        desc = terms[0]
        for t in terms[1:]:
            desc = DirectProduct(desc, t)
        return desc

    def atom_group(self) -> GroupDescriptor:
        tok = self.peek()
        if tok.kind != "NAME" or tok.text not in "CSD":
            raise ParseError(
                f"expected a group (C/S/D), found {tok.text or 'end of input'!r}",
                tok.position)
        letter = self.advance().text
        size = self.parse_int()
        if letter == "C":
            desc: GroupDescriptor = Cyclic(size)
        elif letter == "S":
            desc = Symmetric(size)
        else:
            desc = Dihedral(size)
        while self.at("NAME", "wr"):
            self.advance()
            self.expect("NAME", "C")
            desc = Wreath(desc, self.parse_int())
        return desc


def parse_space(text: str) -> SpaceExpr:
    """Parse a space expression; raises ParseError with a position on bad input."""
    parser = _Parser(text)
    out = parser.expr()
    tok = parser.peek()
    if tok.kind != "END":
        raise ParseError(f"trailing input {tok.text!r}", tok.position)
    return out


def parse_group(text: str) -> GroupDescriptor:
    """Parse just the group sub-grammar (used by the wreath report command)."""
    parser = _Parser(text)
    desc = parser.group()
    tok = parser.peek()
    if tok.kind != "END":
        raise ParseError(f"trailing input {tok.text!r}", tok.position)
    return desc


# -- printing ------------------------------------------------------------------------

def space_text(x: SpaceExpr) -> str:
    """Render an expression in the grammar above.

    Expressions that came from the parser always render to re-parseable
    text.  Groups built by internal machinery (centralizers of machine
    subgroups) have no descriptor and fall back to their display name.
    """
    if isinstance(x, Empty):
        return "0"
    if isinstance(x, FinSet):
        return "pt" if x.size == 1 else str(x.size)
    if isinstance(x, Classifying):
        g = x.group
        inner = descriptor_name(g.descriptor) if g.descriptor is not None else g.name
        return f"B({inner})"
    if isinstance(x, EM):
        inner = " x ".join(f"C{q}" for q in x.factors)
        return f"B^{x.degree}({inner})"
    if isinstance(x, Disjoint):
        return " + ".join(space_text(p) for p in x.parts)
    if isinstance(x, Product):
        bits = []
        for f in x.factors:
            text = space_text(f)
            bits.append(f"({text})" if isinstance(f, Disjoint) else text)
        return " * ".join(bits)
    raise InputError(f"not a space expression: {x!r}")
