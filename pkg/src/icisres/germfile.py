"""Parser for germ description files.

Format: `key = value` statements separated by newlines or `;`, comments
from `#` to end of line.  Keys: vars (variable names), f (equations),
omega (form components), g (map components for multiplicity runs), and
the integer knobs seed, cap, max_cap, attempts.  Polynomial expressions
use `+ - * ^ ( )` and rational literals `p/q`; multiplication is always
explicit and decimals are rejected, so every coefficient stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import (ArityError, GermSyntaxError, GermFileError,
                     NonRationalCoefficient)
from .polycore import Poly

KEYS = ("vars", "f", "omega", "g", "seed", "cap", "max_cap", "attempts")


@dataclass
class Token:
    kind: str            # "name", "int", or the punctuation itself
    text: str
    line: int
    col: int


def _tokenize_line(text: str, lineno: int) -> List[Token]:
    toks: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = i + 1
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], lineno, col))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == ".":
                raise NonRationalCoefficient(
                    "decimal literals are not rational; write p/q",
                    lineno, col)
            toks.append(Token("int", text[i:j], lineno, col))
            i = j
            continue
        if ch in "+-*^()/,=;":
            toks.append(Token(ch, ch, lineno, col))
            i += 1
            continue
        raise GermSyntaxError(f"unexpected character {ch!r}", lineno, col)
    return toks


def _statements(text: str) -> List[List[Token]]:
    out: List[List[Token]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        current: List[Token] = []
        for tok in _tokenize_line(line, lineno):
            if tok.kind == ";":
                if current:
                    out.append(current)
                current = []
            else:
                current.append(tok)
        if current:
            out.append(current)
    return out


def _split_commas(toks: List[Token]) -> List[List[Token]]:
    parts: List[List[Token]] = []
    current: List[Token] = []
    for tok in toks:
        if tok.kind == ",":
            parts.append(current)
            current = []
        else:
            current.append(tok)
    parts.append(current)
    return parts


_PRIMARY_START = ("name", "int", "(")


class _ExprParser:
    """Recursive descent over one comma-free token slice."""

    def __init__(self, toks: List[Token], names: Dict[str, int], anchor: Token):
        self.toks = toks
        self.pos = 0
        self.names = names
        self.nvars = len(names)
        self.anchor = anchor     # for the empty-expression error position

    def peek(self) -> Optional[Token]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise GermSyntaxError("unexpected end of expression",
                                  self.anchor.line, self.anchor.col)
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise GermSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return p

    def expr(self) -> Poly:
        tok = self.peek()
        negate = False
        if tok is not None and tok.kind in ("+", "-"):
            self.take()
            negate = tok.kind == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                return p
            self.take()
            q = self.term()
            p = p - q if tok.kind == "-" else p + q

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                return p
            if tok.kind == "*":
                self.take()
                p = p * self.factor()
            elif tok.kind in _PRIMARY_START:
                raise GermSyntaxError(
                    "implicit multiplication is not allowed; write '*'",
                    tok.line, tok.col)
            else:
                return p

    def factor(self) -> Poly:
        p = self.primary()
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.take()
            etok = self.take()
            if etok.kind != "int":
                raise GermSyntaxError("exponent must be a nonnegative integer",
                                      etok.line, etok.col)
            p = p ** int(etok.text)
        return p

    def primary(self) -> Poly:
        tok = self.take()
        if tok.kind == "int":
            value = Fraction(int(tok.text))
            nxt = self.peek()
            if nxt is not None and nxt.kind == "/":
                self.take()
                den = self.take()
                if den.kind != "int" or int(den.text) == 0:
                    raise GermSyntaxError("denominator must be a nonzero integer",
                                          den.line, den.col)
                value = Fraction(int(tok.text), int(den.text))
            return Poly.const(self.nvars, value)
        if tok.kind == "name":
            if tok.text not in self.names:
                raise GermSyntaxError(f"unknown variable {tok.text!r}",
                                      tok.line, tok.col)
            return Poly.variable(self.nvars, self.names[tok.text])
        if tok.kind == "(":
            p = self.expr()
            closing = self.take()
            if closing.kind != ")":
                raise GermSyntaxError("expected ')'", closing.line, closing.col)
            return p
        raise GermSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)


@dataclass
class GermFile:
    """Validated contents of one description file."""

    names: Tuple[str, ...]
    f: Tuple[Poly, ...]
    omega: Tuple[Poly, ...]
    g: Tuple[Poly, ...] = ()
    seed: int = 0
    cap: Optional[int] = None
    max_cap: Optional[int] = None
    attempts: Optional[int] = None

    @property
    def nvars(self) -> int:
        return len(self.names)


def parse_germ_file(text: str) -> GermFile:
    entries: Dict[str, Tuple[Token, List[Token]]] = {}
    for stmt in _statements(text):
        head = stmt[0]
        if head.kind != "name" or head.text not in KEYS:
            raise GermSyntaxError(
                f"expected one of {', '.join(KEYS)}", head.line, head.col)
        if len(stmt) < 2 or stmt[1].kind != "=":
            raise GermSyntaxError("expected '=' after key", head.line,
                                  head.col + len(head.text))
        if head.text in entries:
            raise GermSyntaxError(f"duplicate key {head.text!r}",
                                  head.line, head.col)
        entries[head.text] = (head, stmt[2:])

    if "vars" not in entries:
        raise GermSyntaxError("missing 'vars' entry", 0, 0)
    vars_tok, vars_rest = entries["vars"]
    names: List[str] = []
    for part in _split_commas(vars_rest):
        if len(part) != 1 or part[0].kind != "name":
            where = part[0] if part else vars_tok
            raise GermSyntaxError("variable names must be plain identifiers",
                                  where.line, where.col)
        if part[0].text in names:
            raise GermSyntaxError(f"duplicate variable {part[0].text!r}",
                                  part[0].line, part[0].col)
        names.append(part[0].text)
    index = {nm: i for i, nm in enumerate(names)}

    def poly_list(key: str) -> Tuple[Poly, ...]:
        if key not in entries:
            return ()
        anchor, rest = entries[key]
        if not rest:
            return ()
        polys = []
        for part in _split_commas(rest):
            if not part:
                raise GermSyntaxError(f"empty entry in {key!r} list",
                                      anchor.line, anchor.col)
            polys.append(_ExprParser(part, index, part[0]).parse())
        return tuple(polys)

    def integer(key: str) -> Optional[int]:
        if key not in entries:
            return None
        anchor, rest = entries[key]
        if len(rest) == 2 and rest[0].kind == "-" and rest[1].kind == "int":
            return -int(rest[1].text)
        if len(rest) != 1 or rest[0].kind != "int":
            raise GermSyntaxError(f"{key!r} takes a single integer",
                                  anchor.line, anchor.col)
        return int(rest[0].text)

    f = poly_list("f")
    omega = poly_list("omega")
    g = poly_list("g")
    if "omega" not in entries:
        raise GermSyntaxError("missing 'omega' entry", 0, 0)
    if len(omega) != len(names):
        anchor, _ = entries["omega"]
        raise ArityError(
            f"omega needs {len(names)} components, got {len(omega)}",
            anchor.line, anchor.col)

    seed = integer("seed")
    return GermFile(tuple(names), f, omega, g,
                    seed if seed is not None else 0,
                    integer("cap"), integer("max_cap"), integer("attempts"))
