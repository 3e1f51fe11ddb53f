"""Expression parsing and canonical polynomial text.

Grammar (exact; whitespace insignificant, juxtaposition is not
multiplication):

    expression := term (('+'|'-') term)*
    term       := factor ('*' factor)*
    factor     := base ('^' positive-integer)?
    base       := variable | integer | 'i' | '(' expression ')'

Variables are ASCII identifiers from the declared list; ``i`` is the
imaginary unit and cannot be a variable name.  The formatter emits text
this grammar accepts whenever all coefficients are Gaussian integers
(rational coefficients, which arise only in computed output such as monic
gcds, print as "a/b" and make the text display-only).
"""

from __future__ import annotations

from .errors import NotAGermError, ParseError, UnknownVariableError
from .poly import MapGerm, Polynomial
from .rationals import GaussianRational, I, ONE

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch == "\n":
            line += 1
            col = 1
            k += 1
            continue
        if ch in " \t\r":
            col += 1
            k += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            tokens.append(_Token("int", text[start:k], line, col))
            col += k - start
            continue
        if ch in _IDENT_START:
            start = k
            while k < n and text[k] in _IDENT_CONT:
                k += 1
            word = text[start:k]
            tokens.append(_Token("i" if word == "i" else "ident", word, line, col))
            col += k - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, varnames):
        self.tokens = tokens
        self.pos = 0
        self.varnames = list(varnames)
        self.nvars = len(varnames)
        self.index = {name: k for k, name in enumerate(varnames)}

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.col,
            )
        return tok

    def expression(self):
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            rhs = self.term()
            acc = acc + rhs if op.kind == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek().kind == "*":
            self.next()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.base()
        if self.peek().kind == "^":
            self.next()
            tok = self.expect("int")
            power = int(tok.text)
            if power < 1:
                raise ParseError("exponent must be a positive integer", tok.line, tok.col)
            return base**power
        return base

    def base(self):
        tok = self.next()
        if tok.kind == "ident":
            if tok.text not in self.index:
                raise UnknownVariableError(
                    f"unknown variable {tok.text!r}", tok.line, tok.col
                )
            return Polynomial.variable(self.nvars, self.index[tok.text])
        if tok.kind == "int":
            return Polynomial.constant(self.nvars, int(tok.text))
        if tok.kind == "i":
            return Polynomial.constant(self.nvars, I)
        if tok.kind == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(
            f"expected a variable, integer, 'i' or '(', found "
            f"{tok.text or 'end of input'!r}",
            tok.line,
            tok.col,
        )


def validate_varnames(varnames):
    if not varnames:
        raise ValueError("at least one variable is required")
    seen = set()
    for name in varnames:
        if not name or name[0] not in _IDENT_START or any(
            c not in _IDENT_CONT for c in name
        ):
            raise ValueError(f"invalid variable name {name!r}")
        if name == "i":
            raise ValueError("'i' is the imaginary unit and cannot be a variable")
        if name in seen:
            raise ValueError(f"duplicate variable name {name!r}")
        seen.add(name)


def parse_polynomial(varnames, text):
    validate_varnames(varnames)
    parser = _Parser(_tokenize(text), varnames)
    poly = parser.expression()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return poly


def parse_map_germ(varnames, f_text, g_text):
    """Parse the two components and build the map germ.

    Raises NotAGermError when a component has a nonzero constant term and
    ValueError when both components are zero.
    """
    f = parse_polynomial(varnames, f_text)
    g = parse_polynomial(varnames, g_text)
    try:
        return MapGerm(f, g)
    except NotAGermError as exc:
        raise NotAGermError(f"{exc}: not a germ through the origin") from None


# ---------------------------------------------------------------------------
# canonical text
# ---------------------------------------------------------------------------


def _frac_text(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _abs_coeff_text(c):
    """Text of a display-positive coefficient, parenthesized when composite."""
    re, im = c.re, c.im
    if not im:
        t = _frac_text(re)
        return t if re.denominator == 1 else f"({t})"
    if not re:
        if im == 1:
            return "i"
        t = _frac_text(im)
        return (t if im.denominator == 1 else f"({t})") + "*i"
    sign = "+" if im > 0 else "-"
    ia = abs(im)
    if ia == 1:
        im_t = "i"
    elif ia.denominator == 1:
        im_t = f"{_frac_text(ia)}*i"
    else:
        im_t = f"({_frac_text(ia)})*i"
    return f"({_frac_text(re)}{sign}{im_t})"


def _display_negative(c):
    return c.re < 0 or (not c.re and c.im < 0)


def format_polynomial(poly, varnames):
    """Canonical text: terms in canonical order, exact coefficients.

    A leading display-negative term is emitted as ``0-...`` so that the
    output stays inside the input grammar (which has no unary minus).
    """
    if poly.is_zero():
        return "0"
    if len(varnames) != poly.nvars:
        raise ValueError("variable name count does not match the polynomial")
    parts = []
    for idx, (m, c) in enumerate(poly.terms):
        neg = _display_negative(c)
        cc = -c if neg else c
        mono = "*".join(
            f"{name}^{e}" if e > 1 else name
            for name, e in zip(varnames, m)
            if e
        )
        if mono and cc.is_one():
            body = mono
        elif mono:
            body = f"{_abs_coeff_text(cc)}*{mono}"
        else:
            body = _abs_coeff_text(cc)
        if idx == 0:
            parts.append(f"0-{body}" if neg else body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


TARGET_VARS = ("u", "v")


def format_target_polynomial(poly):
    return format_polynomial(poly, TARGET_VARS)
