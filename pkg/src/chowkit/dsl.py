"""A small language for bundle expressions on P^n.

Grammar::

    expr   := term ('+' term)*
    term   := factor ('^' UINT)?
    factor := 'O' ('(' INT ')')?
            | 'T(-1)'
            | 'Omega(' UINT ',' INT ')'
            | ('wedge' | 'sym' | 'hom') '(' UINT ',' expr ')'
            | 'dual' '(' expr ')'
            | 'twist' '(' expr ',' INT ')'
            | '(' expr ')'

Whitespace is ignored.  ``hom(m, e)`` is Hom(O^m, e), the same bundle as ``e^m``.
The ambient dimension is not part of the expression; it is supplied to
:func:`elaborate`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import chow_core as cc
from .errors import ParseError

# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    d: int = 0


@dataclass(frozen=True)
class TangentTwist:
    pass


@dataclass(frozen=True)
class Omega:
    p: int
    t: int


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Power:
    base: object
    m: int


@dataclass(frozen=True)
class Wedge:
    k: int
    arg: object


@dataclass(frozen=True)
class Sym:
    k: int
    arg: object


@dataclass(frozen=True)
class Hom:
    m: int
    arg: object


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Twist:
    arg: object
    d: int


# --- lexer -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z]+)|(?P<punct>[()+^,\-]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "ident", "punct", "eof"
    text: str
    offset: int


def _tokenize(src: str) -> list:
    toks = []
    pos = 0
    raw = src.encode()
    while True:
        m = _TOKEN.match(src, pos)
        if not m:
            rest = src[pos:]
            if rest.strip() == "":
                break
            off = len(src[: pos + (len(rest) - len(rest.lstrip()))].encode())
            bad = rest.lstrip()[0]
            raise ParseError(off, {"token"}, bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), len(src[:start].encode())))
        pos = m.end()
    toks.append(_Tok("eof", "", len(raw)))
    return toks


# --- parser ----------------------------------------------------------------

_FACTOR_START = {"'O'", "'T'", "'Omega'", "'wedge'", "'sym'", "'hom'", "'dual'", "'twist'", "'('"}


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        raise ParseError(self.tok.offset, expected, self.tok.text)

    def eat(self, text: str):
        if self.tok.text != text or self.tok.kind == "eof":
            self.fail({f"'{text}'"})
        self.i += 1

    def uint(self) -> int:
        if self.tok.kind != "int":
            self.fail({"UINT"})
        v = int(self.tok.text)
        self.i += 1
        return v

    def int_(self) -> int:
        if self.tok.text == "-":
            self.i += 1
            if self.tok.kind != "int":
                self.fail({"UINT"})
            v = -int(self.tok.text)
        elif self.tok.kind == "int":
            v = int(self.tok.text)
        else:
            self.fail({"INT"})
        self.i += 1
        return v

    def parse(self):
        e = self.expr()
        if self.tok.kind != "eof":
            self.fail({"'+'", "'^'", "end of input"})
        return e

    def expr(self):
        terms = [self.term()]
        while self.tok.text == "+":
            self.i += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        f = self.factor()
        if self.tok.text == "^":
            self.i += 1
            return Power(f, self.uint())
        return f

    def factor(self):
        t = self.tok
        if t.kind == "ident":
            name = t.text
            if name == "O":
                self.i += 1
                if self.tok.text == "(":
                    self.i += 1
                    d = self.int_()
                    self.eat(")")
                    return Line(d)
                return Line(0)
            if name == "T":
                self.i += 1
                self.eat("(")
                start = self.tok
                if self.int_() != -1:
                    raise ParseError(start.offset, {"'-1'"}, start.text)
                self.eat(")")
                return TangentTwist()
            if name == "Omega":
                self.i += 1
                self.eat("(")
                p = self.uint()
                self.eat(",")
                tw = self.int_()
                self.eat(")")
                return Omega(p, tw)
            if name in ("wedge", "sym", "hom"):
                self.i += 1
                self.eat("(")
                k = self.uint()
                self.eat(",")
                arg = self.expr()
                self.eat(")")
                return {"wedge": Wedge, "sym": Sym, "hom": Hom}[name](k, arg)
            if name == "dual":
                self.i += 1
                self.eat("(")
                arg = self.expr()
                self.eat(")")
                return Dual(arg)
            if name == "twist":
                self.i += 1
                self.eat("(")
                arg = self.expr()
                self.eat(",")
                d = self.int_()
                self.eat(")")
                return Twist(arg, d)
        if t.text == "(":
            self.i += 1
            e = self.expr()
            self.eat(")")
            return e
        self.fail(_FACTOR_START)


def parse(src: str):
    """Parse a bundle expression; raises :class:`ParseError` with a byte offset."""
    return _Parser(src).parse()


def unparse(e) -> str:
    """Canonical source text; ``parse(unparse(e)) == e``."""
    if isinstance(e, Line):
        return "O" if e.d == 0 else f"O({e.d})"
    if isinstance(e, TangentTwist):
        return "T(-1)"
    if isinstance(e, Omega):
        return f"Omega({e.p}, {e.t})"
    if isinstance(e, Sum):
        return " + ".join(f"({unparse(t)})" if isinstance(t, Sum) else unparse(t) for t in e.terms)
    if isinstance(e, Power):
        inner = unparse(e.base)
        if isinstance(e.base, (Sum, Power)):
            inner = f"({inner})"
        return f"{inner}^{e.m}"
    if isinstance(e, Wedge):
        return f"wedge({e.k}, {unparse(e.arg)})"
    if isinstance(e, Sym):
        return f"sym({e.k}, {unparse(e.arg)})"
    if isinstance(e, Hom):
        return f"hom({e.m}, {unparse(e.arg)})"
    if isinstance(e, Dual):
        return f"dual({unparse(e.arg)})"
    if isinstance(e, Twist):
        return f"twist({unparse(e.arg)}, {e.d})"
    raise TypeError(f"not a bundle expression: {e!r}")


def _repeat(b: cc.BundleClass, m: int) -> cc.BundleClass:
    out = cc.trivial_bundle(b.n, 0)
    for _ in range(m):
        out = cc.direct_sum(out, b)
    return out


def elaborate(e, n: int) -> cc.BundleClass:
    """Evaluate an expression to a bundle class on P^n."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Line):
        return cc.line_bundle(n, e.d)
    if isinstance(e, TangentTwist):
        return cc.tangent_twist(n)
    if isinstance(e, Omega):
        return cc.form_bundle(n, e.p, e.t)
    if isinstance(e, Sum):
        out = elaborate(e.terms[0], n)
        for t in e.terms[1:]:
            out = cc.direct_sum(out, elaborate(t, n))
        return out
    if isinstance(e, (Power, Hom)):
        base, m = (e.base, e.m) if isinstance(e, Power) else (e.arg, e.m)
        return _repeat(elaborate(base, n), m)
    if isinstance(e, Wedge):
        return cc.exterior_power(e.k, elaborate(e.arg, n))
    if isinstance(e, Sym):
        return cc.symmetric_power(e.k, elaborate(e.arg, n))
    if isinstance(e, Dual):
        return cc.dual(elaborate(e.arg, n))
    if isinstance(e, Twist):
        return cc.twist(elaborate(e.arg, n), e.d)
    raise TypeError(f"not a bundle expression: {e!r}")
