"""
Reader and canonical writer for ``.nla`` structure-equation files.

A file lists d of each holomorphic generator as a combination of wedges::

    algebra "example"
    n = 3
    d w1 = 0
    d w2 = w1 ^ c(w1)
    d w3 = i*w2^c(w1) - i*w1^c(w2)

``wK`` is the K-th generator, ``c(wK)`` its conjugate, ``i`` the imaginary
unit, and ``#`` starts a comment.  Wedges distribute over parenthesized
sums such as ``w1 ^ (w2 + c(w2))``.
"""

import re
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, SourceSpan
from .exact import GaussianRational, ONE, ZERO, gq
from .forms import OneForm, TwoForm, wedge

__all__ = ["ParsedPresentation", "parse", "print_canonical", "format_coefficient",
           "format_two_form", "SourceSpan", "ParseError"]


@dataclass(frozen=True)
class ParsedPresentation:
    n: int
    equations: tuple            # ((k, TwoForm), ...) for k = 1..n
    name: Optional[str] = None

    @property
    def d_table(self):
        return tuple(f for _, f in self.equations)

    @classmethod
    def from_table(cls, n, table, name=None):
        return cls(n, tuple((k + 1, f) for k, f in enumerate(table)), name)


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<str>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()=])
""", re.VERBOSE)

_KEYWORDS = {"c", "d", "i", "n", "algebra"}


class _Tok:
    __slots__ = ("kind", "value", "span")

    def __init__(self, kind, value, span):
        self.kind, self.value, self.span = kind, value, span

    def __repr__(self):
        return "%s:%r" % (self.kind, self.value)


def _tokenize(text):
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError("unexpected character %r" % text[pos], SourceSpan(line, col))
        kind = m.lastgroup
        s = m.group()
        span = SourceSpan(line, col, col + len(s))
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            toks.append(_Tok("int", int(s), span))
        elif kind == "str":
            toks.append(_Tok("str", re.sub(r"\\(.)", r"\1", s[1:-1]), span))
        elif kind == "ident":
            if re.fullmatch(r"w\d+", s):
                toks.append(_Tok("gen", int(s[1:]), span))
            elif s in _KEYWORDS:
                toks.append(_Tok(s, s, span))
            else:
                raise ParseError("unknown identifier %r" % s, span)
        elif kind == "op":
            toks.append(_Tok(s, s, span))
        pos = m.end()
    toks.append(_Tok("eof", None, SourceSpan(line, pos - line_start + 1)))
    return toks


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0
        self.n = None

    def peek(self, k=0):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, kind, what=None):
        t = self.next()
        if t.kind != kind:
            raise ParseError("expected %s, found %s" % (what or repr(kind), _describe(t)), t.span)
        return t

    def file(self):
        name = None
        if self.peek().kind == "algebra":
            self.next()
            name = self.expect("str", "quoted algebra name").value
        self.expect("n", "'n = <dimension>'")
        self.expect("=")
        nt = self.expect("int", "dimension")
        if nt.value < 1:
            raise ParseError("dimension must be at least 1", nt.span)
        self.n = n = nt.value
        eqs = {}
        while self.peek().kind != "eof":
            dt = self.expect("d", "'d wK = ...'")
            g = self.expect("gen", "generator wK")
            self.check_index(g)
            if g.value in eqs:
                raise ParseError("duplicate equation for w%d" % g.value, SourceSpan(dt.span.line, dt.span.col, g.span.end_col))
            self.expect("=")
            eqs[g.value] = self.expr()
        missing = [k for k in range(1, n + 1) if k not in eqs]
        if missing:
            raise ParseError("missing equation for " + ", ".join("w%d" % k for k in missing), self.peek().span)
        return ParsedPresentation(n, tuple((k, eqs[k]) for k in range(1, n + 1)), name)

    def check_index(self, t):
        if not 1 <= t.value <= self.n:
            raise ParseError("index %d out of range 1..%d" % (t.value, self.n), t.span)

    def at_expr_end(self):
        return self.peek().kind in ("d", "eof")

    def expr(self):
        total = TwoForm(self.n)
        sign = ONE
        if self.peek().kind in ("+", "-"):
            sign = -ONE if self.next().kind == "-" else ONE
        while True:
            total = total + self.term() * sign
            if self.peek().kind in ("+", "-"):
                sign = -ONE if self.next().kind == "-" else ONE
                continue
            if not self.at_expr_end():
                t = self.peek()
                raise ParseError("unexpected %s" % _describe(t), t.span)
            return total

    def term(self):
        start = self.peek()
        coef = None
        if self.starts_coef():
            coef = self.coef()
            if self.peek().kind == "*":
                self.next()
            elif self.peek().kind in ("+", "-", "d", "eof", ")"):
                if coef:
                    raise ParseError("a bare scalar is not a 2-form", start.span)
                return TwoForm(self.n)
        f1 = self.factor()
        if self.peek().kind != "^":
            raise ParseError("expected '^' in wedge term, found %s" % _describe(self.peek()), self.peek().span)
        self.next()
        f2 = self.factor()
        w = wedge(f1, f2)
        return w * coef if coef is not None else w

    def factor(self):
        t = self.peek()
        if t.kind == "(":
            self.next()
            f = self.lin()
            self.expect(")", "')'")
            return f
        return self.atom()

    def lin(self):
        total = OneForm(self.n)
        sign = ONE
        if self.peek().kind in ("+", "-"):
            sign = -ONE if self.next().kind == "-" else ONE
        while True:
            total = total + self.latom() * sign
            if self.peek().kind in ("+", "-"):
                sign = -ONE if self.next().kind == "-" else ONE
                continue
            return total

    def latom(self):
        start = self.peek()
        coef = ONE
        if self.starts_coef():
            coef = self.coef()
            if self.peek().kind == "*":
                self.next()
            elif self.peek().kind in ("+", "-", ")"):
                if coef:
                    raise ParseError("a bare scalar is not a 1-form", start.span)
                return OneForm(self.n)
        return self.atom() * coef

    def atom(self):
        t = self.next()
        if t.kind == "gen":
            self.check_index(t)
            return OneForm._make(self.n, {t.value - 1: ONE})
        if t.kind == "c":
            self.expect("(", "'(' after c")
            g = self.expect("gen", "generator wK")
            self.check_index(g)
            self.expect(")", "')'")
            return OneForm._make(self.n, {self.n + g.value - 1: ONE})
        raise ParseError("expected wK or c(wK), found %s" % _describe(t), t.span)

    # coefficients --------------------------------------------------------
    def starts_coef(self):
        t = self.peek()
        if t.kind in ("int", "i"):
            return True
        if t.kind == "(":
            # a parenthesized group is a coefficient iff it holds only numbers
            depth, k = 0, 0
            while True:
                u = self.peek(k)
                if u.kind == "(":
                    depth += 1
                elif u.kind == ")":
                    depth -= 1
                    if depth == 0:
                        return k > 1
                elif u.kind not in ("int", "i", "/", "*", "+", "-"):
                    return False
                k += 1
        return False

    def rat(self):
        t = self.expect("int", "number")
        num = t.value
        if self.peek().kind == "/":
            self.next()
            d = self.expect("int", "denominator")
            if d.value == 0:
                raise ParseError("zero denominator", d.span)
            return gq(GaussianRational(_frac(num, d.value)))
        return gq(num)

    def imag_suffix(self, x):
        if self.peek().kind == "i":
            self.next()
            return x * GaussianRational(0, 1)
        if self.peek().kind == "*" and self.peek(1).kind == "i":
            self.next()
            self.next()
            return x * GaussianRational(0, 1)
        return x

    def simple_coef(self):
        if self.peek().kind == "i":
            self.next()
            return GaussianRational(0, 1)
        return self.imag_suffix(self.rat())

    def coef(self):
        if self.peek().kind != "(":
            return self.simple_coef()
        self.next()
        total = ZERO
        sign = ONE
        if self.peek().kind in ("+", "-"):
            sign = -ONE if self.next().kind == "-" else ONE
        while True:
            total = total + sign * self.simple_coef()
            if self.peek().kind in ("+", "-"):
                sign = -ONE if self.next().kind == "-" else ONE
                continue
            self.expect(")", "')' closing coefficient")
            return total


def _frac(a, b):
    from fractions import Fraction
    return Fraction(a, b)


def _describe(t):
    if t.kind == "eof":
        return "end of input"
    if t.kind == "gen":
        return "'w%d'" % t.value
    return repr(str(t.value))


def parse(text):
    """Parse ``.nla`` text into a ParsedPresentation (raises ParseError)."""
    return _Parser(text).file()


# ---------------------------------------------------------------------------
# printer

def _rat(q):
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def format_coefficient(c):
    """Return (sign, body) with body '' for unit coefficients."""
    c = gq(c)
    re_, im = c.re, c.im
    if not im:
        return ("-" if re_ < 0 else "+"), ("" if abs(re_) == 1 else _rat(abs(re_)))
    if not re_:
        mag = abs(im)
        return ("-" if im < 0 else "+"), ("i" if mag == 1 else _rat(mag) + "i")
    mag = abs(im)
    ims = "i" if mag == 1 else _rat(mag) + "i"
    return "+", "(%s%s%s)" % (_rat(re_), "-" if im < 0 else "+", ims)


def _gen_name(a, n):
    return "w%d" % (a + 1) if a < n else "c(w%d)" % (a - n + 1)


def format_two_form(f):
    """Canonical text of a 2-form: terms ordered by their larger generator."""
    if not f.coords:
        return "0"
    out = []
    for key in sorted(f.coords, key=lambda k: (k[1], k[0])):
        sign, body = format_coefficient(f.coords[key])
        mono = _gen_name(key[0], f.n) + "^" + _gen_name(key[1], f.n)
        t = body + "*" + mono if body else mono
        if not out:
            out.append(t if sign == "+" else "-" + t)
        else:
            out.append(sign + " " + t)
    return " ".join(out)


def print_canonical(p, comments=()):
    lines = []
    for c in comments:
        lines.append("# " + c)
    if p.name is not None:
        esc = p.name.replace("\\", "\\\\").replace('"', '\\"')
        lines.append('algebra "%s"' % esc)
    lines.append("n = %d" % p.n)
    for k, f in p.equations:
        lines.append("d w%d = %s" % (k, format_two_form(f)))
    return "\n".join(lines) + "\n"
