"""Text grammar and JSON form for expressions.

Examples of accepted input::

    2*S[1,1](N) - S[2](N)
    S[(1,1/2),(2,1)](N)
    CS[{2,1,2,-1}](N)
    H[0,1,-1](x) - z3
    1/2*S[1](N)^2 + li4half*ln2
    z[2,1] + H[(4,1),(0,0)](x)
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ParseError, SemanticError
from .expr import CSum, Const, Expr, HSum, HWord, SSum, letter_str

# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------


def _q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_atom(a) -> str:
    if isinstance(a, HSum):
        return f"S[{','.join(map(str, a.index))}]({a.bound})"
    if isinstance(a, SSum):
        body = ",".join(f"({e},{_q(x)})" for e, x in zip(a.exps, a.weights))
        return f"S[{body}]({a.bound})"
    if isinstance(a, CSum):
        body = ",".join(f"{{{t[0]},{t[1]},{t[2]},{_q(s)}}}" for t, s in zip(a.triples, a.signs))
        return f"CS[{body}]({a.bound})"
    if isinstance(a, HWord):
        return f"H[{','.join(letter_str(l) for l in a.letters)}]({a.arg})"
    if isinstance(a, Const):
        if a.name == "z":
            return f"z{a.key[0]}" if len(a.key) == 1 else f"z[{','.join(map(str, a.key))}]"
        if a.name == "li":
            return f"li{a.key[0]}half"
        return a.name
    raise TypeError(a)


def format_monomial(mon) -> str:
    parts = []
    i = 0
    while i < len(mon):
        j = i
        while j < len(mon) and mon[j] == mon[i]:
            j += 1
        s = format_atom(mon[i])
        parts.append(s if j - i == 1 else f"{s}^{j - i}")
        i = j
    return "*".join(parts)


def format_expr(e: Expr) -> str:
    if not e:
        return "0"
    out = []
    for k, (mon, c) in enumerate(e.items()):
        neg = c < 0
        a = -c if neg else c
        if not mon:
            body = _q(a)
        elif a == 1:
            body = format_monomial(mon)
        else:
            body = f"{_q(a)}*{format_monomial(mon)}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\]{},]))"
)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.toks.append(("end", "", n))
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, val):
        t = self.next()
        if t[1] != val or t[0] == "end":
            raise ParseError(f"expected {val!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def accept(self, val):
        if self.peek()[1] == val and self.peek()[0] != "end":
            return self.next()
        return None


def _int(lx, signed=True) -> int:
    sign = 1
    if signed:
        if lx.accept("-"):
            sign = -1
        else:
            lx.accept("+")
    t = lx.next()
    if t[0] != "int":
        raise ParseError(f"expected an integer, found {t[1] or 'end of input'!r}", t[2], lx.text)
    return sign * int(t[1])


def _rational(lx) -> Fraction:
    start = lx.peek()
    num = _int(lx)
    if lx.accept("/"):
        den = _int(lx, signed=False)
        if den == 0:
            raise SemanticError("zero denominator", start[2], lx.text)
        return Fraction(num, den)
    return Fraction(num)


def _bound(lx) -> str:
    """Upper bound / argument text between parentheses: N, 2N, inf, x, 1, 1/2."""
    lx.expect("(")
    start = lx.peek()
    pieces = []
    while lx.peek()[1] != ")":
        t = lx.next()
        if t[0] == "end":
            raise ParseError("unterminated argument", t[2], lx.text)
        pieces.append(t[1])
    lx.expect(")")
    s = "".join(pieces)
    if not s:
        raise ParseError("empty argument", start[2], lx.text)
    return s


def _guard(lx, tok, fn):
    try:
        return fn()
    except SemanticError as exc:
        if exc.position is None:
            raise SemanticError(str(exc), tok[2], lx.text) from None
        raise


def _parse_S(lx, tok):
    lx.expect("[")
    if lx.accept("]"):
        _bound(lx)
        return Expr.const(1)
    if lx.peek()[1] == "(":
        exps, ws = [], []
        while True:
            lx.expect("(")
            exps.append(_int(lx))
            lx.expect(",")
            ws.append(_rational(lx))
            lx.expect(")")
            if not lx.accept(","):
                break
        lx.expect("]")
        b = _bound(lx)
        return Expr.atom(_guard(lx, tok, lambda: SSum(tuple(exps), tuple(ws), b)))
    idx = [_int(lx)]
    while lx.accept(","):
        idx.append(_int(lx))
    lx.expect("]")
    b = _bound(lx)
    return Expr.atom(_guard(lx, tok, lambda: HSum(tuple(idx), b)))


def _parse_CS(lx, tok):
    lx.expect("[")
    if lx.accept("]"):
        _bound(lx)
        return Expr.const(1)
    triples, signs = [], []
    while True:
        lx.expect("{")
        a = _int(lx)
        lx.expect(",")
        b = _int(lx)
        lx.expect(",")
        c = _int(lx)
        lx.expect(",")
        signs.append(_rational(lx))
        lx.expect("}")
        triples.append((a, b, c))
        if not lx.accept(","):
            break
    lx.expect("]")
    bd = _bound(lx)
    return Expr.atom(_guard(lx, tok, lambda: CSum(tuple(triples), tuple(signs), bd)))


def _parse_H(lx, tok):
    lx.expect("[")
    if lx.accept("]"):
        _bound(lx)
        return Expr.const(1)
    letters = []
    while True:
        if lx.accept("("):
            k = _int(lx)
            lx.expect(",")
            l = _int(lx)
            lx.expect(")")
            letters.append((k, l))
        else:
            letters.append(_rational(lx))
        if not lx.accept(","):
            break
    lx.expect("]")
    arg = _bound(lx)
    return Expr.atom(_guard(lx, tok, lambda: HWord(tuple(letters), arg)))


_LI = re.compile(r"^li(\d+)half$")
_Z = re.compile(r"^z(\d+)$")
_NAMED = {"ln2": "ln2", "catalan": "catalan", "sigma0": "sigma0", "pi": "pi"}


def _primary(lx) -> Expr:
    tok = lx.peek()
    kind, val, _ = tok
    if kind == "int":
        lx.next()
        return Expr.const(int(val))
    if val == "(":
        lx.next()
        e = _expr(lx)
        lx.expect(")")
        return e
    if kind != "ident":
        raise lx.fail(f"unexpected {val or 'end of input'!r}")
    lx.next()
    if val == "S":
        return _parse_S(lx, tok)
    if val == "CS":
        return _parse_CS(lx, tok)
    if val == "H":
        return _parse_H(lx, tok)
    if val == "z" and lx.peek()[1] == "[":
        lx.next()
        key = [_int(lx)]
        while lx.accept(","):
            key.append(_int(lx))
        lx.expect("]")
        return Expr.atom(_guard(lx, tok, lambda: Const("z", tuple(key))))
    m = _Z.match(val)
    if m:
        return Expr.atom(_guard(lx, tok, lambda: Const("z", (int(m.group(1)),))))
    m = _LI.match(val)
    if m:
        return Expr.atom(_guard(lx, tok, lambda: Const("li", (int(m.group(1)),))))
    if val in _NAMED:
        return Expr.atom(Const(_NAMED[val]))
    raise ParseError(f"unknown symbol {val!r}", tok[2], lx.text)


def _factor(lx) -> Expr:
    base = _primary(lx)
    if lx.accept("^"):
        n = _int(lx, signed=False)
        return base**n
    return base


def _term(lx) -> Expr:
    e = _factor(lx)
    while True:
        if lx.accept("*"):
            e = e * _factor(lx)
        elif lx.peek()[1] == "/" and lx.peek()[0] == "op":
            tok = lx.next()
            d = _factor(lx)
            if not d.is_linear() or any(m for m in d) or not d:
                raise SemanticError("division only by a nonzero rational number", tok[2], lx.text)
            e = e / d.coeff(())
        else:
            return e


def _expr(lx) -> Expr:
    sign = 1
    if lx.accept("-"):
        sign = -1
    else:
        lx.accept("+")
    e = _term(lx) * sign
    while True:
        if lx.accept("+"):
            e = e + _term(lx)
        elif lx.accept("-"):
            e = e - _term(lx)
        else:
            return e


def parse(text: str) -> Expr:
    """Parse grammar text into a canonical :class:`Expr`."""
    lx = _Lexer(text)
    if lx.peek()[0] == "end":
        raise ParseError("empty expression", 0, text)
    e = _expr(lx)
    t = lx.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2], text)
    return e


def parse_atom(text: str):
    """Parse text that must denote a single atom with coefficient 1."""
    e = parse(text)
    items = list(e.items())
    if len(items) != 1 or len(items[0][0]) != 1 or items[0][1] != 1:
        raise SemanticError(f"expected a single term, got {text!r}")
    return items[0][0][0]


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def to_json_obj(e: Expr) -> list:
    return [
        {
            "term": format_monomial(mon) if mon else "1",
            "coeff": {"num": c.numerator, "den": c.denominator},
        }
        for mon, c in e.items()
    ]


def to_json(e: Expr, **kw) -> str:
    return json.dumps(to_json_obj(e), **kw)


def from_json_obj(obj) -> Expr:
    if not isinstance(obj, list):
        raise ParseError("JSON expression must be an array")
    out = Expr()
    for item in obj:
        try:
            term = item["term"]
            num, den = int(item["coeff"]["num"]), int(item["coeff"]["den"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed JSON term: {item!r}") from exc
        if den <= 0:
            raise SemanticError(f"non-positive denominator in {item!r}")
        out = out + parse(term) * Fraction(num, den)
    return out


def from_json(text: str) -> Expr:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, text) from None
    return from_json_obj(obj)
