"""Session scripts: a small line-oriented language for fields, rings, ideals, maps and commands.

    field 70001
    ring P2 = [x0, x1, x2]
    ideal B in P2 = x0*x1, x0*x2, x1*x2
    map s : P2 -> P2 = [x1*x2, x0*x2, x0*x1]
    compute degrees s

A statement ends at a newline unless a bracket is open or the line ends
with a comma or a binary operator.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import (
    FieldRedeclared,
    NonHomogeneousGenerator,
    ScriptSyntaxError,
    UndefinedIdentifier,
)
from .field import FieldSpec, is_prime
from .groebner import Ideal
from .polynomial import Polynomial, PolynomialRing, format_monomial

COMMANDS = {
    # name: argument kinds
    "degrees": ("map",),
    "degree": ("map",),
    "birational": ("map",),
    "dominant": ("map",),
    "image": ("map",),
    "kernel": ("map", "int"),
    "inverse": ("map",),
    "approxinverse": ("map",),
    "preimage": ("map", "ideal"),
    "segre": ("ideal",),
    "dims": ("ideal",),
}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)|(?P<arrow>->)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/^()\[\],:=])|(?P<bad>.)"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[List[Token]]:
    """Split into statements (lists of tokens)."""
    statements: List[List[Token]] = []
    cur: List[Token] = []
    opened: List[Token] = []
    line, line_start = 1, 0
    for mo in _TOKEN.finditer(text):
        kind = mo.lastgroup
        col = mo.start() - line_start + 1
        if kind == "nl":
            continues = bool(opened) or (cur and cur[-1].text in {",", "+", "-", "*", "/", "^", "=", "->"})
            if not continues and cur:
                statements.append(cur)
                cur = []
            line += 1
            line_start = mo.end()
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "bad":
            raise ScriptSyntaxError(f"unexpected character {mo.group()!r}", line, col)
        tok = Token(kind, mo.group(), line, col)
        if tok.text in "([":
            opened.append(tok)
        elif tok.text in ")]":
            if not opened or opened.pop().text != "(["[")]".index(tok.text)]:
                raise ScriptSyntaxError(f"unbalanced {tok.text!r}", line, col)
        cur.append(tok)
    if opened:
        t = opened[-1]
        raise ScriptSyntaxError(f"{t.text!r} is never closed", t.line, t.col)
    if cur:
        statements.append(cur)
    return statements


# statements ------------------------------------------------------------------

@dataclass
class MapSpec:
    name: str
    source: str
    source_ideal: Optional[str]
    target: str
    target_ideal: Optional[str]
    forms: Optional[List[Polynomial]]
    line: int
    # for maps produced by `inverse`/`approxinverse`: the command that fills them in
    derived_from: Optional[str] = None


@dataclass
class Command:
    name: str
    args: List[str]
    line: int
    in_ideal: Optional[str] = None

    def echo(self) -> str:
        words = [self.name] + self.args
        if self.in_ideal:
            words += ["in", self.in_ideal]
        return " ".join(words)


@dataclass
class SessionScript:
    field: FieldSpec
    rings: Dict[str, PolynomialRing] = field(default_factory=dict)
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    maps: Dict[str, MapSpec] = field(default_factory=dict)
    commands: List[Command] = field(default_factory=list)
    # statement kinds in order, for reporting
    statements: List[Tuple[str, str]] = field(default_factory=list)


class _Cursor:
    def __init__(self, toks: List[Token]):
        self.toks = toks
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what: str = "token") -> Token:
        t = self.peek()
        if t is None:
            last = self.toks[-1]
            raise ScriptSyntaxError(f"expected {what} at end of statement", last.line, last.col + len(last.text))
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next(repr(text))
        if t.text != text:
            raise ScriptSyntaxError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def name(self, what: str = "a name") -> Token:
        t = self.next(what)
        if t.kind != "name":
            raise ScriptSyntaxError(f"expected {what}, found {t.text!r}", t.line, t.col)
        return t

    def accept(self, text: str) -> bool:
        t = self.peek()
        if t is not None and t.text == text:
            self.i += 1
            return True
        return False

    def done(self) -> None:
        t = self.peek()
        if t is not None:
            raise ScriptSyntaxError(f"unexpected {t.text!r}", t.line, t.col)


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
    factor := ('-'|'+') factor | atom ('^' int)?; atom := int | variable | '(' expr ')'."""

    def __init__(self, cur: _Cursor, ring: PolynomialRing):
        self.cur = cur
        self.ring = ring

    def expr(self) -> Polynomial:
        val = self.term()
        while True:
            t = self.cur.peek()
            if t is None or t.text not in "+-" or t.kind != "op":
                return val
            self.cur.next()
            rhs = self.term()
            val = val + rhs if t.text == "+" else val - rhs

    def term(self) -> Polynomial:
        val = self.factor()
        while True:
            t = self.cur.peek()
            if t is None:
                return val
            if t.kind in ("int", "name") or t.text == "(":
                raise ScriptSyntaxError("implicit multiplication is not allowed; use '*'", t.line, t.col)
            if t.text not in "*/" or t.kind != "op":
                return val
            self.cur.next()
            rhs = self.factor()
            if t.text == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ScriptSyntaxError("division only by a nonzero constant", t.line, t.col)
                field = self.ring.field
                c = next(iter(rhs.terms.values()))
                val = val.scale(field.inv(c))

    def factor(self) -> Polynomial:
        t = self.cur.peek()
        if t is not None and t.kind == "op" and t.text in "+-":
            self.cur.next()
            val = self.factor()
            return -val if t.text == "-" else val
        base = self.atom()
        if self.cur.accept("^"):
            e = self.cur.next("an exponent")
            if e.kind != "int":
                raise ScriptSyntaxError("exponent must be a non-negative integer", e.line, e.col)
            base = base ** int(e.text)
        return base

    def atom(self) -> Polynomial:
        t = self.cur.next("an expression")
        if t.kind == "int":
            return self.ring.constant(int(t.text))
        if t.kind == "name":
            if t.text not in self.ring.names:
                raise UndefinedIdentifier(f"{t.text!r} is not a variable of this ring", t.line, t.col)
            return self.ring.var(t.text)
        if t.text == "(":
            val = self.expr()
            self.cur.expect(")")
            return val
        raise ScriptSyntaxError(f"unexpected {t.text!r} in expression", t.line, t.col)


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse one polynomial expression in ``ring``."""
    stmts = tokenize(text)
    toks = [t for s in stmts for t in s]
    if not toks:
        raise ScriptSyntaxError("empty expression", 1, 1)
    cur = _Cursor(toks)
    val = _ExprParser(cur, ring).expr()
    cur.done()
    return val


def parse_polynomial_list(text: str, ring: PolynomialRing) -> List[Polynomial]:
    """Parse ``f1, f2, ...`` (optionally wrapped in ``ideal (...)`` or ``[...]``)."""
    s = text.strip()
    if s.startswith("ideal"):
        s = s[len("ideal"):].strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ScriptSyntaxError("expected 'ideal (...)'", 1, 1)
        s = s[1:-1]
    elif s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    toks = [t for st in tokenize(s) for t in st]
    cur = _Cursor(toks)
    out = []
    if not toks:
        return out
    while True:
        out.append(_ExprParser(cur, ring).expr())
        if not cur.accept(","):
            break
    cur.done()
    return [f for f in out if not f.is_zero()]


def _check_homogeneous(f: Polynomial, tok: Token) -> None:
    if f.is_homogeneous():
        return
    by_degree = {}
    for m in f.terms:
        by_degree.setdefault(sum(m), m)
    (d1, m1), (d2, m2) = sorted(by_degree.items())[:2]
    names = f.ring.names
    raise NonHomogeneousGenerator(
        f"generator is not homogeneous: {format_monomial(names, m1)} has degree {d1}, "
        f"{format_monomial(names, m2)} has degree {d2}",
        tok.line,
        tok.col,
    )


def parse_script(text: str) -> SessionScript:
    script: Optional[SessionScript] = None
    for toks in tokenize(text):
        cur = _Cursor(toks)
        head = cur.next()
        kw = head.text
        if script is None and kw != "field":
            raise ScriptSyntaxError("the first statement must be a field declaration", head.line, head.col)
        if kw == "field":
            if script is not None:
                raise FieldRedeclared("a script declares exactly one field", head.line, head.col)
            script = SessionScript(_parse_field(cur))
            script.statements.append(("field", str(script.field)))
        elif kw == "ring":
            _parse_ring(cur, script)
        elif kw == "ideal":
            _parse_ideal(cur, script)
        elif kw == "map":
            _parse_map(cur, script, head)
        elif kw == "compute":
            _parse_command(cur, script)
        else:
            raise ScriptSyntaxError(f"unknown statement {kw!r}", head.line, head.col)
        cur.done()
    if script is None:
        raise ScriptSyntaxError("empty script: a field declaration is required", 1, 1)
    return script


def _parse_field(cur: _Cursor) -> FieldSpec:
    t = cur.next("a prime or QQ")
    if t.kind == "name" and t.text == "QQ":
        return FieldSpec(0)
    if t.kind != "int":
        raise ScriptSyntaxError(f"expected a prime or QQ, found {t.text!r}", t.line, t.col)
    p = int(t.text)
    if not is_prime(p):
        raise ScriptSyntaxError(f"{p} is not prime", t.line, t.col)
    return FieldSpec(p)


def _parse_ring(cur: _Cursor, script: SessionScript) -> None:
    name = cur.name("a ring name")
    cur.expect("=")
    cur.expect("[")
    names: List[str] = []
    while True:
        v = cur.name("a variable name")
        if v.text in names:
            raise ScriptSyntaxError(f"variable {v.text!r} repeated in ring {name.text}", v.line, v.col)
        names.append(v.text)
        if cur.accept("]"):
            break
        cur.expect(",")
    script.rings[name.text] = PolynomialRing(script.field, names)
    script.statements.append(("ring", name.text))


def _ring(script: SessionScript, tok: Token) -> PolynomialRing:
    if tok.text not in script.rings:
        raise UndefinedIdentifier(f"ring {tok.text!r} is not defined", tok.line, tok.col)
    return script.rings[tok.text]


def _parse_ideal(cur: _Cursor, script: SessionScript) -> None:
    name = cur.name("an ideal name")
    kw = cur.name("'in'")
    if kw.text != "in":
        raise ScriptSyntaxError(f"expected 'in', found {kw.text!r}", kw.line, kw.col)
    ring = _ring(script, cur.name("a ring name"))
    cur.expect("=")
    gens = []
    while True:
        start = cur.peek()
        f = _ExprParser(cur, ring).expr()
        _check_homogeneous(f, start)
        gens.append(f)
        if not cur.accept(","):
            break
    script.ideals[name.text] = Ideal(ring, gens)
    script.statements.append(("ideal", name.text))


def _ring_with_ideal(cur: _Cursor, script: SessionScript) -> Tuple[str, Optional[str]]:
    rt = cur.name("a ring name")
    _ring(script, rt)
    ideal = None
    if cur.accept("/"):
        it = cur.name("an ideal name")
        if it.text not in script.ideals:
            raise UndefinedIdentifier(f"ideal {it.text!r} is not defined", it.line, it.col)
        if script.ideals[it.text].ring != script.rings[rt.text]:
            raise ScriptSyntaxError(f"ideal {it.text} does not live in ring {rt.text}", it.line, it.col)
        ideal = it.text
    return rt.text, ideal


def _parse_map(cur: _Cursor, script: SessionScript, head: Token) -> None:
    name = cur.name("a map name")
    cur.expect(":")
    src, src_ideal = _ring_with_ideal(cur, script)
    cur.expect("->")
    tgt, tgt_ideal = _ring_with_ideal(cur, script)
    cur.expect("=")
    cur.expect("[")
    ring = script.rings[src]
    forms = []
    while True:
        start = cur.peek()
        f = _ExprParser(cur, ring).expr()
        _check_homogeneous(f, start)
        forms.append(f)
        if cur.accept("]"):
            break
        cur.expect(",")
    script.maps[name.text] = MapSpec(name.text, src, src_ideal, tgt, tgt_ideal, forms, head.line)
    script.statements.append(("map", name.text))


def _parse_command(cur: _Cursor, script: SessionScript) -> None:
    t = cur.name("a command")
    if t.text not in COMMANDS:
        raise ScriptSyntaxError(f"unknown command {t.text!r}", t.line, t.col)
    args = []
    for kind in COMMANDS[t.text]:
        a = cur.next(f"a {kind} argument")
        if kind == "int":
            if a.kind != "int":
                raise ScriptSyntaxError(f"expected an integer, found {a.text!r}", a.line, a.col)
        elif kind == "map":
            if a.text not in script.maps:
                raise UndefinedIdentifier(f"map {a.text!r} is not defined", a.line, a.col)
        elif kind == "ideal":
            if a.text not in script.ideals:
                raise UndefinedIdentifier(f"ideal {a.text!r} is not defined", a.line, a.col)
        args.append(a.text)
    in_ideal = None
    if t.text == "segre" and cur.peek() is not None:
        kw = cur.name("'in'")
        if kw.text != "in":
            raise ScriptSyntaxError(f"expected 'in', found {kw.text!r}", kw.line, kw.col)
        it = cur.name("an ideal name")
        if it.text not in script.ideals:
            raise UndefinedIdentifier(f"ideal {it.text!r} is not defined", it.line, it.col)
        in_ideal = it.text
    script.commands.append(Command(t.text, args, t.line, in_ideal))
    if t.text in ("inverse", "approxinverse"):
        # the result becomes available to later commands as <map>_inv
        src = script.maps[args[0]]
        inv = f"{args[0]}_inv"
        script.maps[inv] = MapSpec(inv, src.target, src.target_ideal, src.source, src.source_ideal,
                                   None, t.line, derived_from=args[0])
    script.statements.append(("compute", t.text))
