"""Statement-level parser for method bodies.

Builds a lightweight statement tree from a body token slice. Expressions are
kept as raw token runs (the usage analyzer walks them); lambda and anonymous
class bodies are treated as part of the enclosing expression.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import Tok
from .structure import _Cursor, ParseError, parse_type_ref, scan_initializer

# Statement kinds that open one nesting level for everything inside them.
CONTROL_KINDS = frozenset("if for while do switch try sync".split())

# Kinds excluded from the statement count.
_UNCOUNTED = frozenset(("block", "empty", "localclass"))


@dataclass
class Stmt:
    kind: str
    line: int
    exprs: list[list[Tok]] = field(default_factory=list)
    decls: list[tuple[str, str]] = field(default_factory=list)  # (type base, name)
    children: list["Stmt"] = field(default_factory=list)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


def parse_body(body: list[Tok]) -> list[Stmt]:
    """Parse a `{ ... }` token slice (braces included) into statements."""
    if not body or body[0].text != "{" or body[-1].text != "}":
        raise ParseError("malformed body", body[0].line if body else 0)
    c = _Cursor(body[1:-1])
    stmts = []
    while not c.at_end():
        stmts.append(_parse_statement(c))
    return stmts


def count_statements(stmts: list[Stmt]) -> int:
    return sum(
        1 for root in stmts for s in root.walk() if s.kind not in _UNCOUNTED
    )


def max_nesting(stmts: list[Stmt]) -> int:
    def depth(s: Stmt, here: int) -> int:
        here += 1 if s.kind in CONTROL_KINDS else 0
        best = here if s.kind in CONTROL_KINDS else 0
        for child in s.children:
            best = max(best, depth(child, here))
        return best

    return max((depth(s, 0) for s in stmts), default=0)


def _parse_statement(c: _Cursor) -> Stmt:
    t = c.peek()
    if t is None:
        raise ParseError("unexpected end of body", 0)
    text = t.text

    if text == ";":
        c.next()
        return Stmt("empty", t.line)
    if text == "{":
        inner = c.toks[c.i + 1 : _matching_brace(c)]
        _consume_balanced(c)
        return Stmt("block", t.line, children=_parse_all(inner))
    if text == "if":
        return _parse_if(c)
    if text == "for":
        return _parse_for(c)
    if text == "while":
        c.next()
        cond = _paren_exprs(c)
        body = _parse_statement(c)
        return Stmt("while", t.line, exprs=[cond], children=[body])
    if text == "do":
        c.next()
        body = _parse_statement(c)
        c.expect("while")
        cond = _paren_exprs(c)
        c.expect(";")
        return Stmt("do", t.line, exprs=[cond], children=[body])
    if text == "switch":
        return _parse_switch(c)
    if text == "try":
        return _parse_try(c)
    if text == "synchronized":
        c.next()
        expr = _paren_exprs(c)
        body = _parse_statement(c)
        return Stmt("sync", t.line, exprs=[expr], children=[body])
    if text == "return":
        c.next()
        expr = _scan_to_semicolon(c)
        return Stmt("return", t.line, exprs=[expr] if expr else [])
    if text == "throw":
        c.next()
        return Stmt("throw", t.line, exprs=[_scan_to_semicolon(c)])
    if text in ("break", "continue"):
        c.next()
        _scan_to_semicolon(c)
        return Stmt(text, t.line)
    if text == "assert":
        c.next()
        return Stmt("assert", t.line, exprs=[_scan_to_semicolon(c)])
    if text == "class":  # local class: structure ignored, lines still count
        depth = 0
        while True:
            tok = c.next()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1
                if depth == 0:
                    return Stmt("localclass", t.line)
    if text == "final" or text == "@":
        return _parse_decl(c, t.line)
    # Label: `name: statement` (but not `case`/ternary, handled above/below).
    if t.kind == "ident" and c.text(1) == ":" and c.text(2) not in (":",):
        c.next()
        c.next()
        return _parse_statement(c)
    decl = _try_parse_decl(c)
    if decl is not None:
        return decl
    return Stmt("expr", t.line, exprs=[_scan_to_semicolon(c)])


def _parse_all(toks: list[Tok]) -> list[Stmt]:
    c = _Cursor(toks)
    out = []
    while not c.at_end():
        out.append(_parse_statement(c))
    return out


def _matching_brace(c: _Cursor) -> int:
    depth = 0
    j = c.i
    while j < len(c.toks):
        txt = c.toks[j].text
        if txt == "{":
            depth += 1
        elif txt == "}":
            depth -= 1
            if depth == 0:
                return j
        j += 1
    raise ParseError("unbalanced braces", c.toks[c.i].line)


def _consume_balanced(c: _Cursor) -> None:
    end = _matching_brace(c)
    c.i = end + 1


def _paren_exprs(c: _Cursor) -> list[Tok]:
    c.expect("(")
    depth = 1
    start = c.i
    while depth:
        t = c.next()
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
    return c.toks[start : c.i - 1]


def _scan_to_semicolon(c: _Cursor) -> list[Tok]:
    start = c.i
    depth = 0
    while True:
        t = c.next()
        if t.text in "({[":
            depth += 1
        elif t.text in ")}]":
            depth -= 1
        elif t.text == ";" and depth == 0:
            return c.toks[start : c.i - 1]


def _parse_if(c: _Cursor) -> Stmt:
    t = c.expect("if")
    cond = _paren_exprs(c)
    then = _parse_statement(c)
    node = Stmt("if", t.line, exprs=[cond], children=[then])
    if c.text() == "else":
        c.next()
        node.children.append(_parse_statement(c))
    return node


def _parse_for(c: _Cursor) -> Stmt:
    t = c.expect("for")
    c.expect("(")
    node = Stmt("for", t.line)
    # Enhanced for: `Type name : expr`.
    save = c.i
    enhanced = False
    if c.text() == "final":
        c.next()
    type_base = parse_type_ref(c)
    if type_base is not None and (tok := c.peek()) and tok.kind == "ident":
        name = tok.text
        if c.text(1) == ":":
            c.next()
            c.next()
            node.decls.append((type_base, name))
            node.exprs.append(_scan_paren_tail(c))
            enhanced = True
    if not enhanced:
        c.i = save
        # Classic for: init ; cond ; update )
        if c.text() == ";":
            c.next()
        else:
            init = _try_parse_decl(c, terminator=";")
            if init is not None:
                node.decls.extend(init.decls)
                node.exprs.extend(init.exprs)
            else:
                node.exprs.append(_scan_to_semicolon(c))
        cond = _scan_to_semicolon(c)
        if cond:
            node.exprs.append(cond)
        tail = _scan_paren_tail(c)
        if tail:
            node.exprs.append(tail)
    node.children.append(_parse_statement(c))
    return node


def _scan_paren_tail(c: _Cursor) -> list[Tok]:
    """Everything up to the ')' that closes the already-open paren."""
    start = c.i
    depth = 1
    while depth:
        t = c.next()
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
    return c.toks[start : c.i - 1]


def _parse_switch(c: _Cursor) -> Stmt:
    t = c.expect("switch")
    selector = _paren_exprs(c)
    node = Stmt("switch", t.line, exprs=[selector])
    c.expect("{")
    while c.text() != "}":
        if c.text() == "case":
            c.next()
            # The label expression runs to ':' (skip ternaries via depth).
            depth = 0
            while True:
                tok = c.next()
                if tok.text in "([{":
                    depth += 1
                elif tok.text in ")]}":
                    depth -= 1
                elif tok.text == "?":
                    depth += 1
                elif tok.text == ":" and depth == 0:
                    break
                elif tok.text == ":" and depth > 0:
                    depth -= 1
            continue
        if c.text() == "default" and c.text(1) == ":":
            c.next()
            c.next()
            continue
        node.children.append(_parse_statement(c))
    c.expect("}")
    return node


def _parse_try(c: _Cursor) -> Stmt:
    t = c.expect("try")
    node = Stmt("try", t.line)
    if c.text() == "(":  # try-with-resources
        c.next()
        while c.text() != ")":
            if c.text() == ";":
                c.next()
                continue
            if c.text() == "final":
                c.next()
            r_type = parse_type_ref(c)
            name_tok = c.next()
            if r_type is not None:
                node.decls.append((r_type, name_tok.text))
            c.expect("=")
            start = c.i
            depth = 0
            while True:
                tok = c.peek()
                if tok is None:
                    raise ParseError("unterminated resource", t.line)
                if depth == 0 and tok.text in (";", ")"):
                    break
                if tok.text in "([{":
                    depth += 1
                elif tok.text in ")]}":
                    depth -= 1
                c.next()
            node.exprs.append(c.toks[start : c.i])
        c.expect(")")
    body = _parse_statement(c)
    node.children.append(body)
    while c.text() == "catch":
        c.next()
        c.expect("(")
        if c.text() == "final":
            c.next()
        p_type = parse_type_ref(c)
        while c.text() == "|":  # multi-catch
            c.next()
            parse_type_ref(c)
        name_tok = c.next()
        if p_type is not None:
            node.decls.append((p_type, name_tok.text))
        c.expect(")")
        node.children.append(_parse_statement(c))
    if c.text() == "finally":
        c.next()
        node.children.append(_parse_statement(c))
    return node


def _try_parse_decl(c: _Cursor, terminator: str = ";") -> Stmt | None:
    """Attempt a local variable declaration; rolls back on failure."""
    save = c.i
    t = c.peek()
    if t is None:
        return None
    line = t.line
    if c.text() == "final" or c.text() == "@":
        return _parse_decl(c, line, terminator)
    type_base = parse_type_ref(c)
    nxt = c.peek()
    if (
        type_base is not None
        and nxt is not None
        and nxt.kind == "ident"
        and c.text(1) in ("=", ";", ",", "[", ":" if terminator == ";" else "=")
    ):
        c.i = save
        return _parse_decl(c, line, terminator)
    c.i = save
    return None


def _parse_decl(c: _Cursor, line: int, terminator: str = ";") -> Stmt:
    if c.text() == "final":
        c.next()
    type_base = parse_type_ref(c)
    if type_base is None:
        raise ParseError("unparseable declaration", line)
    node = Stmt("decl", line)
    while True:
        name_tok = c.next()
        node.decls.append((type_base, name_tok.text))
        while c.text() == "[" and c.text(1) == "]":
            c.next()
            c.next()
        if c.text() == "=":
            c.next()
            node.exprs.append(scan_initializer(c))
        if c.text() == ",":
            c.next()
            continue
        c.expect(terminator)
        return node
