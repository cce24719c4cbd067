"""Structural parser: compilation units, type declarations, members.

This is a tolerant recursive-descent parser for Java 8. It recovers the
structure the metric suite needs (types, supertypes, fields, methods with
their body token slices and line spans) without building full expression
trees; bodies are analyzed separately by the statement parser.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import Tok

MODIFIERS = frozenset(
    """public private protected static final abstract native synchronized
    transient volatile strictfp default""".split()
)


class ParseError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class RawField:
    name: str
    type_name: str  # base simple name of the declared type
    modifiers: frozenset[str]
    line: int


@dataclass
class RawMethod:
    name: str
    is_constructor: bool
    modifiers: frozenset[str]
    return_type: str | None  # base simple name; None for constructors
    params: list[tuple[str, str]]  # (base type name, parameter name)
    body: list[Tok] | None  # tokens including the outer braces; None if abstract
    line_start: int
    line_end: int

    @property
    def signature(self) -> str:
        return f"{self.name}({','.join(t for t, _ in self.params)})"

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass
class RawType:
    kind: str  # class | interface | enum
    name: str
    modifiers: frozenset[str]
    extends: list[str] = field(default_factory=list)
    implements: list[str] = field(default_factory=list)
    fields: list[RawField] = field(default_factory=list)
    methods: list[RawMethod] = field(default_factory=list)
    nested: list["RawType"] = field(default_factory=list)
    line_start: int = 0
    line_end: int = 0


class _Cursor:
    def __init__(self, toks: list[Tok]):
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def text(self, k: int = 0) -> str | None:
        t = self.peek(k)
        return t.text if t else None

    def next(self) -> Tok:
        t = self.peek()
        if t is None:
            last = self.toks[-1].line if self.toks else 0
            raise ParseError("unexpected end of file", last)
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line)
        return t

    def at_end(self) -> bool:
        return self.i >= len(self.toks)


def _angle_delta(text: str) -> int:
    """Net angle-depth change of an operator token ('>>' closes two)."""
    if set(text) == {"<"}:
        return len(text)
    if set(text) == {">"}:
        return -len(text)
    return 0


def skip_angles(c: _Cursor) -> None:
    """Skip a balanced generic argument/parameter section starting at '<'."""
    depth = 0
    start = c.peek()
    while not c.at_end():
        t = c.next()
        if t.kind == "op":
            d = _angle_delta(t.text)
            depth += d
            if d < 0 and depth <= 0:
                return
            if t.text in "({[":
                _skip_brackets(c, t.text)
    raise ParseError("unbalanced generic brackets", start.line if start else 0)


_CLOSER = {"(": ")", "{": "}", "[": "]"}


def _skip_brackets(c: _Cursor, opener: str) -> None:
    closer = _CLOSER[opener]
    depth = 1
    while depth:
        t = c.next()
        if t.text == opener:
            depth += 1
        elif t.text == closer:
            depth -= 1


def skip_balanced(c: _Cursor) -> list[Tok]:
    """Consume a bracketed section including delimiters; returns its tokens."""
    open_tok = c.next()
    if open_tok.text not in _CLOSER:
        raise ParseError(f"expected bracket, found {open_tok.text!r}", open_tok.line)
    closer = _CLOSER[open_tok.text]
    depth = 1
    start = c.i - 1
    while depth:
        t = c.next()
        if t.text == open_tok.text:
            depth += 1
        elif t.text == closer:
            depth -= 1
    return c.toks[start : c.i]


def skip_annotations(c: _Cursor) -> None:
    while c.text() == "@":
        c.next()
        if c.text() == "interface":  # annotation declaration, caller handles
            c.i -= 1
            return
        c.next()  # annotation name head
        while c.text() == ".":
            c.next()
            c.next()
        if c.text() == "(":
            skip_balanced(c)


def parse_type_ref(c: _Cursor) -> str | None:
    """Parse a type reference; returns its base simple name (last identifier).

    Returns None if the cursor is not at a type.
    """
    skip_annotations(c)
    t = c.peek()
    if t is None:
        return None
    if t.kind == "kw" and t.text in (
        "boolean byte char short int long float double void".split()
    ):
        c.next()
        base = t.text
    elif t.kind == "ident":
        c.next()
        base = t.text
        while c.text() == "." and (nxt := c.peek(1)) and nxt.kind == "ident":
            c.next()
            base = c.next().text
    else:
        return None
    if c.text() == "<":
        skip_angles(c)
    while c.text() == "[" and c.peek(1) and c.text(1) == "]":
        c.next()
        c.next()
    if c.text() == "...":
        c.next()
    return base


def _collect_modifiers(c: _Cursor) -> set[str]:
    mods: set[str] = set()
    while True:
        skip_annotations(c)
        t = c.peek()
        if t is not None and t.text in MODIFIERS:
            mods.add(t.text)
            c.next()
        else:
            return mods


def parse_compilation_unit(toks: list[Tok]) -> tuple[str, list[RawType]]:
    """Parse one file; returns (package name, top-level type declarations)."""
    c = _Cursor(toks)
    package = ""
    types: list[RawType] = []
    while not c.at_end():
        skip_annotations(c)
        if c.at_end():
            break
        t = c.peek()
        if t.text == "package":
            c.next()
            parts = [c.next().text]
            while c.text() == ".":
                c.next()
                parts.append(c.next().text)
            c.expect(";")
            package = ".".join(parts)
        elif t.text == "import":
            while c.next().text != ";":
                pass
        elif t.text == ";":
            c.next()
        else:
            mods = _collect_modifiers(c)
            types.append(_parse_type_decl(c, frozenset(mods)))
    return package, types


def _parse_type_decl(c: _Cursor, mods: frozenset[str]) -> RawType:
    t = c.peek()
    if t is None:
        raise ParseError("expected type declaration", 0)
    if t.text == "@" and c.text(1) == "interface":
        c.next()
        kind_tok = c.next()
        kind = "interface"
    elif t.text in ("class", "interface", "enum"):
        kind_tok = c.next()
        kind = kind_tok.text
    else:
        raise ParseError(f"expected type declaration, found {t.text!r}", t.line)
    name = c.next().text
    decl = RawType(kind=kind, name=name, modifiers=mods, line_start=kind_tok.line)
    if c.text() == "<":
        skip_angles(c)
    if c.text() == "extends":
        c.next()
        decl.extends.append(parse_type_ref(c) or "")
        while kind == "interface" and c.text() == ",":
            c.next()
            decl.extends.append(parse_type_ref(c) or "")
    if c.text() == "implements":
        c.next()
        decl.implements.append(parse_type_ref(c) or "")
        while c.text() == ",":
            c.next()
            decl.implements.append(parse_type_ref(c) or "")
    c.expect("{")
    if kind == "enum":
        _parse_enum_constants(c)
    _parse_members(c, decl)
    return decl


def _parse_enum_constants(c: _Cursor) -> None:
    """Consume enum constants up to the member separator ';' or body end."""
    while True:
        skip_annotations(c)
        t = c.peek()
        if t is None:
            raise ParseError("unterminated enum body", 0)
        if t.text == ";":
            c.next()
            return
        if t.text == "}":
            return  # body ends with constants only; leave '}' for the caller
        c.next()  # constant name
        if c.text() == "(":
            skip_balanced(c)
        if c.text() == "{":
            skip_balanced(c)
        if c.text() == ",":
            c.next()


def _parse_members(c: _Cursor, decl: RawType) -> None:
    while True:
        t = c.peek()
        if t is None:
            raise ParseError(f"unterminated body of {decl.name}", decl.line_start)
        if t.text == "}":
            decl.line_end = c.next().line
            return
        if t.text == ";":
            c.next()
            continue
        mods = frozenset(_collect_modifiers(c))
        t = c.peek()
        if t is None:
            raise ParseError(f"unterminated body of {decl.name}", decl.line_start)
        if t.text in ("class", "interface", "enum") or (
            t.text == "@" and c.text(1) == "interface"
        ):
            decl.nested.append(_parse_type_decl(c, mods))
            continue
        if t.text == "{":  # instance or static initializer
            skip_balanced(c)
            continue
        if t.text == "<":  # generic method type parameters
            skip_angles(c)
        _parse_field_or_method(c, decl, mods)


def _parse_field_or_method(c: _Cursor, decl: RawType, mods: frozenset[str]) -> None:
    t = c.peek()
    if t is None:
        raise ParseError("unexpected end of member", decl.line_start)
    # Constructor: the declared name equals the enclosing type's simple name
    # and is directly followed by the parameter list.
    if t.kind == "ident" and t.text == decl.name and c.text(1) == "(":
        name_tok = c.next()
        _parse_method(c, decl, mods, name_tok, return_type=None, is_ctor=True)
        return
    type_base = parse_type_ref(c)
    if type_base is None:
        raise ParseError(f"unparseable member near {t.text!r}", t.line)
    name_tok = c.peek()
    if name_tok is None or name_tok.kind not in ("ident",):
        raise ParseError(f"expected member name near {t.text!r}", t.line)
    c.next()
    if c.text() == "(":
        _parse_method(c, decl, mods, name_tok, return_type=type_base, is_ctor=False)
    else:
        _parse_field_declarators(c, decl, mods, type_base, name_tok)


def _parse_method(
    c: _Cursor,
    decl: RawType,
    mods: frozenset[str],
    name_tok: Tok,
    return_type: str | None,
    is_ctor: bool,
) -> None:
    params: list[tuple[str, str]] = []
    c.expect("(")
    while c.text() != ")":
        skip_annotations(c)
        if c.text() == "final":
            c.next()
        p_type = parse_type_ref(c)
        if p_type is None:
            raise ParseError("unparseable parameter", name_tok.line)
        p_name_tok = c.next()
        p_name = p_name_tok.text
        while c.text() == "[" and c.text(1) == "]":
            c.next()
            c.next()
        params.append((p_type, p_name))
        if c.text() == ",":
            c.next()
    c.expect(")")
    while c.text() == "[" and c.text(1) == "]":  # archaic array-returning form
        c.next()
        c.next()
    if c.text() == "throws":
        c.next()
        parse_type_ref(c)
        while c.text() == ",":
            c.next()
            parse_type_ref(c)
    body: list[Tok] | None = None
    if c.text() == "{":
        body = skip_balanced(c)
        line_end = body[-1].line
    elif c.text() == "default":  # annotation member default value
        while c.next().text != ";":
            pass
        line_end = c.toks[c.i - 1].line
    else:
        end_tok = c.expect(";")
        line_end = end_tok.line
    decl.methods.append(
        RawMethod(
            name=name_tok.text,
            is_constructor=is_ctor,
            modifiers=mods,
            return_type=return_type,
            params=params,
            body=body,
            line_start=name_tok.line,
            line_end=line_end,
        )
    )


def scan_initializer(c: _Cursor) -> list[Tok]:
    """Consume an initializer expression up to a top-level ',' or ';'.

    A ',' only terminates when what follows looks like another declarator
    (identifier then '=', ',', ';' or '['), so generic arguments and array
    initializers survive intact.
    """
    start = c.i
    depth = 0
    while True:
        t = c.peek()
        if t is None:
            raise ParseError("unterminated initializer", c.toks[start].line)
        if depth == 0 and t.text == ";":
            break
        if depth == 0 and t.text == ",":
            nxt, nxt2 = c.peek(1), c.peek(2)
            if (
                nxt is not None
                and nxt.kind == "ident"
                and nxt2 is not None
                and nxt2.text in ("=", ",", ";", "[")
            ):
                break
        if t.text in "({[":
            depth += 1
        elif t.text in ")}]":
            depth -= 1
        c.next()
    return c.toks[start : c.i]


def _parse_field_declarators(
    c: _Cursor,
    decl: RawType,
    mods: frozenset[str],
    type_base: str,
    first_name: Tok,
) -> None:
    name_tok = first_name
    while True:
        while c.text() == "[" and c.text(1) == "]":
            c.next()
            c.next()
        if c.text() == "=":
            c.next()
            scan_initializer(c)
        decl.fields.append(
            RawField(
                name=name_tok.text,
                type_name=type_base,
                modifiers=mods,
                line=name_tok.line,
            )
        )
        if c.text() == ",":
            c.next()
            name_tok = c.next()
            continue
        c.expect(";")
        return
