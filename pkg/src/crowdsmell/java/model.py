"""Project model: parsed types, symbol resolution, inheritance queries.

The model is immutable once :func:`parse_project` returns; every query is a
pure read, so concurrent use needs no locking.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from pathlib import Path

from ..entities import CodeEntityId
from ..errors import EmptyProjectError, IoError
from .lexer import LexError, Tok, tokenize
from .statements import Stmt, parse_body
from .structure import ParseError, RawField, RawMethod, RawType, parse_compilation_unit


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str
    line: int = 0


@dataclass
class MethodInfo:
    raw: RawMethod
    declaring: "TypeInfo"

    @property
    def name(self) -> str:
        return self.raw.name

    @property
    def signature(self) -> str:
        return self.raw.signature

    @property
    def arity(self) -> int:
        return self.raw.arity

    @property
    def is_constructor(self) -> bool:
        return self.raw.is_constructor

    @property
    def is_abstract(self) -> bool:
        return self.raw.body is None

    @property
    def modifiers(self) -> frozenset[str]:
        return self.raw.modifiers

    @property
    def is_public(self) -> bool:
        # Interface members are implicitly public.
        return "public" in self.raw.modifiers or self.declaring.kind == "interface"

    @functools.cached_property
    def statements(self) -> list[Stmt]:
        return parse_body(self.raw.body) if self.raw.body is not None else []

    @property
    def body_tokens(self) -> list[Tok]:
        return self.raw.body or []

    def entity_id(self) -> CodeEntityId:
        t = self.declaring
        return CodeEntityId(
            project=t.project,
            package=t.package,
            class_name=t.class_path,
            method_signature=self.signature,
        )

    def __repr__(self) -> str:
        return f"<method {self.declaring.class_path}.{self.signature}>"


@dataclass
class TypeInfo:
    raw: RawType
    project: str
    package: str
    path: str
    class_path: str  # Outer.Inner for nested types
    code_lines: frozenset[int]
    is_top_level: bool
    fields: list[RawField] = field(default_factory=list)
    methods: list[MethodInfo] = field(default_factory=list)

    @property
    def kind(self) -> str:
        return self.raw.kind

    @property
    def name(self) -> str:
        return self.raw.name

    @property
    def qualified(self) -> str:
        return f"{self.package}.{self.class_path}" if self.package else self.class_path

    @property
    def is_measurable(self) -> bool:
        """Interfaces provide context but are not measured entities."""
        return self.raw.kind in ("class", "enum")

    @property
    def line_span(self) -> tuple[int, int]:
        return self.raw.line_start, self.raw.line_end

    def entity_id(self) -> CodeEntityId:
        return CodeEntityId(
            project=self.project, package=self.package, class_name=self.class_path
        )

    def loc(self, start: int, end: int) -> int:
        return sum(1 for ln in range(start, end + 1) if ln in self.code_lines)

    def __repr__(self) -> str:
        return f"<{self.kind} {self.qualified}>"


class ProjectModel:
    def __init__(self, project: str):
        self.project = project
        self.types: list[TypeInfo] = []
        self.diagnostics: list[Diagnostic] = []
        self.file_sources: dict[str, list[str]] = {}
        self._by_simple: dict[str, list[TypeInfo]] = {}
        self._subclasses: dict[str, list[TypeInfo]] = {}

    def source_excerpt(self, path: str, start: int, end: int) -> str:
        lines = self.file_sources.get(path, [])
        return "\n".join(lines[max(start, 1) - 1 : end])

    # -- construction -------------------------------------------------------

    def _add_file(self, path: str, source: str) -> None:
        try:
            toks, code_lines = tokenize(source)
            package, raw_types = parse_compilation_unit(toks)
        except (LexError, ParseError) as exc:
            self.diagnostics.append(
                Diagnostic(path=path, message=str(exc), line=getattr(exc, "line", 0))
            )
            return
        lines = frozenset(code_lines)
        for raw in raw_types:
            self._register(raw, package, path, lines, outer=None, top=True)

    def _register(
        self,
        raw: RawType,
        package: str,
        path: str,
        code_lines: frozenset[int],
        outer: str | None,
        top: bool,
    ) -> None:
        class_path = f"{outer}.{raw.name}" if outer else raw.name
        info = TypeInfo(
            raw=raw,
            project=self.project,
            package=package,
            path=path,
            class_path=class_path,
            code_lines=code_lines,
            is_top_level=top,
            fields=list(raw.fields),
        )
        info.methods = [MethodInfo(raw=m, declaring=info) for m in raw.methods]
        self.types.append(info)
        self._by_simple.setdefault(raw.name, []).append(info)
        for nested in raw.nested:
            self._register(nested, package, path, code_lines, class_path, top=False)

    def _finalize(self) -> None:
        self.types.sort(key=lambda t: (t.package, t.class_path))
        for t in self.types:
            parent = self.parent_of(t)
            if parent is not None:
                self._subclasses.setdefault(parent.qualified, []).append(t)
            elif t.raw.extends:
                self.diagnostics.append(
                    Diagnostic(
                        path=t.path,
                        message=f"{t.qualified}: unresolved supertype "
                        f"{t.raw.extends[0]!r}; DIT treated as root",
                        line=t.raw.line_start,
                    )
                )

    # -- resolution ----------------------------------------------------------

    def resolve(self, simple_name: str | None) -> TypeInfo | None:
        """Unique project type with this simple name, else None."""
        if not simple_name:
            return None
        hits = self._by_simple.get(simple_name, ())
        return hits[0] if len(hits) == 1 else None

    def parent_of(self, t: TypeInfo) -> TypeInfo | None:
        if t.raw.kind != "class" or not t.raw.extends:
            return None
        parent = self.resolve(t.raw.extends[0])
        return parent if parent is not None and parent is not t else None

    def ancestors(self, t: TypeInfo) -> list[TypeInfo]:
        out: list[TypeInfo] = []
        seen = {t.qualified}
        cur = self.parent_of(t)
        while cur is not None and cur.qualified not in seen:
            out.append(cur)
            seen.add(cur.qualified)
            cur = self.parent_of(cur)
        return out

    def dit(self, t: TypeInfo) -> int:
        return len(self.ancestors(t))

    def children_of(self, t: TypeInfo) -> list[TypeInfo]:
        return self._subclasses.get(t.qualified, [])

    def field_lookup(self, t: TypeInfo, name: str) -> tuple[TypeInfo, RawField] | None:
        for owner in (t, *self.ancestors(t)):
            for f in owner.fields:
                if f.name == name:
                    return owner, f
        return None

    def method_lookup(self, t: TypeInfo, name: str) -> tuple[TypeInfo, MethodInfo] | None:
        for owner in (t, *self.ancestors(t)):
            for m in owner.methods:
                if m.name == name and not m.is_constructor:
                    return owner, m
        return None

    # -- accessor / mutator classification ------------------------------------

    def accessor_field(self, m: MethodInfo) -> str | None:
        """Field returned by an accessor body `return [this.]<field>;`."""
        if m.is_constructor or m.is_abstract:
            return None
        stmts = m.statements
        if len(stmts) != 1 or stmts[0].kind != "return" or not stmts[0].exprs:
            return None
        toks = stmts[0].exprs[0]
        if len(toks) == 1 and toks[0].kind == "ident":
            name = toks[0].text
        elif (
            len(toks) == 3
            and toks[0].text == "this"
            and toks[1].text == "."
            and toks[2].kind == "ident"
        ):
            name = toks[2].text
        else:
            return None
        return name if self.field_lookup(m.declaring, name) else None

    def mutator_field(self, m: MethodInfo) -> str | None:
        """Field written by a mutator body `[this.]<field> = <param>;`."""
        if m.is_constructor or m.is_abstract:
            return None
        stmts = m.statements
        if len(stmts) != 1 or stmts[0].kind != "expr" or not stmts[0].exprs:
            return None
        toks = stmts[0].exprs[0]
        if len(toks) == 5 and toks[0].text == "this" and toks[1].text == ".":
            field_tok, eq, value = toks[2], toks[3], toks[4]
        elif len(toks) == 3:
            field_tok, eq, value = toks
        else:
            return None
        param_names = {p for _, p in m.raw.params}
        if (
            field_tok.kind == "ident"
            and eq.text == "="
            and value.kind == "ident"
            and value.text in param_names
            and self.field_lookup(m.declaring, field_tok.text)
        ):
            return field_tok.text
        return None

    def is_accessor_or_mutator(self, m: MethodInfo) -> bool:
        return self.accessor_field(m) is not None or self.mutator_field(m) is not None

    # -- convenience ----------------------------------------------------------

    def measurable_types(self) -> list[TypeInfo]:
        return [t for t in self.types if t.is_measurable]

    def find_type(self, entity: CodeEntityId) -> TypeInfo | None:
        for t in self.types:
            if t.package == entity.package and t.class_path == entity.class_name:
                return t
        return None

    def find_method(self, entity: CodeEntityId) -> MethodInfo | None:
        t = self.find_type(entity)
        if t is None:
            return None
        for m in t.methods:
            if m.signature == entity.method_signature:
                return m
        return None


def parse_project(root_path: str | Path, project_name: str | None = None) -> ProjectModel:
    """Parse every .java file under ``root_path`` into a ProjectModel.

    Files that fail to lex or parse become diagnostics, not failures. Raises
    EmptyProjectError when the tree holds no .java files at all.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise IoError(f"not a directory: {root}")
    files = sorted(root.rglob("*.java"), key=lambda p: p.relative_to(root).as_posix())
    if not files:
        raise EmptyProjectError(f"no .java files under {root}")
    model = ProjectModel(project=project_name or root.name)
    for f in files:
        rel = f.relative_to(root).as_posix()
        try:
            source = f.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            raise IoError(str(exc)) from exc
        model.file_sources[rel] = source.splitlines()
        model._add_file(rel, source)
    model._finalize()
    return model
