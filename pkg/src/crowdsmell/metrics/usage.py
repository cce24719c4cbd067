"""Body usage analysis: variable accesses, call sites, message chains.

Receiver resolution is heuristic and project-local: a receiver resolves when
its declared type names a unique project class. Unresolvable receivers feed
no coupling metric; they are tallied per method and surface as a model-level
diagnostic count. "Local" means the method's own class or one of its project
ancestors; everything else resolved is foreign.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..java.lexer import Tok
from ..java.model import MethodInfo, ProjectModel, TypeInfo
from ..java.structure import _Cursor, parse_type_ref

MethodKey = tuple[str, str]  # (declaring qualified name, signature)


@dataclass
class MethodUsage:
    used_locals: set[str] = dc_field(default_factory=set)
    used_params: set[str] = dc_field(default_factory=set)
    own_attr_sites: int = 0
    foreign_attr_sites: int = 0
    own_fields: set[tuple[str, str]] = dc_field(default_factory=set)
    direct_own_fields: set[tuple[str, str]] = dc_field(default_factory=set)
    foreign_fields: set[tuple[str, str]] = dc_field(default_factory=set)
    foreign_providers: set[str] = dc_field(default_factory=set)
    clnamm: set[tuple[str, str]] = dc_field(default_factory=set)
    cfnamm: set[tuple[str, str]] = dc_field(default_factory=set)
    cint: set[tuple[str, str]] = dc_field(default_factory=set)
    fanout: set[str] = dc_field(default_factory=set)
    call_targets: set[tuple[str, str]] = dc_field(default_factory=set)
    callees: set[MethodKey] = dc_field(default_factory=set)
    instantiated: set[str] = dc_field(default_factory=set)
    chains: list[int] = dc_field(default_factory=list)  # per-statement maxima >= 2
    unresolved: int = 0


class _Analyzer:
    def __init__(self, model: ProjectModel, method: MethodInfo):
        self.model = model
        self.method = method
        self.own = method.declaring
        self.use = MethodUsage()
        self.params: dict[str, str] = {name: t for t, name in method.raw.params}
        self.locals: dict[str, str] = {}
        for stmt in method.statements:
            for root in stmt.walk():
                for t, name in root.decls:
                    self.locals.setdefault(name, t)
        self._ancestor_quals = {a.qualified for a in model.ancestors(self.own)}
        self._stmt_chain_max = 0

    # -- entry ----------------------------------------------------------------

    def run(self) -> MethodUsage:
        for stmt in self.method.statements:
            for node in stmt.walk():
                self._stmt_chain_max = 0
                for expr in node.exprs:
                    self._scan(expr)
                if self._stmt_chain_max >= 2:
                    self.use.chains.append(self._stmt_chain_max)
        return self.use

    # -- helpers ----------------------------------------------------------------

    def _is_local_class(self, t: TypeInfo) -> bool:
        return t.qualified == self.own.qualified or t.qualified in self._ancestor_quals

    def _resolve_var_type(self, name: str) -> TypeInfo | None:
        if name in self.locals:
            return self.model.resolve(self.locals[name])
        if name in self.params:
            return self.model.resolve(self.params[name])
        return None

    def _record_use(self, name: str) -> bool:
        """Record a bare identifier use; True if it named a variable/field."""
        if name in self.locals:
            self.use.used_locals.add(name)
            return True
        if name in self.params:
            self.use.used_params.add(name)
            return True
        hit = self.model.field_lookup(self.own, name)
        if hit is not None:
            self._own_field_site(hit, direct=True)
            return True
        return False

    def _own_field_site(self, hit, direct: bool) -> None:
        owner, f = hit
        self.use.own_attr_sites += 1
        self.use.own_fields.add((owner.qualified, f.name))
        if direct:
            self.use.direct_own_fields.add((owner.qualified, f.name))

    def _foreign_field_site(self, owner: TypeInfo, f) -> None:
        self.use.foreign_attr_sites += 1
        self.use.foreign_providers.add(owner.qualified)
        self.use.foreign_fields.add((owner.qualified, f.name))

    def _record_call(self, receiver: TypeInfo | None, name: str) -> TypeInfo | None:
        """Record one call site; returns the resolved result type, if any."""
        if receiver is None:
            self.use.unresolved += 1
            return None
        self.use.call_targets.add((receiver.qualified, name))
        hit = self.model.method_lookup(receiver, name)
        target = hit[1] if hit else None
        if target is not None:
            self.use.callees.add((target.declaring.qualified, target.signature))
        if self._is_local_class(receiver):
            acc = target is not None and self.model.is_accessor_or_mutator(target)
            if acc:
                fname = self.model.accessor_field(target) or self.model.mutator_field(
                    target
                )
                fhit = self.model.field_lookup(target.declaring, fname)
                if fhit is not None:
                    self._own_field_site(fhit, direct=False)
            else:
                self.use.clnamm.add((receiver.qualified, name))
        else:
            self.use.fanout.add(receiver.qualified)
            self.use.cint.add((receiver.qualified, name))
            acc = target is not None and self.model.is_accessor_or_mutator(target)
            if acc:
                fname = self.model.accessor_field(target) or self.model.mutator_field(
                    target
                )
                fhit = self.model.field_lookup(target.declaring, fname)
                owner = fhit[0] if fhit else target.declaring
                self.use.foreign_attr_sites += 1
                self.use.foreign_providers.add(receiver.qualified)
                if fhit is not None:
                    self.use.foreign_fields.add((owner.qualified, fhit[1].name))
            else:
                self.use.cfnamm.add((receiver.qualified, name))
        if target is not None and target.raw.return_type:
            return self.model.resolve(target.raw.return_type)
        return None

    # -- expression scanning -------------------------------------------------

    def _scan(self, toks: list[Tok]) -> None:
        i, n = 0, len(toks)
        while i < n:
            t = toks[i]
            if t.text == "new":
                i = self._scan_new(toks, i)
            elif t.kind == "ident" or t.text in ("this", "super"):
                i = self._walk_primary(toks, i)
            elif t.text == "." and i + 1 < n and toks[i + 1].kind == "ident":
                # member access on an opaque receiver: cast, array element, literal
                i = self._member_loop(toks, i, None, chain=0, producing=False)
            else:
                i += 1

    def _scan_new(self, toks: list[Tok], i: int) -> int:
        c = _Cursor(toks)
        c.i = i + 1
        base = parse_type_ref(c)
        j = c.i
        resolved = self.model.resolve(base)
        if j < len(toks) and toks[j].text == "(":
            end = _match(toks, j)
            self._scan(toks[j + 1 : end])
            j = end + 1
            if resolved is not None:
                self.use.instantiated.add(resolved.qualified)
                self.use.call_targets.add((resolved.qualified, "<init>"))
                if not self._is_local_class(resolved):
                    self.use.fanout.add(resolved.qualified)
            if j < len(toks) and toks[j].text == "{":
                # anonymous class body: opaque, skipped
                j = _match(toks, j) + 1
                return j
            return self._member_loop(toks, j - 1, resolved, chain=0, producing=True) \
                if j < len(toks) and toks[j].text == "." else j
        while j < len(toks) and toks[j].text == "[":
            end = _match(toks, j)
            self._scan(toks[j + 1 : end])
            j = end + 1
        if j < len(toks) and toks[j].text == "{":
            end = _match(toks, j)
            self._scan(toks[j + 1 : end])
            j = end + 1
        return j

    def _walk_primary(self, toks: list[Tok], i: int) -> int:
        n = len(toks)
        t = toks[i]
        if t.text == "this":
            if i + 1 < n and toks[i + 1].text == "." and _ident_at(toks, i + 2):
                return self._member_loop(toks, i, self.own, chain=0, producing=False)
            return i + 1
        if t.text == "super":
            parent = self.model.parent_of(self.own)
            if i + 1 < n and toks[i + 1].text == "." and _ident_at(toks, i + 2):
                return self._member_loop(toks, i, parent, chain=0, producing=False)
            return i + 1
        name = t.text
        nxt = toks[i + 1].text if i + 1 < n else None
        if nxt == "(":
            end = _match(toks, i + 1)
            self._scan(toks[i + 2 : end])
            result = self._record_call(self.own, name)
            self._bump_chain(1)
            j = end + 1
            if j < n and toks[j].text == "." and _ident_at(toks, j + 1):
                return self._member_loop(toks, j - 1, result, chain=1, producing=True)
            return j
        if nxt == "." and _ident_at(toks, i + 2):
            receiver: TypeInfo | None = None
            known_head = False
            if name in self.locals or name in self.params:
                self._record_use(name)
                receiver = self._resolve_var_type(name)
                known_head = True
            else:
                hit = self.model.field_lookup(self.own, name)
                if hit is not None:
                    self._own_field_site(hit, direct=True)
                    receiver = self.model.resolve(hit[1].type_name)
                    known_head = True
                else:
                    receiver = self.model.resolve(name)  # static context
                    known_head = receiver is not None
            if not known_head:
                receiver = None
            return self._member_loop(toks, i, receiver, chain=0, producing=False)
        self._record_use(name)
        return i + 1

    def _member_loop(
        self,
        toks: list[Tok],
        i: int,
        current: TypeInfo | None,
        chain: int,
        producing: bool,
    ) -> int:
        """Walk `.name` / `.name(args)` steps. ``i`` indexes the head token;
        steps start at ``i + 1``. ``producing`` marks whether the head already
        yields a call result (so the next call extends the chain)."""
        n = len(toks)
        j = i + 1
        while j < n and toks[j].text == "." and _ident_at(toks, j + 1):
            name = toks[j + 1].text
            if j + 2 < n and toks[j + 2].text == "(":
                end = _match(toks, j + 2)
                self._scan(toks[j + 3 : end])
                result = self._record_call(current, name)
                chain = chain + 1 if producing else 1
                self._bump_chain(chain)
                producing = True
                current = result
                j = end + 1
            else:
                if chain >= 2:
                    pass  # already bumped
                chain = 0
                producing = False
                current = self._field_step(current, name)
                j += 2
        return j

    def _field_step(self, current: TypeInfo | None, name: str) -> TypeInfo | None:
        if current is None:
            self.use.unresolved += 1
            return None
        hit = self.model.field_lookup(current, name)
        if hit is None:
            self.use.unresolved += 1
            return None
        owner, f = hit
        if self._is_local_class(current):
            self._own_field_site(hit, direct=True)
        else:
            self._foreign_field_site(owner, f)
        return self.model.resolve(f.type_name)

    def _bump_chain(self, length: int) -> None:
        if length > self._stmt_chain_max:
            self._stmt_chain_max = length


def _ident_at(toks: list[Tok], i: int) -> bool:
    return i < len(toks) and toks[i].kind == "ident"


def _match(toks: list[Tok], i: int) -> int:
    opener = toks[i].text
    closer = {"(": ")", "[": "]", "{": "}"}[opener]
    depth = 0
    for j in range(i, len(toks)):
        if toks[j].text == opener:
            depth += 1
        elif toks[j].text == closer:
            depth -= 1
            if depth == 0:
                return j
    return len(toks) - 1


def analyze_method(model: ProjectModel, method: MethodInfo) -> MethodUsage:
    """Usage analysis of one concrete method body."""
    return _Analyzer(model, method).run()
