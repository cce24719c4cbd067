"""Class- and method-level metric computation.

Every formula here is pinned by the fixture oracle tests: the expected values
were hand-counted against these exact definitions, so any change to a rule
must update the fixtures' expectations knowingly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from ..java.lexer import Tok
from ..java.model import MethodInfo, ProjectModel, TypeInfo
from ..java.statements import count_statements, max_nesting
from .usage import MethodKey, MethodUsage, analyze_method

_DECISION_KEYWORDS = frozenset(("if", "for", "while", "do", "case", "catch"))


def cyclomatic_complexity(m: MethodInfo) -> int:
    """1 + decision tokens in the body; 0 for abstract/native methods."""
    if m.is_abstract:
        return 0
    count = 1
    toks = m.body_tokens
    for i, t in enumerate(toks):
        if t.kind == "kw" and t.text in _DECISION_KEYWORDS:
            count += 1
        elif t.kind == "op" and t.text in ("&&", "||"):
            count += 1
        elif t.kind == "op" and t.text == "?":
            # ternary, unless it is a generic wildcard (`<?`, `, ?`)
            prev = toks[i - 1].text if i > 0 else ""
            if prev not in ("<", ","):
                count += 1
    return count


def method_loc(m: MethodInfo) -> int:
    return m.declaring.loc(m.raw.line_start, m.raw.line_end)


@dataclass
class AnalysisIndex:
    """Whole-project usage analysis, computed once per model."""

    model: ProjectModel
    usages: dict[MethodKey, MethodUsage]
    callers: dict[MethodKey, set[MethodKey]]
    caller_classes: dict[MethodKey, set[str]]
    package_stats: dict[str, dict[str, float]]
    project_stats: dict[str, float]


def _method_key(m: MethodInfo) -> MethodKey:
    return (m.declaring.qualified, m.signature)


def build_index(model: ProjectModel) -> AnalysisIndex:
    usages: dict[MethodKey, MethodUsage] = {}
    callers: dict[MethodKey, set[MethodKey]] = {}
    caller_classes: dict[MethodKey, set[str]] = {}
    for t in model.types:
        for m in t.methods:
            if m.is_abstract:
                continue
            usages[_method_key(m)] = analyze_method(model, m)
    for caller_key, use in usages.items():
        for callee in use.callees:
            callers.setdefault(callee, set()).add(caller_key)
            caller_classes.setdefault(callee, set()).add(caller_key[0])

    package_stats: dict[str, dict[str, float]] = {}
    project_stats = {"NOCSPR": 0.0, "NOIPR": 0.0, "NOMPR": 0.0, "LOCPR": 0.0}
    for t in model.types:
        stats = package_stats.setdefault(
            t.package, {"NOCS": 0.0, "NOI": 0.0, "NOMPK": 0.0, "LOCPK": 0.0}
        )
        if t.kind == "interface":
            stats["NOI"] += 1
            project_stats["NOIPR"] += 1
        else:
            stats["NOCS"] += 1
            project_stats["NOCSPR"] += 1
        stats["NOMPK"] += len(t.methods)
        project_stats["NOMPR"] += len(t.methods)
        if t.is_top_level:
            cloc = t.loc(*t.line_span)
            stats["LOCPK"] += cloc
            project_stats["LOCPR"] += cloc
    project_stats["NOPK"] = float(len(package_stats))
    return AnalysisIndex(
        model=model,
        usages=usages,
        callers=callers,
        caller_classes=caller_classes,
        package_stats=package_stats,
        project_stats=project_stats,
    )


def get_index(model: ProjectModel) -> AnalysisIndex:
    """Per-model cached index; the model is immutable after parsing."""
    cached = getattr(model, "_analysis_index", None)
    if cached is None:
        cached = build_index(model)
        model._analysis_index = cached  # type: ignore[attr-defined]
    return cached


# -- class scope ---------------------------------------------------------------


def class_metric_values(index: AnalysisIndex, t: TypeInfo) -> dict[str, float]:
    model = index.model
    declared = t.methods
    concrete = [m for m in declared if not m.is_abstract]
    accessors = [m for m in declared if model.accessor_field(m) is not None]
    mutators = [m for m in declared if model.mutator_field(m) is not None]
    am = {id(m) for m in accessors} | {id(m) for m in mutators}

    def mods(m: MethodInfo) -> frozenset[str]:
        return m.modifiers

    cyclos = {id(m): cyclomatic_complexity(m) for m in declared}
    locs = {id(m): method_loc(m) for m in declared}

    v: dict[str, float] = {}
    cloc = t.loc(*t.line_span)
    v["CLOC"] = cloc
    v["LOCNAMM"] = cloc - sum(locs[id(m)] for m in declared if id(m) in am)
    v["TNOS"] = sum(count_statements(m.statements) for m in concrete)
    v["MAXLOC"] = max((locs[id(m)] for m in concrete), default=0)
    v["MAXCYCLO"] = max((cyclos[id(m)] for m in concrete), default=0)

    nom = len(declared)
    v["NOM"] = nom
    v["NOMNAMM"] = nom - len(am)
    v["NONAM"] = nom - len(accessors)
    v["NOAM"] = len(accessors)
    v["NOCM"] = sum(1 for m in declared if m.is_constructor)
    v["NONCM"] = nom - v["NOCM"]
    v["NOABM"] = sum(1 for m in declared if m.is_abstract)
    v["NOFM"] = sum(1 for m in declared if "final" in mods(m))
    v["NOFSM"] = sum(1 for m in declared if {"final", "static"} <= mods(m))
    v["NOFNSM"] = sum(1 for m in declared if "final" in mods(m) and "static" not in mods(m))
    v["NONFSM"] = sum(1 for m in declared if "final" not in mods(m) and "static" in mods(m))
    v["NONFNSM"] = sum(
        1 for m in declared if "final" not in mods(m) and "static" not in mods(m)
    )
    v["NONFNABM"] = sum(1 for m in declared if "final" not in mods(m) and not m.is_abstract)
    v["NOSM"] = sum(1 for m in declared if "static" in mods(m))
    v["NOPLM"] = sum(1 for m in declared if "public" in mods(m))
    v["NOPM"] = sum(1 for m in declared if "private" in mods(m))
    v["NOPRM"] = sum(1 for m in declared if "protected" in mods(m))
    v["NODM"] = nom - v["NOPLM"] - v["NOPM"] - v["NOPRM"]

    fields = t.fields
    v["NOA"] = len(fields)
    v["NOPA"] = sum(1 for f in fields if "public" in f.modifiers)
    v["NOPVA"] = sum(1 for f in fields if "private" in f.modifiers)
    v["NOPRA"] = sum(1 for f in fields if "protected" in f.modifiers)
    v["NODA"] = v["NOA"] - v["NOPA"] - v["NOPVA"] - v["NOPRA"]
    v["NOFA"] = sum(1 for f in fields if "final" in f.modifiers)
    v["NOSA"] = sum(1 for f in fields if "static" in f.modifiers)
    v["NOFSA"] = sum(1 for f in fields if {"final", "static"} <= f.modifiers)
    v["NOFNSA"] = sum(
        1 for f in fields if "final" in f.modifiers and "static" not in f.modifiers
    )
    v["NONFNSA"] = sum(
        1 for f in fields if "final" not in f.modifiers and "static" not in f.modifiers
    )
    v["NONFSA"] = sum(
        1 for f in fields if "final" not in f.modifiers and "static" in f.modifiers
    )

    wmc = sum(cyclos[id(m)] for m in declared)
    wmcnamm = sum(cyclos[id(m)] for m in declared if id(m) not in am)
    v["WMC"] = wmc
    v["WMCNAMM"] = wmcnamm
    v["AMW"] = wmc / nom if nom else 0.0
    v["AMWNAMM"] = wmcnamm / v["NOMNAMM"] if v["NOMNAMM"] else 0.0
    pub = [m for m in declared if "public" in mods(m)]
    pub_namm = [m for m in pub if id(m) not in am]
    v["WOC"] = len(pub_namm) / len(pub) if pub else 1.0

    own_field_keys = {(t.qualified, f.name) for f in fields}

    def touched(m: MethodInfo) -> set[tuple[str, str]]:
        use = index.usages.get(_method_key(m))
        return (use.direct_own_fields & own_field_keys) if use else set()

    lcom_methods = [m for m in concrete if not m.is_constructor]
    if len(lcom_methods) < 2 or not fields:
        v["LCOM"] = 0.0
    else:
        p = q = 0
        sets = [touched(m) for m in lcom_methods]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if sets[i] & sets[j]:
                    q += 1
                else:
                    p += 1
        v["LCOM"] = max(0, p - q)
    tcc_methods = [
        m
        for m in concrete
        if not m.is_constructor
        and "public" in mods(m)
        and model.accessor_field(m) is None
    ]
    if len(tcc_methods) < 2:
        v["TCC"] = 1.0
    else:
        sets = [touched(m) for m in tcc_methods]
        connected = total = 0
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                total += 1
                if sets[i] & sets[j]:
                    connected += 1
        v["TCC"] = connected / total

    v["DAM"] = (v["NOPVA"] + v["NOPRA"]) / v["NOA"] if v["NOA"] else 1.0
    v["MOA"] = sum(1 for f in fields if model.resolve(f.type_name) is not None)

    ancestors = model.ancestors(t)
    declared_keys = {(m.name, m.arity) for m in declared if not m.is_constructor}
    v["NMO"] = sum(
        1
        for m in declared
        if not m.is_constructor
        and any(
            (m.name, m.arity) in {(a.name, a.arity) for a in anc.methods if not a.is_constructor}
            for anc in ancestors
        )
    )
    seen = set(declared_keys)
    nim = 0
    for anc in ancestors:
        for am_ in anc.methods:
            if am_.is_constructor or "private" in am_.modifiers:
                continue
            key = (am_.name, am_.arity)
            if key not in seen:
                seen.add(key)
                nim += 1
    v["NIM"] = nim
    v["MFA"] = nim / (nim + v["NONCM"]) if (nim + v["NONCM"]) else 0.0
    v["NOII"] = len(t.raw.implements)
    v["DIT"] = model.dit(t)
    v["NOC"] = len(model.children_of(t))

    atfd = 0
    coupled: set[str] = set()
    call_targets: set[tuple[str, str]] = set()
    for m in concrete:
        use = index.usages.get(_method_key(m))
        if use is None:
            continue
        atfd += use.foreign_attr_sites
        coupled |= {q for q, _ in use.call_targets}
        coupled |= use.instantiated
        call_targets |= use.call_targets
    for f in fields:
        hit = model.resolve(f.type_name)
        if hit is not None:
            coupled.add(hit.qualified)
    for m in declared:
        for p_type, _ in m.raw.params:
            hit = model.resolve(p_type)
            if hit is not None:
                coupled.add(hit.qualified)
        if m.raw.return_type:
            hit = model.resolve(m.raw.return_type)
            if hit is not None:
                coupled.add(hit.qualified)
    coupled.discard(t.qualified)
    v["ATFD"] = atfd
    v["CBO"] = len(coupled)
    v["RFC"] = nom + len(call_targets)

    pkg = index.package_stats.get(t.package, {})
    v["NOCS"] = pkg.get("NOCS", 0.0)
    v["NOI"] = pkg.get("NOI", 0.0)
    v["NOMPK"] = pkg.get("NOMPK", 0.0)
    v["LOCPK"] = pkg.get("LOCPK", 0.0)
    v["NOPK"] = index.project_stats["NOPK"]
    v["NOCSPR"] = index.project_stats["NOCSPR"]
    v["NOIPR"] = index.project_stats["NOIPR"]
    v["NOMPR"] = index.project_stats["NOMPR"]
    v["LOCPR"] = index.project_stats["LOCPR"]
    return {k: float(val) for k, val in v.items()}


# -- method scope ----------------------------------------------------------------


def method_metric_values(index: AnalysisIndex, m: MethodInfo) -> dict[str, float]:
    v: dict[str, float] = {}
    if m.is_abstract:
        # Degenerate by rule: everything 0 except the parameter count.
        for acronym in (
            "LOC CYCLO MAXNESTING NOS NORP NOLV NOAV ATLD LAA CLNAMM CFNAMM "
            "CINT CDISP FANOUT FDP MAMCL MEMCL NMCS CC CM".split()
        ):
            v[acronym] = 0.0
        v["NOP"] = float(len(m.raw.params))
        return v

    use = index.usages[_method_key(m)]
    v["LOC"] = method_loc(m)
    v["CYCLO"] = cyclomatic_complexity(m)
    v["MAXNESTING"] = max_nesting(m.statements)
    v["NOS"] = count_statements(m.statements)
    v["NORP"] = sum(1 for s in m.statements for node in s.walk() if node.kind == "return")
    v["NOP"] = len(m.raw.params)
    v["NOLV"] = sum(len(node.decls) for s in m.statements for node in s.walk())
    v["NOAV"] = (
        len(use.used_locals)
        + len(use.used_params)
        + len(use.own_fields)
        + len(use.foreign_fields)
    )
    v["ATLD"] = len(use.own_fields)
    total_attr = use.own_attr_sites + use.foreign_attr_sites
    v["LAA"] = use.own_attr_sites / total_attr if total_attr else 1.0
    v["CLNAMM"] = len(use.clnamm)
    v["CFNAMM"] = len(use.cfnamm)
    v["CINT"] = len(use.cint)
    v["CDISP"] = len({q for q, _ in use.cint}) / len(use.cint) if use.cint else 0.0
    v["FANOUT"] = len(use.fanout)
    v["FDP"] = len(use.foreign_providers)
    v["MAMCL"] = max(use.chains, default=0)
    v["MEMCL"] = sum(use.chains) / len(use.chains) if use.chains else 0.0
    v["NMCS"] = len(use.chains)
    key = _method_key(m)
    v["CC"] = len(index.caller_classes.get(key, ()))
    v["CM"] = len(index.callers.get(key, ()))
    return {k: float(val) for k, val in v.items()}
