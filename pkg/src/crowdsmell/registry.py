"""The metric registry: every acronym the extractor emits, with its scope.

Class-scope entities carry the 61 CLASS metrics. Method-scope entities carry
all 82: the 21 METHOD metrics computed on the method itself plus the 61 CLASS
metrics of the enclosing class copied in. Where a metric name exists in the
literature at both granularities (LOC, FANOUT, ATFD, CFNAMM), the registry
pins it to a single scope so vectors and CSV columns stay unambiguous:

* LOC, FANOUT, CFNAMM are method metrics here; the class-side size metric is
  CLOC and class-level call coupling is covered by CBO/RFC/FDP-style metrics.
* ATFD is a class metric here (it drives class-level review heuristics);
  method vectors receive the enclosing class's value.

"Accessor" means a method whose body is exactly ``return <field>;`` and
"mutator" one whose body is exactly ``[this.]<field> = <param>;``. Name
prefixes are irrelevant and constructors are never accessors or mutators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .entities import CodeEntityId, MetricVector, Scope


@dataclass(frozen=True)
class MetricDescriptor:
    acronym: str
    full_name: str
    scope: Scope
    definition_note: str


_C = Scope.CLASS
_M = Scope.METHOD

# Ordered: the CSV column order for vectors is exactly this list (class block
# first, then the method block for method-scope vectors).
_DESCRIPTORS: list[MetricDescriptor] = [
    # -- class size -------------------------------------------------------
    MetricDescriptor("CLOC", "Class Lines of Code", _C,
                     "non-blank, non-comment lines from the class declaration line "
                     "through its closing brace, inclusive"),
    MetricDescriptor("LOCNAMM", "Lines of Code Without Accessor or Mutator Methods", _C,
                     "CLOC minus the LOC of accessor/mutator methods"),
    MetricDescriptor("TNOS", "Total Number of Statements", _C,
                     "sum of NOS over declared concrete methods and constructors"),
    MetricDescriptor("MAXLOC", "Maximum Method Lines of Code", _C,
                     "largest method LOC in the class; 0 with no concrete methods"),
    MetricDescriptor("MAXCYCLO", "Maximum Method Cyclomatic Complexity", _C,
                     "largest method CYCLO in the class; 0 with no concrete methods"),
    # -- method counts ----------------------------------------------------
    MetricDescriptor("NOM", "Number of Methods", _C,
                     "declared methods including constructors, nested types excluded"),
    MetricDescriptor("NOMNAMM", "Number of Not Accessor or Mutator Methods", _C,
                     "NOM minus accessor and mutator methods"),
    MetricDescriptor("NONAM", "Number of Non-Accessor Methods", _C, "NOM minus NOAM"),
    MetricDescriptor("NOAM", "Number of Accessor Methods", _C,
                     "methods whose body is exactly 'return <field>;'"),
    MetricDescriptor("NOCM", "Number of Constructor Methods", _C, "declared constructors"),
    MetricDescriptor("NONCM", "Number of Non-Constructor Methods", _C, "NOM minus NOCM"),
    MetricDescriptor("NOABM", "Number of Abstract Methods", _C,
                     "abstract-modifier methods plus bodiless interface methods"),
    MetricDescriptor("NOFM", "Number of Final Methods", _C, ""),
    MetricDescriptor("NOFSM", "Number of Final and Static Methods", _C, ""),
    MetricDescriptor("NOFNSM", "Number of Final and Non-Static Methods", _C, ""),
    MetricDescriptor("NONFSM", "Number of Non-Final and Static Methods", _C, ""),
    MetricDescriptor("NONFNSM", "Number of Non-Final and Non-Static Methods", _C,
                     "constructors fall in this bucket"),
    MetricDescriptor("NONFNABM", "Number of Non-Final and Non-Abstract Methods", _C, ""),
    MetricDescriptor("NOSM", "Number of Static Methods", _C, ""),
    MetricDescriptor("NODM", "Number of Default Methods", _C,
                     "package-visible: no public/private/protected modifier"),
    MetricDescriptor("NOPM", "Number of Private Methods", _C, ""),
    MetricDescriptor("NOPRM", "Number of Protected Methods", _C, ""),
    MetricDescriptor("NOPLM", "Number of Public Methods", _C, ""),
    # -- attribute counts -------------------------------------------------
    MetricDescriptor("NOA", "Number of Attributes", _C,
                     "declared field declarators; 'int a, b;' counts 2"),
    MetricDescriptor("NOPA", "Number of Public Attributes", _C, ""),
    MetricDescriptor("NOPVA", "Number of Private Attributes", _C, ""),
    MetricDescriptor("NOPRA", "Number of Protected Attributes", _C, ""),
    MetricDescriptor("NODA", "Number of Default Attributes", _C, "package-visible fields"),
    MetricDescriptor("NOFA", "Number of Final Attributes", _C, ""),
    MetricDescriptor("NOSA", "Number of Static Attributes", _C, ""),
    MetricDescriptor("NOFSA", "Number of Final and Static Attributes", _C, ""),
    MetricDescriptor("NOFNSA", "Number of Final and Non-Static Attributes", _C, ""),
    MetricDescriptor("NONFNSA", "Number of Not Final and Non-Static Attributes", _C, ""),
    MetricDescriptor("NONFSA", "Number of Non-Final and Static Attributes", _C, ""),
    # -- complexity and weight --------------------------------------------
    MetricDescriptor("WMC", "Weighted Methods Count", _C,
                     "sum of CYCLO over declared methods and constructors"),
    MetricDescriptor("WMCNAMM", "Weighted Methods Count of Not Accessor or Mutator Methods", _C,
                     "sum of CYCLO over non-accessor/mutator methods"),
    MetricDescriptor("AMW", "Average Methods Weight", _C, "WMC/NOM; 0 when NOM=0"),
    MetricDescriptor("AMWNAMM", "Average Methods Weight of Not Accessor or Mutator Methods", _C,
                     "WMCNAMM/NOMNAMM; 0 when NOMNAMM=0"),
    MetricDescriptor("WOC", "Weight of Class", _C,
                     "public non-accessor/mutator methods over public methods; "
                     "1 when the class has no public methods"),
    # -- cohesion ----------------------------------------------------------
    MetricDescriptor("LCOM", "Lack of Cohesion in Methods", _C,
                     "LCOM2: method pairs sharing no own field minus pairs sharing one, "
                     "floored at 0; constructors excluded; 0 when degenerate"),
    MetricDescriptor("TCC", "Tight Class Cohesion", _C,
                     "directly connected pairs over all pairs among public non-accessor "
                     "methods (constructors excluded); 1 with fewer than 2 such methods"),
    MetricDescriptor("DAM", "Data Access Metric", _C,
                     "(NOPVA+NOPRA)/NOA; 1 when NOA=0"),
    MetricDescriptor("MOA", "Measure of Aggregation", _C,
                     "field declarators whose declared type resolves to a project class"),
    MetricDescriptor("MFA", "Measure of Functional Abstraction", _C,
                     "NIM/(NIM + non-constructor methods); 0 on zero denominator"),
    # -- coupling ----------------------------------------------------------
    MetricDescriptor("ATFD", "Access to Foreign Data", _C,
                     "access sites from this class's bodies to fields of project classes "
                     "other than itself and its ancestors, directly or via foreign "
                     "accessor/mutator calls"),
    MetricDescriptor("CBO", "Coupling Between Objects Classes", _C,
                     "distinct project classes coupled by field type, parameter type, "
                     "return type, instantiation, or call target; self excluded"),
    MetricDescriptor("RFC", "Response for A Class", _C,
                     "NOM plus distinct resolved (class, method-name) call targets in bodies"),
    # -- inheritance --------------------------------------------------------
    MetricDescriptor("DIT", "Depth of Inheritance Tree", _C,
                     "distance to the project-local hierarchy root; extending an "
                     "unresolved type gives 0 plus a diagnostic"),
    MetricDescriptor("NOC", "Number of Children", _C, "direct project subclasses"),
    MetricDescriptor("NMO", "Number of Methods Overridden", _C,
                     "declared methods matching a project ancestor method by name and arity"),
    MetricDescriptor("NIM", "Number of Inherited Methods", _C,
                     "distinct (name, arity) non-constructor methods of project ancestors "
                     "not redeclared below them"),
    MetricDescriptor("NOII", "Number of Implemented Interfaces", _C,
                     "names listed in the implements clause (extends clause for interfaces)"),
    # -- package / project context ------------------------------------------
    MetricDescriptor("NOCS", "Number of Classes", _C,
                     "class and enum declarations in the entity's package, nested included"),
    MetricDescriptor("NOI", "Number of Interfaces", _C,
                     "interface declarations in the entity's package"),
    MetricDescriptor("NOPK", "Number of Packages", _C, "distinct packages in the project"),
    MetricDescriptor("NOCSPR", "Number of Classes of Project", _C, ""),
    MetricDescriptor("NOIPR", "Number of Interfaces of Project", _C, ""),
    MetricDescriptor("NOMPK", "Number of Methods of Package", _C,
                     "sum of NOM over the package's types"),
    MetricDescriptor("NOMPR", "Number of Methods of Project", _C, ""),
    MetricDescriptor("LOCPK", "Lines of Code of Package", _C,
                     "sum of CLOC over the package's top-level types"),
    MetricDescriptor("LOCPR", "Lines of Code of Project", _C, ""),
    # -- method scope -------------------------------------------------------
    MetricDescriptor("LOC", "Lines of Code", _M,
                     "non-blank, non-comment lines from the method declaration line "
                     "through its closing brace, inclusive"),
    MetricDescriptor("CYCLO", "Cyclomatic Complexity", _M,
                     "1 + count of if/for/while/do/case/catch/ternary/&&/|| tokens in the body"),
    MetricDescriptor("MAXNESTING", "Maximum Nesting Level", _M,
                     "deepest control-statement nesting; a flat body is 0"),
    MetricDescriptor("NOS", "Number of Statements", _M,
                     "statement count; plain blocks and empty statements do not count"),
    MetricDescriptor("NORP", "Number of Return Points", _M, "return statements in the body"),
    MetricDescriptor("NOP", "Number of Parameters", _M, ""),
    MetricDescriptor("NOLV", "Number of Local Variable", _M,
                     "local declarators incl. for-init, enhanced-for, catch and resource vars"),
    MetricDescriptor("NOAV", "Number of Accessed Variables", _M,
                     "distinct locals, parameters, own/ancestor fields and foreign fields "
                     "the body reads or writes"),
    MetricDescriptor("ATLD", "Access to Local Data", _M,
                     "distinct own/ancestor fields accessed, directly or via own accessors"),
    MetricDescriptor("LAA", "Locality of Attribute Accesses", _M,
                     "local attribute access sites over all attribute access sites; "
                     "1 when the body accesses no attributes"),
    MetricDescriptor("CLNAMM", "Called Local Not Accessor or Mutator Methods", _M,
                     "distinct own-class non-accessor/mutator methods called"),
    MetricDescriptor("CFNAMM", "Called Foreign Not Accessor or Mutator Methods", _M,
                     "distinct foreign project methods called that are not accessors/mutators "
                     "of their class"),
    MetricDescriptor("CINT", "Coupling Intensity", _M,
                     "distinct foreign (class, method-name) call targets"),
    MetricDescriptor("CDISP", "Coupling Dispersion", _M,
                     "distinct foreign classes called over CINT; 0 when CINT=0"),
    MetricDescriptor("FANOUT", "Fanout", _M,
                     "distinct resolved classes targeted by calls or instantiations, "
                     "own class excluded"),
    MetricDescriptor("FDP", "Foreign Data Providers", _M,
                     "distinct foreign classes whose fields the body accesses"),
    MetricDescriptor("MAMCL", "Maximum Message Chain Length", _M,
                     "longest run of calls where each call's receiver is the previous "
                     "call's result; 0 with no chain of length 2 or more"),
    MetricDescriptor("MEMCL", "Mean Message Chain Length", _M,
                     "mean of per-statement maximum chain lengths over message chain "
                     "statements; 0 with none"),
    MetricDescriptor("NMCS", "Number of Message Chain Statements", _M,
                     "statements containing a chain of 2 or more calls"),
    MetricDescriptor("CC", "Changing Classes", _M,
                     "distinct project classes containing methods that call this method"),
    MetricDescriptor("CM", "Changing Methods", _M,
                     "distinct project methods that call this method"),
]

REGISTRY: dict[str, MetricDescriptor] = {d.acronym: d for d in _DESCRIPTORS}

CLASS_METRICS: tuple[str, ...] = tuple(d.acronym for d in _DESCRIPTORS if d.scope is _C)
METHOD_METRICS: tuple[str, ...] = tuple(d.acronym for d in _DESCRIPTORS if d.scope is _M)

# Ratio-valued metrics, checked against [0, 1] by the extractor's sanity pass.
UNIT_INTERVAL_METRICS = ("TCC", "LAA", "CDISP", "WOC", "DAM", "MFA")


def acronyms_for_scope(scope: Scope) -> tuple[str, ...]:
    """Column order for one scope: class block, then the method block."""
    if scope is Scope.CLASS:
        return CLASS_METRICS
    return CLASS_METRICS + METHOD_METRICS


def make_vector(entity: CodeEntityId, values: dict[str, float]) -> MetricVector:
    """Build a MetricVector, enforcing exact scope completeness."""
    expected = acronyms_for_scope(entity.scope)
    missing = [a for a in expected if a not in values]
    extra = [a for a in values if a not in expected]
    if missing or extra:
        raise ValueError(
            f"metric set mismatch for {entity}: missing={missing[:5]} extra={extra[:5]}"
        )
    return MetricVector(entity=entity, values={a: float(values[a]) for a in expected})
