"""Core identity and measurement types shared by every module."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Scope(enum.Enum):
    CLASS = "class"
    METHOD = "method"


class SmellKind(enum.Enum):
    GOD_CLASS = "god_class"
    LONG_METHOD = "long_method"
    FEATURE_ENVY = "feature_envy"

    @property
    def scope(self) -> Scope:
        return Scope.CLASS if self is SmellKind.GOD_CLASS else Scope.METHOD


@dataclass(frozen=True, order=True)
class CodeEntityId:
    """Identity of one measured code entity.

    ``method_signature`` is ``name(Type1,Type2)`` with ordered parameter type
    names; it is present exactly for method-scope entities.
    """

    project: str
    package: str
    class_name: str
    method_signature: str | None = None

    @property
    def scope(self) -> Scope:
        return Scope.CLASS if self.method_signature is None else Scope.METHOD

    def __str__(self) -> str:
        base = f"{self.project}/{self.package}.{self.class_name}"
        if self.method_signature is not None:
            base += f"#{self.method_signature}"
        return base


@dataclass
class MetricVector:
    """Named real-valued measurements for one entity.

    ``values`` holds exactly the registry acronyms for the entity's scope;
    construction through :func:`crowdsmell.registry.make_vector` enforces it.
    """

    entity: CodeEntityId
    values: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, acronym: str) -> float:
        return self.values[acronym]
