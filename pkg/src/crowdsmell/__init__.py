"""Crowd-labelled code smell detection toolkit."""

__version__ = "0.1.0"

from .entities import CodeEntityId, MetricVector, Scope, SmellKind

__all__ = ["CodeEntityId", "MetricVector", "Scope", "SmellKind", "__version__"]
