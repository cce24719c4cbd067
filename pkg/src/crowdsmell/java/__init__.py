"""Java 8 source front end: lexer, structural parser, project model."""

from .model import ProjectModel, parse_project

__all__ = ["ProjectModel", "parse_project"]
