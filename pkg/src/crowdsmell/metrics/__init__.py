"""Metric computation over parsed Java projects."""

from .extract import compute_class_metrics, compute_method_metrics, extract_all

__all__ = ["compute_class_metrics", "compute_method_metrics", "extract_all"]
