"""Hybrid brick-wall circuit toolkit: Cartan-parameterized gates, projective
measurements, entanglement sweeps, and measurement-induced phase-transition
analysis."""

__version__ = "0.1.0"
