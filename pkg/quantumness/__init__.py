"""Accessible fidelity and quantumness of quantum-state ensembles."""

__version__ = "0.1.0"
