"""Verify model-written reasoning chains with first-order entailment checks."""

__version__ = "0.1.0"
