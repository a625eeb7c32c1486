"""Exact computation of vanishing-element proportions in finite groups,
with a structural classifier for the low-proportion regime and an
independent character-table oracle for cross-validation."""

__version__ = "0.1.0"
