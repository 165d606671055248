"""Multiplicity bounds for systems of polynomial equations."""
