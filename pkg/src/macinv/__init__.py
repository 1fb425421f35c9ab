"""Exact computations with Macaulay inverse systems."""
