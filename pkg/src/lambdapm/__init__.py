"""Partial-metric distances for lambda terms, Boehm approximants, resource
terms, Taylor expansions and finite Scott domains, with exact arithmetic."""

__version__ = "0.1.0"
