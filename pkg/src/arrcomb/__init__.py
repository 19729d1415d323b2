"""Exact face and level enumeration for deformed braid and type-B arrangements,
with machine verification of the associated counting identities."""

__version__ = "0.1.0"
