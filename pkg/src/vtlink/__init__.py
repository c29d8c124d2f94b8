"""Invariants of V-transverse links in circle bundles over surfaces."""

__version__ = "0.1.0"
