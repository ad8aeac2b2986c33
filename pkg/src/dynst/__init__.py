"""Dynamic Steiner tree maintenance over near-metric oracles."""

__version__ = "0.1.0"
