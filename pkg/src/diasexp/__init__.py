"""diasexp: pattern-based syntactic analysis and dialogue over Romanian
assertive/interrogative sentences, with a toy CFG/CYK baseline."""

__version__ = "0.1.0"
