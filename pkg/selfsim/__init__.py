"""Self-similar groups, automata and their limit objects."""

__version__ = "1.0.0"
