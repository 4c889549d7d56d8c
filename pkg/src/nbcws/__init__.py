"""Nonbinary codeword-stabilized quantum codes: construction, verification, clique search."""

__version__ = "0.1.0"
