"""claimforge: learned token-edit query rewriting for claim retrieval."""

__version__ = "0.1.0"
