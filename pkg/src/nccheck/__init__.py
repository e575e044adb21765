"""nccheck: verification engine for finite-dimensional real spectral triples."""

__version__ = "0.1.0"
