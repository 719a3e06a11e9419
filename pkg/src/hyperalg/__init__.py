"""Exact kernel for divided-power enveloping algebras over Z and GF(p)."""

__version__ = "0.1.0"
