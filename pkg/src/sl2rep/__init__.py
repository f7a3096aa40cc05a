"""Representation-theoretic verification toolkit for sl2-symmetric Schrödinger equations."""

__version__ = "0.1.0"
