"""Exact certificates for lattice embeddings into products of Lie groups and
Diestel-Leader isometry groups."""

__version__ = "0.1.0"
