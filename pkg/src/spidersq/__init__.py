"""Unitary spider diagrams: semantics, inference rules, proofs and search."""
