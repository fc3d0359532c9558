"""Toolkit for surface braid group computations: presentations,
identity certificates, finite subgroup classification, and covering
space lifts."""

__version__ = "0.1.0"
