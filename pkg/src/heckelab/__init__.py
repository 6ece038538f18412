"""Exact Hecke-modification classification on P^1 over finite fields."""

__version__ = "0.1.0"
