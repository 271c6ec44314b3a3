"""Exact split Grothendieck ring computations for reflection-generated
Soergel-type bimodule categories in type A2, with B2/A3 checks."""

__version__ = "0.1.0"
