"""QHDL: compiler and clocked state-vector simulator for gate-level quantum circuits."""

__version__ = "0.1.0"
