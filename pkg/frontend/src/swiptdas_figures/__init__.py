"""Figure rendering for swiptdas sweep results.

Consumes only the sweep CSV files (and nothing from the solver library):
the CSV schema is the sole contract between the two packages.
"""

from .figures import SchemaError, load_sweep_csv, render_figures

__all__ = ["SchemaError", "load_sweep_csv", "render_figures"]
