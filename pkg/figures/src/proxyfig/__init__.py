"""Figure panels for simulation records.

Input is the CSV that ``proxyrd simulate`` writes; nothing here imports the
producing package, so the CSV contract is the entire coupling surface.
"""

from .render import RecordTable, RenderResult, load_records, render_figures

__all__ = ["RecordTable", "RenderResult", "load_records", "render_figures"]

__version__ = "0.1.0"
