"""Rendering of polidyn scenario outputs.

This package draws figures from the CSV files and summary JSON emitted
by the simulation component.  It computes nothing: every reference line
(equilibrium shares, thresholds, floors) is read from the summary JSON,
so the plots cannot disagree with the data by construction.
"""

from .figures import FigureSpec, MissingColumn, EmptyInput, render
from .build import specs_from_summary

__version__ = "1.0.0"
