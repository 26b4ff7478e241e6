"""SVG output."""

from .figures import FigureWriter

__all__ = ["FigureWriter"]
