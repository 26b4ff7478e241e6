"""Core functionality for photonchip."""

from .config import Config

__all__ = ["Config"]
