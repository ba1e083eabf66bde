"""View interfaces for the Omega_A toolkit."""

from .base_view import BaseView

__all__ = ["BaseView"]
