"""Shared exception base for the package."""


class XbrlError(Exception):
    """Base class for every error raised by xbrlcore."""
