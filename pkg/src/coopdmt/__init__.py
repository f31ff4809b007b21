"""Outage and diversity-multiplexing tradeoff toolkit for cooperative relaying."""

__version__ = "0.1.0"
