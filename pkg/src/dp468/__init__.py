"""Verification toolkit for DP-3-colouring of plane graphs without 4-, 6- and 8-cycles."""

__version__ = "0.1.0"
