"""Exact computational algebra for XP stabiliser codes."""

from .xpop import XpOperator, make, parse_op, format_op

__all__ = ["XpOperator", "make", "parse_op", "format_op"]
