"""Shared algebra, configuration, reporting and command infrastructure."""
