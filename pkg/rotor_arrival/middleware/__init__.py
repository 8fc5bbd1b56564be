"""Logging middleware for CLI commands."""
