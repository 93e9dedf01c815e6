"""Command-line interface and expression language."""
