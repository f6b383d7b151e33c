"""Catalog ``.lie`` files."""
