"""Bundled run configurations with reference decoding data."""
