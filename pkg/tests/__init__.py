"""Test package for dyncluster."""
