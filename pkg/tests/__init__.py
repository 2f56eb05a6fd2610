"""Test package for the conditional logic workbench."""
