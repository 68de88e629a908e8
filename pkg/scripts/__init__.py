"""Utility scripts for GDLZ."""
