"""Test suite for GDLZ."""
