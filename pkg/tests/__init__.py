"""Test suite for simplex-step."""
