"""Test suite for the relative position toolkit."""
