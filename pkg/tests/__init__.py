"""Test suite for the etech package."""
