"""Test suite for the etech sweep harness."""
