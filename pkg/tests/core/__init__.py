"""Test suite for etech core components."""
