"""Test suite for rotor-arrival."""
