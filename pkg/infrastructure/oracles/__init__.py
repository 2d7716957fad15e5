"""Brute-force oracles."""
