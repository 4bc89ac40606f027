"""Rotating-plane cross-sections of 3-colored line arrangements with simultaneous bisectors."""
