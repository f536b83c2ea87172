"""Odd-dimension qudit phase-space simulation."""
