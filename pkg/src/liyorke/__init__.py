"""Numerics for a skew-product system that is Li-Yorke sensitive without
being Li-Yorke chaotic."""
