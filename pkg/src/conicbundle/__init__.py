"""Exact analysis of real conic bundle threefolds branched over a (2,2)-divisor."""
