"""Exact computational toolkit for curve-curve incidences in 3-space."""
