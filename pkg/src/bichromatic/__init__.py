"""Bichromatic 2-center solvers for point pairs in the plane."""
