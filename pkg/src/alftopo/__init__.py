"""Axiomatic digital topology: locally finite spaces, cell complexes, adjacency pairs."""
