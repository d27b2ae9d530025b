"""Numerics for zero modes of the two-dimensional Pauli operator with sector and
radially homogeneous magnetic fields of infinite flux."""
