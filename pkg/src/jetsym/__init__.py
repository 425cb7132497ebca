"""Symmetry analysis of scalar evolution PDEs in two independent variables."""
