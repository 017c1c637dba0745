"""Partition similarity indices, including reduced mutual information and aligned kappa."""
