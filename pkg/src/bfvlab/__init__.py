"""Exact homological algebra for coisotropic deformations of Poisson structures."""
