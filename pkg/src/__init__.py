"""Certification and solution of discrete anisotropic p(k)-Laplacian Dirichlet problems."""
