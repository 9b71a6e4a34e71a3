"""Exact cohomology and deformations of weighted Rota-Baxter LieDer and AssDer pairs."""

__version__ = "0.1.0"
