"""Exact verification of Rota-Baxter systems on finite-dimensional cocommutative Hopf algebras."""

__version__ = "0.1.0"
