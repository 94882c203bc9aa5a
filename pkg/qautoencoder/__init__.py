"""Qautoencoder: simulation and training of a photonic quantum autoencoder."""

__version__ = "0.1.0"
