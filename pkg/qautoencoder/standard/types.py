"""Defines type aliases for the qautoencoder standard types."""

from typing import TypeAlias

import numpy as np
import xarray as xr

ComplexVector: TypeAlias = np.ndarray
"""ComplexVector is a 1D complex128 array of mode amplitudes."""

ComplexMatrix: TypeAlias = np.ndarray
"""ComplexMatrix is a 2D complex128 array acting on mode amplitudes."""

Seed: TypeAlias = int | np.random.SeedSequence | None
"""Seed is anything accepted by numpy.random.default_rng."""

QaeTrace: TypeAlias = xr.Dataset
"""QaeTrace is a training trace as a xarray.Dataset indexed by cost function evaluation."""
