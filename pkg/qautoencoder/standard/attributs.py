"""Store all default attributs for the qautoencoder xarray variables."""

from __future__ import annotations

from qautoencoder.standard.units import StandardUnitsLabels

eval_index_desc = {
    "long_name": "cost function evaluation",
    "description": "1-based index of the cost function evaluation (one pass of all training states).",
}
"""dict: Evaluation index attributs."""

parameter_desc = {
    "long_name": "wave plate parameter",
    "description": "1-based label of the trainable wave plate angle in the mesh.",
}

cost_desc = {
    "long_name": "measured cost",
    "standard_name": "junk_mode_occupation",
    "description": "Junk mode occupation probability averaged over the training states.",
    "units": str(StandardUnitsLabels.probability.units),
}
"""dict: Cost attributs."""

angles_desc = {
    "long_name": "wave plate angles",
    "description": "Orientation of each trainable wave plate, wrapped into [0, 360).",
    "units": str(StandardUnitsLabels.angle.units),
}

iteration_desc = {
    "long_name": "training iteration",
    "description": "Index of the probe and move cycle the record belongs to.",
}

phase_desc = {
    "long_name": "training phase",
    "description": "init, probe:k (k-th parameter rotated) or move (base point after a movement).",
}

events_desc = {
    "long_name": "training events",
    "description": "Semicolon separated events among kick, drift and phase_switch.",
}

mean_cost_desc = {
    "long_name": "mean cost",
    "description": "Mean over runs of the cost, held at the last measured value after a run stops.",
    "units": str(StandardUnitsLabels.probability.units),
}

std_cost_desc = {
    "long_name": "cost standard deviation",
    "description": "Standard deviation over runs of the cost, held at the last measured value after a run stops.",
    "units": str(StandardUnitsLabels.probability.units),
}

test_probability_desc = {
    "long_name": "test junk probability",
    "description": "Junk mode occupation probability of a fresh state from the family.",
    "units": str(StandardUnitsLabels.probability.units),
}
