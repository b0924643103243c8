"""Figure scripts for the hybrid-circuit simulator's CSV/JSON outputs.

These are pure consumers: every number comes from the simulator CLI's files,
nothing is recomputed here beyond presentation geometry. Rendering is
deterministic for identical inputs and styling.
"""

import matplotlib

matplotlib.use("Agg")

__version__ = "0.1.0"
