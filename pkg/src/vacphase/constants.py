"""Physical constants. Phases are computed in natural units (hbar = 1)."""

SPEED_OF_LIGHT = 2.99792458e8  # m/s, exact SI value
HBAR = 1.0
