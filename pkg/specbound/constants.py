from __future__ import annotations

from typing_extensions import Final

# Singular values below this are stored as exact zeros.
SUBNORMAL_FLOOR: Final = 1e-300

# Admissibility floors for points z in the determinant bounds.
Z_MODULUS_FLOOR: Final = 1e-10
SPECTRUM_DISTANCE_FLOOR: Final = 1e-8

# Relative slack a bound may be violated by before a check fails.
SLACK_TOL: Final = 1e-8

# Default tolerances of HEvaluator.
H_REL_TOL: Final = 1e-13
H_MAX_ITER: Final = 300
H_REL_TOL_CEILING: Final = 1e-6
LOG_R_BRACKET_LIMIT: Final = 1e4

# Exponential-class products stop at the first term below this.
EXPCLASS_TERM_CUTOFF: Final = 1e-18
EXPCLASS_MAX_TERMS: Final = 2_000_000

# Radii at which the Weyl product inequality is checked.
WEYL_RADII: Final = (0.1, 1.0, 10.0)

# Relative slack when checking singular values against a majorant.
MAJORANT_REL_TOL: Final = 1e-12

# Bit widths of the trial and delta fields of a trial key; the dimension
# occupies the bits above both.
TRIAL_KEY_DELTA_BITS: Final = 8
TRIAL_KEY_TRIAL_BITS: Final = 32
