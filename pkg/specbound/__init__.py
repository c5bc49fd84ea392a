"""
Bounds on the distance between the spectra of two matrices in terms of the
size of their difference and their singular values.
"""
from __future__ import annotations

from importlib_metadata import version

__version__ = version("specbound")

# Imported after __version__, which cmdline reads from here.
from specbound.bounds import (  # noqa: E402
    corollary_bound,
    directed_bound,
    elsner_bound,
    main_bound,
    profile_bound,
    reference_asymptote,
)
from specbound.detbounds import (  # noqa: E402
    det_perturbation,
    lower_bound_check,
    truncation_study,
    upper_bound_check,
)
from specbound.growth import from_matrix  # noqa: E402
from specbound.hmap import HEvaluator, h_eval  # noqa: E402
from specbound.linalg import (  # noqa: E402
    ComplexMatrix,
    SingularProfile,
    eigenvalues,
    singular_values,
)
from specbound.report import BoundReport  # noqa: E402
from specbound.spectra import SpectrumSet, hausdorff  # noqa: E402

__all__ = [
    "BoundReport",
    "ComplexMatrix",
    "HEvaluator",
    "SingularProfile",
    "SpectrumSet",
    "corollary_bound",
    "det_perturbation",
    "directed_bound",
    "eigenvalues",
    "elsner_bound",
    "from_matrix",
    "h_eval",
    "hausdorff",
    "lower_bound_check",
    "main_bound",
    "profile_bound",
    "reference_asymptote",
    "singular_values",
    "truncation_study",
    "upper_bound_check",
]
