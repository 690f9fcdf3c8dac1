"""Lie sphere geometry for oriented Apollonius problems in R^n.

Cycles (oriented spheres, oriented hyperplanes, point spheres) are lifted
to isotropic vectors of a signature (n+1, 2) form.  Oriented contact is
orthogonality, the Apollonius problem is a nullspace plus a pencil/quadric
intersection, and the concurrency results for Apollonius pairs reduce to
reflections in the common orthogonal vector P.
"""

from .apollonius import (
    Configuration,
    apollonius_pairs,
    compute_P,
    inscribed_sphere,
    p_x_point,
    solve_apollonius,
    verify_first_level,
    verify_inscribed,
    verify_second_level,
)
from .cycles import Hyperplane, PointAtInfinity, PointSphere, Sphere, lift, project, reverse
from .errors import LieGeometryError
from .lie import LieVec, lie_form
from .scenarios import ScenarioSpec, build_scenario, random_configuration, verify_scenario

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "Hyperplane",
    "LieGeometryError",
    "LieVec",
    "PointAtInfinity",
    "PointSphere",
    "ScenarioSpec",
    "Sphere",
    "__version__",
    "apollonius_pairs",
    "build_scenario",
    "compute_P",
    "inscribed_sphere",
    "lie_form",
    "lift",
    "p_x_point",
    "project",
    "random_configuration",
    "reverse",
    "solve_apollonius",
    "verify_first_level",
    "verify_inscribed",
    "verify_scenario",
    "verify_second_level",
]
