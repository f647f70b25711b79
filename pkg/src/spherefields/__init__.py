"""Volumes of unit vector fields on the sphere with two antipodal points removed.

The volume of a unit field ``v`` is the area of its image in the unit tangent
bundle. For a field with maximal pole index ``k`` it is bounded below by
``pi`` times the perimeter of the ellipse ``x^2/k^2 + y^2/(k-2)^2 = 1``, and the
fields ``Spin(k)`` (``theta = (k-1) beta``) attain the bound.
"""
from .analysis import (
    BoundReport,
    IndexReport,
    IndexUndetermined,
    bound_report,
    index_report,
    lower_bound,
    poincare_index,
    stokes_check,
    sweep,
    volume,
)
from .curvature import (
    CurvaturePair,
    connection_form_pullback,
    curvatures_closed,
    curvatures_expanded,
    volume_integrand,
)
from .descriptor import DescriptorError, load_descriptor, parse_descriptor
from .fields import (
    BumpSpec,
    GridField,
    NorthSouth,
    Perturbed,
    Spin,
    UnitField,
    evaluate,
    make_grid,
    perturb,
    random_bump,
    vector_components,
)
from .geometry import DomainError, SphericalPoint, area_element, connection_coefficient
from .quadrature import (
    ConvergenceError,
    QuadratureConfig,
    QuadratureResult,
    elliptic_E,
    ellipse_length,
    integrate_1d,
    integrate_sphere,
)

__version__ = "0.1.0"
