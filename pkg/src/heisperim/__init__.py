"""Sub-Riemannian perimeter toolkit for three-dimensional Heisenberg geometry.

Public surface: group arithmetic and gauge distance, implicit surfaces and
vertical graphical strips, the tangential horizontal calculus with its
identity verifiers, two-path perimeter quadrature inside gauge balls, and
delimited/JSON reporting.
"""

from .calculus import (
    ChartBump,
    CutoffSpec,
    IdentityReport,
    SUITE_TOLERANCES,
    TangentialGradient,
    Y_derivative,
    TY_operator,
    c_HS,
    div_HS,
    gauge_dilation_term,
    gauge_dilation_term_reduced,
    identity_suite,
    sample_strip_points,
    tangential_gradient,
    verify_divergence_identity,
    verify_gauge_dilation_bound,
    verify_gauge_homogeneity,
    verify_growth_inequality,
    verify_horizontal_ibp,
    verify_tangential_divergence,
    verify_torsion_orthogonality,
    verify_vertical_balance,
    verify_vertical_ibp,
)
from .errors import (
    CharacteristicPointError,
    DomainError,
    GraphValidationError,
    HeisperimError,
    QuadratureError,
)
from .fields import (
    Gradient,
    Hessian,
    HorizontalField,
    HorizontalVector,
    ScalarField,
    constant_field,
    coordinate_t_field,
    f_field,
    frame_derivative,
    frame_second,
    gauge_field,
    generator_apply,
    horizontal_gradient,
    hvec,
    rho_field,
    zeta_field,
)
from .group import (
    GroupParams,
    Point,
    dilate,
    gauge_distance,
    gauge_norm,
    group_inverse,
    group_multiply,
    origin,
    point,
)
from .perimeter import (
    MonotonicityCertificate,
    ProfileRow,
    ProfileTable,
    Q_HOMOGENEOUS,
    ball_slice_bounds,
    check_ball_inside,
    inner_integral,
    large_r_correction,
    mollified_perimeter,
    monotonicity_check,
    omega_constant,
    perimeter_in_ball,
    profile,
    small_r_limit,
)
from .prng import SplitMix64
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    QuadResult,
    gauss_legendre_2d,
    gauss_legendre_nodes,
    integrate,
    integrate_adaptive,
    integrate_tanhsinh,
)
from .report import (
    CSV_HEADER,
    fmt17,
    parse_profile_csv,
    plot_profile,
    plot_verify,
    profile_csv,
    profile_json,
    verify_json,
    write_profile_csv,
)
from .surface import (
    BUILTIN_GRAPHS,
    DEFAULT_CHAR_TOL,
    FrameData,
    GraphFunction,
    GraphicalStrip,
    ImplicitSurface,
    StripCertificate,
    angle_function,
    graph_arctan,
    graph_cubic,
    graph_linear,
    graph_tanh,
    graph_zero,
    h_mean_curvature,
    horizontal_gauss_map,
    implicit_normal_components,
    is_characteristic,
    nu_perp,
    strip_chart,
    strip_perimeter_density,
    validate_graphical_strip,
)

__version__ = "0.1.0"
