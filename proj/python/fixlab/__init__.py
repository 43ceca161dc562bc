"""Super-metric contraction certificates, orbit diagnostics and the
terrain-following control loop.

The heavy lifting lives in the compiled extension ``fixlab._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    AuxiliaryMap,
    Certificate,
    ControlIterate,
    DomainEscapeError,
    ExampleFixture,
    FFunction,
    GammaSpec,
    IlcReport,
    NumericError,
    OdeCoefficients,
    PairTerms,
    PicardTrace,
    ScalarSpace,
    SelfMap,
    TerrainConfig,
    __version__,
    asymptotic_regularity,
    aux_map,
    build_example,
    builtin_f,
    builtin_f_names,
    certify,
    check_condition_i,
    contraction_ratio,
    decrement_bound,
    example_ids,
    finite_points_space,
    finite_table_space,
    fixed_points,
    ilc_step,
    interval_space,
    is_cauchy,
    pair_terms,
    picard_iterate,
    plant_apply,
    run_cli,
    run_examples,
    suggest_w3_exponent,
    orbit_continuity_diagnostic,
    terrain_simulate,
    verify_point_axioms,
    verify_relaxed_triangle,
)
