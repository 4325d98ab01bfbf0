r"""
The "holcert" library builds the Lorentzian metric attached to a subalgebra h of so(n) and certifies its holonomy.

The construction is carried out in exact rational arithmetic: the metric, its Christoffel symbols and the
covariant derivatives of the curvature are polynomials, the holonomy algebra is spanned by the curvature
operators at the origin and every intermediate identity is checked by a named check of the catalogue.
A floating point oracle cross-checks the exact tower by finite differences and by parallel transport.

"""

# %% Imports
from .checks import (
    CATALOGUE as CATALOGUE,
    check_names as check_names,
    CheckReport as CheckReport,
    CheckResult as CheckResult,
    CheckSpec as CheckSpec,
    MAX_WITNESSES as MAX_WITNESSES,
    run_checks as run_checks,
    select_checks as select_checks,
    SOURCES as SOURCES,
    Witness as Witness,
)
from .cli import (
    execute_verify as execute_verify,
    main as main,
    parse_verify_args as parse_verify_args,
    print_checks as print_checks,
    print_help as print_help,
    print_version as print_version,
)
from .config import (
    apply_overrides as apply_overrides,
    config_from_dict as config_from_dict,
    OracleSettings as OracleSettings,
    parse_config as parse_config,
    parse_permutation as parse_permutation,
    RunConfig as RunConfig,
)
from .curvature import (
    build_tower as build_tower,
    certify_holonomy as certify_holonomy,
    christoffel as christoffel,
    ChristoffelField as ChristoffelField,
    CurvatureTower as CurvatureTower,
    CurvTensor as CurvTensor,
    gh_labels as gh_labels,
    holonomy_algebra as holonomy_algebra,
    holonomy_generators as holonomy_generators,
    HolonomyCertificate as HolonomyCertificate,
    HolonomyGenerators as HolonomyGenerators,
    middle_block as middle_block,
    nabla as nabla,
    pruning_misses as pruning_misses,
    riemann as riemann,
    SIGN_NOTE as SIGN_NOTE,
)
from .enums import (
    CheckStatus as CheckStatus,
    EnumerationMode as EnumerationMode,
    IntEnumPlus as IntEnumPlus,
    LogLevel as LogLevel,
    ReturnCodes as ReturnCodes,
)
from .fixtures import (
    Fixture as Fixture,
    FIXTURES as FIXTURES,
    get_fixture as get_fixture,
    list_fixtures as list_fixtures,
    random_h as random_h,
)
from .liealg import (
    AlgebraSpan as AlgebraSpan,
    bracket as bracket,
    decompose_gh as decompose_gh,
    decompose_parabolic as decompose_parabolic,
    echelon_form as echelon_form,
    embed_gh as embed_gh,
    embed_parabolic as embed_parabolic,
    equal_span as equal_span,
    EtaForm as EtaForm,
    flatten as flatten,
    gh_basis as gh_basis,
    gh_bracket as gh_bracket,
    GhElement as GhElement,
    gram_eta as gram_eta,
    invariant_subspace as invariant_subspace,
    linear_span as linear_span,
    NotInStabilizerError as NotInStabilizerError,
    ParabolicElement as ParabolicElement,
    pr_so_n as pr_so_n,
    ProbeReport as ProbeReport,
    so_check as so_check,
    span_lie_closure as span_lie_closure,
    unflatten as unflatten,
    weak_irreducibility_probe as weak_irreducibility_probe,
)
from .logs import (
    activate_logging as activate_logging,
    deactivate_logging as deactivate_logging,
    flush_logging as flush_logging,
    log_multiline as log_multiline,
    log_timing as log_timing,
)
from .metric import (
    build_metric as build_metric,
    build_u as build_u,
    DOMAIN_NOTE as DOMAIN_NOTE,
    HSpec as HSpec,
    invert_metric as invert_metric,
    MetricField as MetricField,
    TYPO_NOTE as TYPO_NOTE,
)
from .oracle import (
    convergence_ratio as convergence_ratio,
    fd_christoffel as fd_christoffel,
    fd_riemann as fd_riemann,
    FloatPoint as FloatPoint,
    loop_transport as loop_transport,
    metric_at as metric_at,
    OracleError as OracleError,
    random_rational_points as random_rational_points,
    within_tolerance as within_tolerance,
)
from .paths import get_root_dir as get_root_dir, get_tests_dir as get_tests_dir, resolve_path as resolve_path
from .polycore import (
    arith as arith,
    constant_matrix as constant_matrix,
    constant_term as constant_term,
    CoordinateRing as CoordinateRing,
    evaluate as evaluate,
    evaluate_matrix as evaluate_matrix,
    from_text as from_text,
    identity_matrix as identity_matrix,
    is_constant as is_constant,
    is_zero_poly_matrix as is_zero_poly_matrix,
    matadd as matadd,
    matmul as matmul,
    partial as partial,
    Poly as Poly,
    PolyMatrix as PolyMatrix,
    to_text as to_text,
    total_degree as total_degree,
    zeros_matrix as zeros_matrix,
)
from .report import (
    emit_report as emit_report,
    load_report as load_report,
    report_to_dict as report_to_dict,
    report_to_json as report_to_json,
    report_to_text as report_to_text,
)
from .utils import (
    capture_output as capture_output,
    CaptureOutputResult as CaptureOutputResult,
    consecutive as consecutive,
    ConsistencyError as ConsistencyError,
    format_matrix as format_matrix,
    format_rational as format_rational,
    format_vector as format_vector,
    InputError as InputError,
    is_dunder as is_dunder,
    is_zero_matrix as is_zero_matrix,
    parse_matrix as parse_matrix,
    parse_rational as parse_rational,
    to_rational as to_rational,
)
from .version import version_info as version_info

# %% Constants
__version__ = ".".join(str(x) for x in version_info)

# %% Unit test
if __name__ == "__main__":
    pass
