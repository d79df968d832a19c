"""Exact lazy power series, Puiseux field arithmetic, series ODE solving,
and divergence certificates, with a parser-driven CLI on top."""

from .fps import (
    SeriesU,
    SeriesM,
    shift_quotient,
    univariate_section,
    degree_monomials,
)
from .field import (
    PuiseuxSeries,
    BoxPoint,
    eval_box,
    compare,
    sign,
    equal_through,
    linear_combination,
    IndeterminateMembership,
    UndeterminedValuation,
)
from .complexfield import (
    ComplexPuiseux,
    DiscPoint,
    homog_decompose,
    coordinate_series,
    cr_check,
    CauchyRiemannReport,
    in_disc,
    eval_disc,
    diff_quotient_check,
    DifferenceQuotientReport,
)
from .ode import (
    LinearODE,
    FormalSolution,
    solve,
    residual,
    first_nonzero,
    taylor_uniqueness_witness,
)
from .divergence import (
    DivergenceCertificate,
    term_magnitude,
    certify_divergence,
    certify_term_decay,
)
from .expressions import (
    parse_expression,
    render_expression,
    evaluate,
    evaluate_text,
    parse_ode,
    ExprSyntaxError,
    EvaluationError,
)

__all__ = [
    "SeriesU",
    "SeriesM",
    "shift_quotient",
    "univariate_section",
    "degree_monomials",
    "PuiseuxSeries",
    "BoxPoint",
    "eval_box",
    "compare",
    "sign",
    "equal_through",
    "linear_combination",
    "IndeterminateMembership",
    "UndeterminedValuation",
    "ComplexPuiseux",
    "DiscPoint",
    "homog_decompose",
    "coordinate_series",
    "cr_check",
    "CauchyRiemannReport",
    "in_disc",
    "eval_disc",
    "diff_quotient_check",
    "DifferenceQuotientReport",
    "LinearODE",
    "FormalSolution",
    "solve",
    "residual",
    "first_nonzero",
    "taylor_uniqueness_witness",
    "DivergenceCertificate",
    "term_magnitude",
    "certify_divergence",
    "certify_term_decay",
    "parse_expression",
    "render_expression",
    "evaluate",
    "evaluate_text",
    "parse_ode",
    "ExprSyntaxError",
    "EvaluationError",
]

__version__ = "0.1.0"
