"""maskbias: template-based gender-bias measurement over MLM pre-training checkpoints."""

__version__ = "0.1.0"

from .metrics import (
    FluctuationSummary,
    MetricError,
    PlateauConfig,
    bias_ratio,
    certainty,
    coefficient_of_variation,
    fluctuation_summary,
    normalized_ratio,
    pearson,
)
from .templates import (
    PRIOR_MASK,
    Profession,
    ProfessionList,
    TemplateSpec,
    choose_determiner,
    enumerate_probe_set,
    load_professions,
    render_template,
)

__all__ = [
    "__version__",
    "FluctuationSummary",
    "MetricError",
    "PlateauConfig",
    "PRIOR_MASK",
    "Profession",
    "ProfessionList",
    "TemplateSpec",
    "bias_ratio",
    "certainty",
    "choose_determiner",
    "coefficient_of_variation",
    "enumerate_probe_set",
    "fluctuation_summary",
    "load_professions",
    "normalized_ratio",
    "pearson",
    "render_template",
]
