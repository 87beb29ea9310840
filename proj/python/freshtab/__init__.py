"""Fresh table-to-text benchmark construction and evaluation.

Thin Python surface over the C++ core: config handling, table extraction
and cleaning, operation sampling, prompt construction, diversity metrics
and significance statistics. The full pipeline (harvesting, insight
generation, judging) lives in the ``freshtab`` command-line tool.
"""

from freshtab._core import (
    CleanTable,
    PipelineConfig,
    RawTable,
    TableLimits,
    choice_prompt,
    clean_table,
    config_to_yaml,
    dataset_name,
    direct_prompt,
    entry_id,
    extract_tables,
    judge_prompt,
    load_config,
    logical_operations,
    parse_config,
    pearson,
    sample_operations,
    self_bleu4,
    serialize_table,
    shannon_entropy,
    tokenize,
    unique_tokens,
    z_test_proportions,
    __version__,
)

__all__ = [
    "CleanTable",
    "PipelineConfig",
    "RawTable",
    "TableLimits",
    "choice_prompt",
    "clean_table",
    "config_to_yaml",
    "dataset_name",
    "direct_prompt",
    "entry_id",
    "extract_tables",
    "judge_prompt",
    "load_config",
    "logical_operations",
    "parse_config",
    "pearson",
    "sample_operations",
    "self_bleu4",
    "serialize_table",
    "shannon_entropy",
    "tokenize",
    "unique_tokens",
    "z_test_proportions",
    "__version__",
]
