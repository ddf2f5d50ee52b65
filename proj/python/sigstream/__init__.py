"""Truncated path signatures for order-book streams."""

from sigstream._core import (
    AlgebraParams,
    FeatureRecord,
    FeatureTable,
    FeaturizeResult,
    GeneratorConfig,
    NormalizedStream,
    NumericError,
    OrderBookRow,
    OrderBookStream,
    ParseError,
    ProfileClass,
    Stream,
    TruncatedTensor,
    ValidationError,
    all_multi_indices,
    area,
    assemble_input,
    base_profile,
    concat_product,
    cross_variation,
    dotted,
    exp_of_increment,
    feature_count,
    featurize_streams,
    generate_dataset,
    generate_stream,
    lag_transform,
    lead_transform,
    log,
    normalize,
    parse_dotted,
    partial_lead_lag,
    profile_name,
    second_order_area,
    shuffle_product,
    stream_signature,
    unit_tensor,
    validate_order_book,
    validate_stream,
    zero_tensor,
)

__all__ = [
    "AlgebraParams",
    "FeatureRecord",
    "FeatureTable",
    "FeaturizeResult",
    "GeneratorConfig",
    "NormalizedStream",
    "NumericError",
    "OrderBookRow",
    "OrderBookStream",
    "ParseError",
    "ProfileClass",
    "Stream",
    "TruncatedTensor",
    "ValidationError",
    "all_multi_indices",
    "area",
    "assemble_input",
    "base_profile",
    "concat_product",
    "cross_variation",
    "dotted",
    "exp_of_increment",
    "feature_count",
    "featurize_streams",
    "generate_dataset",
    "generate_stream",
    "lag_transform",
    "lead_transform",
    "log",
    "normalize",
    "parse_dotted",
    "partial_lead_lag",
    "profile_name",
    "second_order_area",
    "shuffle_product",
    "stream_signature",
    "unit_tensor",
    "validate_order_book",
    "validate_stream",
    "zero_tensor",
]
