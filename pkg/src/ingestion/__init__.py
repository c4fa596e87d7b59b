"""Ingestion package: configuration documents, built-in examples and instance assembly."""
from src.ingestion.config_document import (
    ConfigDocument,
    InstanceSpec,
    LambdaGrid,
    ReferenceValue,
    RunSpec,
    config_schema,
    load_config,
)
from src.ingestion.examples import EXAMPLE_IDS, EXAMPLES, example_document
from src.ingestion.instance_builder import build_instance, build_nonlinearity

__all__ = [
    "ConfigDocument",
    "InstanceSpec",
    "LambdaGrid",
    "ReferenceValue",
    "RunSpec",
    "config_schema",
    "load_config",
    "EXAMPLE_IDS",
    "EXAMPLES",
    "example_document",
    "build_instance",
    "build_nonlinearity",
]
