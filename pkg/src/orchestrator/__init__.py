"""Orchestrator package."""
from src.orchestrator.example_pipeline import STEPS, ExamplePipeline

__all__ = ["STEPS", "ExamplePipeline"]
