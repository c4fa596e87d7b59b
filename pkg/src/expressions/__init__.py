"""Expression language for configuration documents."""
from src.expressions.parser import CONSTANTS, FUNCTIONS, VARIABLES, Expression, parse_expression

__all__ = ["CONSTANTS", "FUNCTIONS", "VARIABLES", "Expression", "parse_expression"]
