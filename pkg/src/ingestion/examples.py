"""Built-in worked examples, shipped as configuration documents."""
from copy import deepcopy
from typing import Dict, Tuple

from src.ingestion.config_document import ConfigDocument
from src.utils.errors import ConfigError

# Rapidly varying weights with a rational, odd reaction term; p ranges over [3, 5].
_STEEP_INSTANCE = {
    "T": 10,
    "w": "exp(k*(10-k)^2)",
    "q": "2^k",
    "p": "2*k/11+3",
    "f": "exp((k+2)*(k-13))*x/(x^2+1e-11)^2",
    "F": "1e11/2*exp((k+2)*(k-13))*t^2/(t^2+1e-11)",
    "df": "exp((k+2)*(k-13))*(1e-11-3*x^2)/(x^2+1e-11)^3",
    "growth": {"c0": 0.000012, "alpha": 2},
}

EXAMPLES: Dict[str, dict] = {
    "ex3.3": {
        "label": "ex3.3",
        "instance": _STEEP_INSTANCE,
        "run": {"theorem": "T3.2", "c1": 1e-9, "c2": 1e9, "d": 1e-5, "lambda": 1.0},
        "reference_values": [
            {"theorem": "T3.2", "quantity": "a_d_c1", "value": 30898916.775, "label": "a_d(c1)"},
            {"theorem": "T3.2", "quantity": "a_d_c2", "value": 0.009, "label": "a_d(c2)"},
            {"theorem": "T3.2", "quantity": "candidate_lower", "value": 0.000000033, "label": "lambda lower"},
            {"theorem": "T3.2", "quantity": "candidate_upper", "value": 111.0, "label": "lambda upper"},
        ],
    },
    "ex3.7": {
        "label": "ex3.7",
        "instance": {
            "T": 10,
            "w": 1,
            "q": 1,
            "p": "k+3",
            "separable": {
                "beta": 1,
                "g": "1/((400*x)^2+1)",
                "G": "atan(400*t)/400",
                "dg": "-320000*x/((400*x)^2+1)^2",
            },
            "growth": {"c0": 0.0039, "alpha": 2},
        },
        "run": {
            "theorem": "T1.1",
            "c": 17.1,
            "d": 0.1,
            "lambda": 1.0,
            "lambda_grid": {"lo": 0.1035061724, "hi": 67.87674577, "n": 16, "log": True},
        },
        "reference_values": [
            {"theorem": "T1.1", "quantity": "candidate_lower", "value": 0.1035061724, "label": "lambda lower"},
            {"theorem": "T1.1", "quantity": "candidate_upper", "value": 67.87674577, "label": "lambda upper"},
        ],
    },
    "ex3.10": {
        "label": "ex3.10",
        "instance": _STEEP_INSTANCE,
        "run": {"theorem": "T3.8", "c3": 0.05, "d": 5e-10, "lambda": 1.0, "solver": {"method": "minimize"}},
        "reference_values": [
            {"theorem": "T3.8", "quantity": "F5_lhs", "value": 2.086867833e13, "label": "growth side of F5"},
            {"theorem": "T3.8", "quantity": "F5_rhs", "value": 1.338709020e16, "label": "dhat^-1 sum F(k,d)"},
            {"theorem": "T3.8", "quantity": "candidate_lower", "value": 7.469883186e-17, "label": "lambda lower"},
            {
                "theorem": "C3.9",
                "quantity": "candidate_upper",
                "value": 4.791870305e-14,
                "label": "three-solution upper",
            },
        ],
    },
}

EXAMPLE_IDS: Tuple[str, ...] = tuple(EXAMPLES)


def example_document(example_id: str) -> ConfigDocument:
    """Validated configuration document of a built-in example."""
    if example_id not in EXAMPLES:
        raise ConfigError(
            f"unknown example {example_id!r}; expected one of {', '.join(EXAMPLE_IDS)}",
            example=example_id,
        )
    return ConfigDocument.from_dict(deepcopy(EXAMPLES[example_id]), source=example_id)
