"""Configuration documents: problem data, run parameters and output options."""
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union
import json
import logging

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.expressions import parse_expression
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

# A profile in k: a constant, an expression string or an explicit array.
Profile = Union[float, str, List[float]]


def _check_expression(value, variables, field_name: str):
    """Parse string values so syntax and identifier errors surface at load time."""
    if isinstance(value, str):
        parse_expression(value, variables)
    elif isinstance(value, list) and not value:
        raise ValueError(f"{field_name} must not be an empty array")
    return value


class SeparableSpec(BaseModel):
    """f(k, x) = beta(k) g(x) with optional primitive G and derivative dg."""

    model_config = ConfigDict(extra="forbid")

    beta: Profile = 1.0
    g: str
    G: Optional[str] = None
    dg: Optional[str] = None

    @field_validator("beta")
    @classmethod
    def _beta(cls, v):
        return _check_expression(v, ("k",), "beta")

    @field_validator("g", "dg")
    @classmethod
    def _in_x(cls, v):
        return _check_expression(v, ("x",), "g")

    @field_validator("G")
    @classmethod
    def _in_t(cls, v):
        return _check_expression(v, ("t",), "G")


class GrowthSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    c0: float = Field(gt=0)
    alpha: Profile = 2.0

    @field_validator("alpha")
    @classmethod
    def _alpha(cls, v):
        return _check_expression(v, ("k",), "alpha")


class InstanceSpec(BaseModel):
    """Problem data; exactly one of ``f`` and ``separable`` must be given."""

    model_config = ConfigDict(extra="forbid")

    T: int = Field(ge=1)
    w: Profile = 1.0
    q: Profile = 1.0
    p: Profile
    f: Optional[str] = None
    F: Optional[str] = None
    df: Optional[str] = None
    separable: Optional[SeparableSpec] = None
    growth: Optional[GrowthSpec] = None

    @field_validator("w", "q", "p")
    @classmethod
    def _profiles(cls, v, info):
        return _check_expression(v, ("k",), info.field_name)

    @field_validator("f", "df")
    @classmethod
    def _reaction(cls, v, info):
        return _check_expression(v, ("k", "x"), info.field_name)

    @field_validator("F")
    @classmethod
    def _primitive(cls, v):
        return _check_expression(v, ("k", "t"), "F")

    @model_validator(mode="after")
    def _one_nonlinearity(self):
        if (self.f is None) == (self.separable is None):
            raise ValueError("exactly one of 'f' and 'separable' must be given")
        if self.separable is not None and (self.F is not None or self.df is not None):
            raise ValueError("'F' and 'df' belong inside 'separable' as 'G' and 'dg'")
        return self


class LambdaGrid(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lo: float
    hi: float
    n: int = Field(ge=1)
    log: bool = False

    @model_validator(mode="after")
    def _ordered(self):
        if not self.lo < self.hi:
            raise ValueError(f"lambda grid needs lo < hi, got {self.lo} >= {self.hi}")
        if self.log and self.lo <= 0:
            raise ValueError("a logarithmic lambda grid needs lo > 0")
        return self


class SolverSpec(BaseModel):
    """Overrides for the solver settings; unset fields keep the configured defaults."""

    model_config = ConfigDict(extra="forbid")

    method: Literal["newton", "minimize"] = "newton"
    tol: Optional[float] = Field(default=None, gt=0)
    max_iter: Optional[int] = Field(default=None, ge=1)
    descent_max_iter: Optional[int] = Field(default=None, ge=1)


class RunSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    theorem: Optional[str] = None
    c: Optional[float] = None
    c1: Optional[float] = None
    c2: Optional[float] = None
    c3: Optional[float] = None
    d: Optional[float] = None
    lam: Optional[float] = Field(default=None, alias="lambda")
    lambda_grid: Optional[LambdaGrid] = None
    solver: SolverSpec = Field(default_factory=SolverSpec)
    seed: int = 0
    n_starts: int = Field(default=8, ge=1)
    n_cases: int = Field(default=1000, ge=1)

    def params(self) -> Dict[str, Optional[float]]:
        return {"c": self.c, "c1": self.c1, "c2": self.c2, "c3": self.c3, "d": self.d}


class OutputSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["json", "csv"] = "json"
    path: Optional[str] = None


class ReferenceValue(BaseModel):
    """A published number to compare against a recomputed report quantity."""

    model_config = ConfigDict(extra="forbid")

    theorem: str
    quantity: str
    value: float
    label: str = ""


class ConfigDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str = ""
    instance: InstanceSpec
    run: RunSpec = Field(default_factory=RunSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    reference_values: List[ReferenceValue] = Field(default_factory=list)

    @classmethod
    def from_json(cls, text: str, source: str = "<string>") -> "ConfigDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            logger.error(f"Config {source} is not valid JSON: {e}")
            raise ConfigError(f"{source}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", source=source)
        return cls.from_dict(data, source)

    @classmethod
    def from_dict(cls, data: dict, source: str = "<dict>") -> "ConfigDocument":
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            problems = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
            logger.error(f"Config {source} failed validation: {'; '.join(problems)}")
            raise ConfigError(f"{source}: invalid configuration", source=source, problems=problems)


def load_config(path: Union[str, Path]) -> ConfigDocument:
    """Read and validate a JSON configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot read config {path}: {e}")
        raise ConfigError(f"cannot read config file {path}: {e.strerror}", path=str(path))
    return ConfigDocument.from_json(text, source=str(path))


def config_schema() -> dict:
    """JSON schema of the configuration document."""
    return ConfigDocument.model_json_schema(by_alias=True)
