"""Turn a validated configuration document into a ProblemInstance."""
from typing import Callable, Optional, Union
import logging

import numpy as np

from src.expressions import parse_expression
from src.ingestion.config_document import ConfigDocument, InstanceSpec, Profile
from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


def _profile(value: Profile, name: str) -> Union[Callable, float, np.ndarray]:
    """Expressions become callables of k; constants and arrays pass through."""
    if isinstance(value, str):
        return parse_expression(value, ("k",)).bind("k")
    if isinstance(value, list):
        return np.asarray(value, dtype=float)
    return float(value)


def _indexed_by_k(value: Profile, T: int, name: str) -> Callable:
    """A vectorised callable beta(k) for k in 1..T, whatever form the profile takes."""
    if isinstance(value, str):
        return parse_expression(value, ("k",)).bind("k")
    if isinstance(value, list):
        if len(value) != T:
            raise ConfigError(f"{name} has {len(value)} entries, expected {T} (k=1..{T})", field=name)
        table = np.concatenate(([np.nan], np.asarray(value, dtype=float)))

        def lookup(k):
            return table[np.asarray(k, dtype=int)]

        return lookup
    constant = float(value)

    def const(k):
        return np.full(np.shape(k), constant)

    return const


def _expression(src: Optional[str], *variables: str) -> Optional[Callable]:
    if src is None:
        return None
    return parse_expression(src, variables).bind(*variables)


def build_nonlinearity(spec: InstanceSpec, label: str = "") -> Nonlinearity:
    growth = None
    if spec.growth is not None:
        growth = GrowthCertificate.build(spec.growth.c0, _profile(spec.growth.alpha, "alpha"), spec.T)

    if spec.separable is not None:
        sep = spec.separable
        return Nonlinearity.from_separable(
            beta=_indexed_by_k(sep.beta, spec.T, "beta"),
            g=_expression(sep.g, "x"),
            G=_expression(sep.G, "t"),
            dg=_expression(sep.dg, "x"),
            growth=growth,
            label=label or f"beta(k) * ({sep.g})",
        )
    return Nonlinearity(
        f=_expression(spec.f, "k", "x"),
        F=_expression(spec.F, "k", "t"),
        df=_expression(spec.df, "k", "x"),
        growth=growth,
        label=label or spec.f,
    )


def build_instance(doc: Union[ConfigDocument, InstanceSpec], lam: Optional[float] = None) -> ProblemInstance:
    """Evaluate every profile of the document on its index range."""
    spec = doc.instance if isinstance(doc, ConfigDocument) else doc
    label = doc.label if isinstance(doc, ConfigDocument) else ""
    if lam is None and isinstance(doc, ConfigDocument):
        lam = doc.run.lam
    logger.debug(f"Building instance T={spec.T} ({label or 'unlabelled'})")
    return ProblemInstance.build(
        spec.T,
        _profile(spec.w, "w"),
        _profile(spec.q, "q"),
        _profile(spec.p, "p"),
        build_nonlinearity(spec, label),
        lam,
    )
