"""Problem data for the discrete anisotropic p(k)-Laplacian Dirichlet problem."""
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Union
import logging
import math

import numpy as np

from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Profile = Union[Callable[[int], float], Sequence[float], np.ndarray, float]

# Points used to sanity-check f, F and the separable factorisation.
SAMPLE_POINTS = np.array(
    [0.0, 1e-9, -1e-9, 1e-6, -1e-6, 1e-3, -1e-3, 0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 10.0, -10.0, 1e3, -1e3]
)

GROWTH_HOLDS = "holds"
GROWTH_VIOLATED = "violated"
GROWTH_UNVERIFIABLE = "unverifiable-beyond-probe-range"


def _broadcast(values, shape) -> np.ndarray:
    return np.array(np.broadcast_to(np.asarray(values, dtype=float), shape), dtype=float)


@dataclass(frozen=True)
class SeparableForm:
    """f(k, x) = beta(k) * g(x); G is the primitive of g when known in closed form."""

    beta: Callable
    g: Callable
    G: Optional[Callable] = None
    dg: Optional[Callable] = None

    def beta_values(self, ks) -> np.ndarray:
        ks = np.asarray(ks)
        return _broadcast(self.beta(ks), ks.shape)

    def g_values(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return _broadcast(self.g(xs), xs.shape)


@dataclass(frozen=True)
class Nonlinearity:
    """The reaction term f(k, x) and, optionally, its primitive and derivative.

    Callables take numpy arrays (or scalars) ``k`` and ``x`` of matching shape.
    """

    f: Callable
    F: Optional[Callable] = None
    df: Optional[Callable] = None
    separable: Optional[SeparableForm] = None
    growth: Optional["GrowthCertificate"] = None
    label: str = ""

    @classmethod
    def from_separable(
        cls,
        beta: Callable,
        g: Callable,
        G: Optional[Callable] = None,
        dg: Optional[Callable] = None,
        growth: Optional["GrowthCertificate"] = None,
        label: str = "",
    ) -> "Nonlinearity":
        """Build f = beta * g (and F = beta * G, df = beta * dg when available)."""
        form = SeparableForm(beta=beta, g=g, G=G, dg=dg)

        def f(k, x):
            return form.beta_values(k) * form.g_values(x)

        F = None
        if G is not None:
            def F(k, t):
                t = np.asarray(t, dtype=float)
                return form.beta_values(k) * _broadcast(G(t), t.shape)

        df = None
        if dg is not None:
            def df(k, x):
                x = np.asarray(x, dtype=float)
                return form.beta_values(k) * _broadcast(dg(x), x.shape)

        return cls(f=f, F=F, df=df, separable=form, growth=growth, label=label)

    def f_values(self, ks, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        ks = np.broadcast_to(np.asarray(ks), xs.shape)
        return _broadcast(self.f(ks, xs), xs.shape)

    def df_values(self, ks, xs) -> Optional[np.ndarray]:
        if self.df is None:
            return None
        xs = np.asarray(xs, dtype=float)
        ks = np.broadcast_to(np.asarray(ks), xs.shape)
        return _broadcast(self.df(ks, xs), xs.shape)

    def with_growth(self, growth: "GrowthCertificate") -> "Nonlinearity":
        return replace(self, growth=growth)


@dataclass(frozen=True, eq=False)
class GrowthCertificate:
    """Sub-critical growth data: F(k,t) <= c0 (1 + |t|^alpha(k)).

    ``alpha`` is indexed by k directly (entry 0 unused).
    """

    c0: float
    alpha: np.ndarray
    verified: Optional[str] = None

    @classmethod
    def build(cls, c0: float, alpha: Profile, T: int) -> "GrowthCertificate":
        values = np.full(T + 1, np.nan)
        values[1:] = _profile_values(alpha, range(1, T + 1), "alpha")
        values.setflags(write=False)
        return cls(c0=float(c0), alpha=values)

    @property
    def T(self) -> int:
        return self.alpha.size - 1

    @property
    def alpha_plus(self) -> float:
        return float(np.max(self.alpha[1:]))

    @property
    def alpha_minus(self) -> float:
        return float(np.min(self.alpha[1:]))

    def with_verdict(self, status: str) -> "GrowthCertificate":
        return replace(self, verified=status)


def _profile_values(profile: Profile, ks, name: str) -> np.ndarray:
    ks = list(ks)
    if callable(profile):
        return np.array([float(profile(k)) for k in ks], dtype=float)
    if np.isscalar(profile):
        return np.full(len(ks), float(profile))
    values = np.asarray(profile, dtype=float).ravel()
    if values.size != len(ks):
        raise ConfigError(
            f"{name} has {values.size} entries, expected {len(ks)} (k={ks[0]}..{ks[-1]})",
            field=name,
        )
    return values


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Full data (T, w, q, p, f, lambda) of the Dirichlet problem.

    Arrays are indexed by k directly: ``w[k]`` for k in [0,T], ``q[k]`` and
    ``p[k]`` for k in [0,T+1] (``q[0]`` is unused and stored as NaN).
    """

    T: int
    w: np.ndarray
    q: np.ndarray
    p: np.ndarray
    nonlinearity: Nonlinearity
    lam: Optional[float] = None

    @classmethod
    def build(
        cls,
        T: int,
        w: Profile,
        q: Profile,
        p: Profile,
        nonlinearity: Nonlinearity,
        lam: Optional[float] = None,
    ) -> "ProblemInstance":
        """Evaluate profiles on their index ranges and assemble the instance.

        ``q`` given as a sequence may have T+1 entries (k=1..T+1) or T+2 entries
        (k=0..T+1); a supplied q(0) is ignored.
        """
        T = int(T)
        if T < 1:
            raise ConfigError(f"T must be a positive integer, got {T}", T=T)

        w_values = _profile_values(w, range(0, T + 1), "w")
        p_values = _profile_values(p, range(0, T + 2), "p")

        q_values = np.full(T + 2, np.nan)
        if not callable(q) and not np.isscalar(q) and np.asarray(q).size == T + 2:
            logger.warning("q(0) supplied but never used by the problem; ignoring it")
            q_values[1:] = np.asarray(q, dtype=float).ravel()[1:]
        else:
            q_values[1:] = _profile_values(q, range(1, T + 2), "q")

        for arr in (w_values, q_values, p_values):
            arr.setflags(write=False)
        return cls(
            T=T,
            w=w_values,
            q=q_values,
            p=p_values,
            nonlinearity=nonlinearity,
            lam=None if lam is None else float(lam),
        )

    def with_lambda(self, lam: Optional[float]) -> "ProblemInstance":
        return replace(self, lam=None if lam is None else float(lam))

    def with_nonlinearity(self, nonlinearity: Nonlinearity) -> "ProblemInstance":
        return replace(self, nonlinearity=nonlinearity)

    @property
    def ks(self) -> np.ndarray:
        """Interior indices 1..T."""
        return np.arange(1, self.T + 1)

    @property
    def p_minus(self) -> float:
        return float(np.min(self.p))

    @property
    def p_plus(self) -> float:
        return float(np.max(self.p))

    @property
    def w_minus(self) -> float:
        return float(np.min(self.w))

    @property
    def w_plus(self) -> float:
        return float(np.max(self.w))

    @property
    def q_minus(self) -> float:
        return float(np.min(self.q[1:]))

    @property
    def q_plus(self) -> float:
        return float(np.max(self.q[1:]))


def validate_instance(inst: ProblemInstance) -> List[str]:
    """Return every violated standing assumption; an empty list means valid."""
    violations: List[str] = []
    T = inst.T
    if T < 2:
        violations.append(f"T={T} < 2")

    if inst.w.size != T + 1:
        violations.append(f"w has {inst.w.size} entries, expected {T + 1}")
    if inst.q.size != T + 2:
        violations.append(f"q has {inst.q.size} entries, expected {T + 2}")
    if inst.p.size != T + 2:
        violations.append(f"p has {inst.p.size} entries, expected {T + 2}")
    if violations and any("entries" in v for v in violations):
        return violations

    for k in range(0, T + 1):
        v = inst.w[k]
        if not math.isfinite(v) or v < 1:
            violations.append(f"w({k})={v:.12g} < 1" if math.isfinite(v) else f"w({k}) is not finite")
    for k in range(1, T + 2):
        v = inst.q[k]
        if not math.isfinite(v) or v < 1:
            violations.append(f"q({k})={v:.12g} < 1" if math.isfinite(v) else f"q({k}) is not finite")
    for k in range(0, T + 2):
        v = inst.p[k]
        if not math.isfinite(v) or v < 2:
            violations.append(f"p({k})={v:.12g} < 2" if math.isfinite(v) else f"p({k}) is not finite")

    if inst.lam is not None and not inst.lam > 0:
        violations.append(f"lambda={inst.lam:.12g} <= 0")

    violations.extend(_nonlinearity_violations(inst))

    gc = inst.nonlinearity.growth
    if gc is not None:
        violations.extend(_growth_violations(inst, gc))

    if violations:
        logger.info(f"Instance validation found {len(violations)} violation(s)")
    return violations


def _nonlinearity_violations(inst: ProblemInstance) -> List[str]:
    nl = inst.nonlinearity
    out: List[str] = []
    for k in range(1, inst.T + 1):
        try:
            fv = nl.f_values(k, SAMPLE_POINTS)
        except Exception as e:
            out.append(f"f({k},.) could not be evaluated: {e}")
            continue
        bad = ~np.isfinite(fv)
        if np.any(bad):
            x = SAMPLE_POINTS[np.flatnonzero(bad)[0]]
            out.append(f"f({k},{x:.12g}) is not finite")

        if nl.F is not None:
            F0 = float(_broadcast(nl.F(k, 0.0), ()))
            if F0 != 0.0:
                out.append(f"F({k},0)={F0:.12g} != 0")

        form = nl.separable
        if form is not None:
            b = float(form.beta_values(k))
            if b < 0:
                out.append(f"beta({k})={b:.12g} < 0")
            expected = b * form.g_values(SAMPLE_POINTS)
            scale = np.maximum(np.abs(expected), np.abs(fv))
            mismatch = np.abs(fv - expected) > 1e-12 * scale
            if np.any(mismatch & np.isfinite(fv)):
                x = SAMPLE_POINTS[np.flatnonzero(mismatch)[0]]
                out.append(f"f({k},{x:.12g}) != beta({k})*g({x:.12g})")
    return out


def _growth_violations(inst: ProblemInstance, gc: GrowthCertificate) -> List[str]:
    out: List[str] = []
    if gc.alpha.size != inst.T + 1:
        return [f"alpha has {gc.alpha.size - 1} entries, expected {inst.T}"]
    if not gc.c0 > 0:
        out.append(f"c0={gc.c0:.12g} <= 0")
    for k in range(1, inst.T + 1):
        if gc.alpha[k] < 2:
            out.append(f"alpha({k})={gc.alpha[k]:.12g} < 2")
    if not gc.alpha_plus < inst.p_minus:
        out.append(f"alpha+={gc.alpha_plus:.12g} >= p-={inst.p_minus:.12g}")
    return out
