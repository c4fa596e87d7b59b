"""Random instances, the inequality property suite and the coercivity check along rays."""
from concurrent.futures import Executor
from typing import Callable, Dict, List, Optional
import logging
import math

import numpy as np

from src.functional.energy import Phi, energy_value, modular_phi, norm_minus, norm_plus, sup_norm
from src.hypotheses.constants import derived_constants
from src.model.grid import GridFunction
from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance
from src.oracle.verification import VerificationVerdict
from src.utils.errors import CertificateError

logger = logging.getLogger(__name__)

REL_TOL = 1e-12
WEIGHT_CAP_DECADES = 12

PROPERTY_CHECKS = (
    "norm-equivalence-lower",
    "norm-plus-below-norm",
    "lemma-small-branch",
    "lemma-large-branch",
    "sup-norm-bound",
    "Phi-sandwich",
    "shell-chain",
)


def random_instance(rng: np.random.Generator, T_range=(2, 12), lam: Optional[float] = None) -> ProblemInstance:
    """A valid instance with weights up to 1e12 and f(k,x) = b_k sin x + c_k."""
    T = int(rng.integers(T_range[0], T_range[1] + 1))
    decades = rng.uniform(0.0, WEIGHT_CAP_DECADES) if rng.random() < 0.5 else rng.uniform(0.0, 1.0)
    w = 10.0 ** rng.uniform(0.0, decades, T + 1)
    q = 10.0 ** rng.uniform(0.0, decades, T + 1)
    if rng.random() < 0.15:
        p = np.full(T + 2, 2.0 + rng.uniform(0.0, 3.0))
    else:
        p = 2.0 + rng.uniform(0.0, rng.uniform(0.1, 4.0), T + 2)

    b = np.concatenate(([0.0], rng.uniform(-1.0, 1.0, T)))
    c = np.concatenate(([0.0], rng.uniform(-1.0, 1.0, T)))

    def f(k, x):
        return b[k] * np.sin(x) + c[k]

    def F(k, t):
        return b[k] * (1.0 - np.cos(t)) + c[k] * t

    def df(k, x):
        return b[k] * np.cos(x)

    nl = Nonlinearity(f=f, F=F, df=df, label="random sin")
    return ProblemInstance.build(T, w, q, p, nl, lam)


def random_grid_function(rng: np.random.Generator, inst: ProblemInstance) -> GridFunction:
    """Entries of mixed magnitude 1e-6..1e3; half the draws are rescaled into the unit ball."""
    mags = 10.0 ** rng.uniform(-6.0, 3.0, inst.T)
    signs = rng.choice([-1.0, 1.0], inst.T)
    u = GridFunction.from_interior(signs * mags)
    if rng.random() < 0.5:
        target = 10.0 ** rng.uniform(-3.0, -0.01)
        u = u.scaled(target / norm_minus(inst, u))
    return u


def _leq(a: float, b: float) -> bool:
    return a <= b + REL_TOL * max(abs(a), abs(b))


def _case(inst: ProblemInstance, u: GridFunction) -> Dict[str, object]:
    """Evaluate every inequality for one (instance, u) pair."""
    dc = derived_constants(inst)
    pm, pp = dc.p_minus, dc.p_plus
    nm, npl = norm_minus(inst, u), norm_plus(inst, u)
    phi = modular_phi(inst, u)
    Phi_u = Phi(inst, u)
    sup = sup_norm(u)

    out: Dict[str, object] = {}
    out["norm-equivalence-lower"] = _leq(dc.K0 * nm, npl)
    out["norm-plus-below-norm"] = _leq(npl, nm)
    printed_upper = 2.0 ** ((pp - pm) / (pp * pm)) * dc.K0 * nm
    out["printed-upper-violated"] = not _leq(npl, printed_upper)

    if nm < 1:
        out["lemma-small-branch"] = _leq(npl ** pp, phi) and _leq(phi, nm ** pm)
    else:
        out["lemma-large-branch"] = _leq(nm ** pm - dc.C1, phi) and _leq(phi, npl ** pp + dc.C1)

    out["sup-norm-bound"] = _leq(sup, (2 * dc.T + 2) ** ((pm - 1) / pm) * nm)
    out["Phi-sandwich"] = _leq(phi / pp, Phi_u) and _leq(Phi_u, phi / pm)

    if phi < 1:
        r_pp = 0.5 * (1.0 + phi)
        out["shell-chain"] = (
            _leq((dc.K0 * nm) ** pp, npl ** pp) and _leq(npl ** pp, phi) and _leq(phi, r_pp)
        )
    return out


def property_suite(
    inst_generator: Optional[Callable[[np.random.Generator], ProblemInstance]] = None,
    n_cases: int = 1000,
    seed: int = 0,
    executor: Optional[Executor] = None,
) -> VerificationVerdict:
    """Sample (instance, u) pairs and count violations of every norm/modular inequality.

    The first case is always the zero function. Failing cases are returned as
    counterexamples in the diagnostics.
    """
    generator = inst_generator or random_instance
    children = np.random.SeedSequence(seed).spawn(n_cases)

    def run(i: int):
        rng = np.random.default_rng(children[i])
        inst = generator(rng)
        u = GridFunction.zeros(inst.T) if i == 0 else random_grid_function(rng, inst)
        return inst, u, _case(inst, u)

    indices = list(range(n_cases))
    outcomes = [run(i) for i in indices] if executor is None else list(executor.map(run, indices))

    violations = {name: 0 for name in PROPERTY_CHECKS}
    sampled = {name: 0 for name in PROPERTY_CHECKS}
    printed_upper = 0
    counterexamples: List[dict] = []
    for i, (inst, u, result) in enumerate(outcomes):
        printed_upper += int(result.get("printed-upper-violated", False))
        for name in PROPERTY_CHECKS:
            if name not in result:
                continue
            sampled[name] += 1
            if not result[name]:
                violations[name] += 1
                counterexamples.append({"case": i, "check": name, "T": inst.T, "u": u.values.tolist()})

    verdict = VerificationVerdict()
    for name in PROPERTY_CHECKS:
        verdict.add(name, violations[name] == 0, violations[name], 0)
    verdict.diagnostics.update(
        {
            "n_cases": n_cases,
            "seed": seed,
            "sampled": sampled,
            "printed_upper_violations": printed_upper,
            "counterexamples": counterexamples[:50],
        }
    )
    if printed_upper:
        logger.info(f"Printed upper norm-equivalence bound failed on {printed_upper}/{n_cases} cases")
    logger.info(f"Property suite (seed={seed}, n={n_cases}): {'pass' if verdict.overall else 'FAIL'}")
    return verdict


def coercivity_probe(
    inst: ProblemInstance,
    lam: float,
    gc: Optional[GrowthCertificate] = None,
    n_rays: int = 8,
    max_scale: float = 1e6,
    seed: int = 0,
) -> VerificationVerdict:
    """Compare I along random rays with the explicit coercivity lower bound.

    The bound is (|u|^{p-} - C1)/p+ - lam T c0 (2T+2)^{(p--1)alpha+/p-} |u|^{alpha+} - lam T c0,
    sampled where |u| > 1.
    """
    gc = gc if gc is not None else inst.nonlinearity.growth
    if gc is None:
        raise CertificateError("coercivity check needs a growth certificate")
    dc = derived_constants(inst)
    pm, pp = dc.p_minus, dc.p_plus
    if not gc.alpha_plus < pm:
        raise CertificateError(
            f"alpha+={gc.alpha_plus} must be below p-={pm} for coercivity",
            alpha_plus=gc.alpha_plus,
            p_minus=pm,
        )

    T = inst.T
    growth = lam * T * gc.c0 * (2 * T + 2) ** ((pm - 1) * gc.alpha_plus / pm)
    scales = np.geomspace(1.5, max_scale, 30)
    tail = scales >= max_scale / 10.0
    rng = np.random.default_rng(seed)

    violations = 0
    printed_ok = 0
    not_increasing = 0
    worst = math.inf
    for _ in range(n_rays):
        direction = GridFunction.from_interior(rng.standard_normal(T))
        direction = direction.scaled(1.0 / norm_minus(inst, direction))
        values = []
        for s in scales:
            I_s = energy_value(inst, direction.scaled(s), lam)
            values.append(I_s)
            bound = (s ** pm - dc.C1) / pp - growth * s ** gc.alpha_plus - lam * T * gc.c0
            printed = s ** pm / pp - growth * s ** gc.alpha_plus - lam * T * gc.c0
            slack = REL_TOL * max(1.0, abs(I_s), abs(bound))
            worst = min(worst, I_s - bound)
            if I_s < bound - slack:
                violations += 1
            if I_s >= printed - slack:
                printed_ok += 1
        tail_values = np.array(values)[tail]
        if not np.all(np.diff(tail_values) > 0):
            not_increasing += 1

    verdict = VerificationVerdict()
    verdict.add("lower-bound", violations == 0, violations, 0)
    verdict.add("increasing-tail", not_increasing == 0, not_increasing, 0)
    verdict.diagnostics.update(
        {
            "samples": n_rays * scales.size,
            "min_gap": worst,
            "printed_bound_satisfied": printed_ok,
            "lambda": lam,
        }
    )
    return verdict
