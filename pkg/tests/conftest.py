"""Shared instances: a linear two-point problem, a double well and the two worked examples coded by hand."""
import math

import numpy as np
import pytest

from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance


def steep_f(k, x):
    return np.exp((k + 2.0) * (k - 13.0)) * x / (x ** 2 + 1e-11) ** 2


def steep_F(k, t):
    return 1e11 / 2 * np.exp((k + 2.0) * (k - 13.0)) * t ** 2 / (t ** 2 + 1e-11)


def steep_df(k, x):
    return np.exp((k + 2.0) * (k - 13.0)) * (1e-11 - 3 * x ** 2) / (x ** 2 + 1e-11) ** 3


def arctan_g(x):
    return 1.0 / ((400.0 * x) ** 2 + 1.0)


def arctan_G(t):
    return np.arctan(400.0 * t) / 400.0


def arctan_dg(x):
    return -320000.0 * x / ((400.0 * x) ** 2 + 1.0) ** 2


@pytest.fixture
def linear_instance():
    """T=2, unit weights, p=2 and f=1: the solution is (1/2, 1/2) at lambda=1."""
    nl = Nonlinearity(
        f=lambda k, x: np.ones(np.shape(x)),
        F=lambda k, t: np.asarray(t, dtype=float),
        df=lambda k, x: np.zeros(np.shape(x)),
        label="f=1",
    )
    return ProblemInstance.build(2, 1.0, 1.0, 2.0, nl, lam=1.0)


@pytest.fixture
def steep_instance():
    """T=10 with w(k)=exp(k(10-k)^2), q(k)=2^k and p(k)=2k/11+3."""
    T = 10
    nl = Nonlinearity(
        f=steep_f,
        F=steep_F,
        df=steep_df,
        growth=GrowthCertificate.build(0.000012, 2.0, T),
        label="steep",
    )
    return ProblemInstance.build(
        T,
        lambda k: math.exp(k * (10 - k) ** 2),
        lambda k: 2.0 ** k,
        lambda k: 2 * k / 11 + 3,
        nl,
        lam=1.0,
    )


@pytest.fixture
def arctan_instance():
    """T=10, unit weights, p(k)=k+3 and f = 1/((400x)^2+1)."""
    T = 10
    nl = Nonlinearity.from_separable(
        beta=lambda k: np.ones(np.shape(k)),
        g=arctan_g,
        G=arctan_G,
        dg=arctan_dg,
        growth=GrowthCertificate.build(0.0039, 2.0, T),
        label="arctan",
    )
    return ProblemInstance.build(T, 1.0, 1.0, lambda k: k + 3.0, nl, lam=1.0)


@pytest.fixture
def steep_sums():
    """Closed-form sum over k of F(k, t) for the steep instance."""

    def total(t):
        ks = np.arange(1, 11, dtype=float)
        return float(np.sum(steep_F(ks, np.full(ks.shape, t))))

    return total


@pytest.fixture
def double_well():
    """f(k,x) = 10 sin x on T=2: zero is a saddle and +-u* are minima."""
    nl = Nonlinearity(
        f=lambda k, x: 10.0 * np.sin(x),
        F=lambda k, t: 10.0 * (1.0 - np.cos(t)),
        df=lambda k, x: 10.0 * np.cos(x),
    )
    return ProblemInstance.build(2, 1.0, 1.0, 2.0, nl, lam=1.0)
