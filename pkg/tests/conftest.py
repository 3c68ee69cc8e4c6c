import random

import pytest
from hypothesis import HealthCheck, settings

from ftlcalc import ZEPS, StrictIso, ZEps
from ftlcalc.ftl import (additive_ftl, check_axioms, logarithm, multiplicative_ftl,
                         specialize_ftl)
from ftlcalc.repair import repair_multiplicative

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# Expensive results shared between the per-module tests and the acceptance module.

@pytest.fixture(scope="session")
def repaired():
    return repair_multiplicative()


@pytest.fixture(scope="session")
def mul_report():
    return check_axioms(multiplicative_ftl())


@pytest.fixture(scope="session")
def additive_report():
    return check_axioms(additive_ftl())


@pytest.fixture(scope="session")
def mul_logs():
    out = {}
    for part in ("minus", "plus"):
        F = specialize_ftl(multiplicative_ftl(), part)
        out[part] = (F, logarithm(F, 6))
    return out


def eps_compatible_theta(rng: random.Random, N: int, size: int = 2) -> StrictIso:
    """Random strict Theta over Z[eps] through x^(N+1) with h | a_k for even k.

    Only these preserve the eps-linearity and neutral-element axioms.
    """
    cs = [0, 1]
    for k in range(2, N + 2):
        a, b = rng.randint(-size, size), rng.randint(-size, size)
        cs.append(ZEps(a, -a) if k % 2 == 0 else ZEps(a, b))
    return StrictIso.from_coeffs(ZEPS, cs, bound=N + 1)
