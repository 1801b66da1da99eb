import random
from decimal import Decimal

import pytest

from difproof import DifProblem, PrecisionContext, parse
from difproof import fixtures as bundled


@pytest.fixture(scope="session")
def xlnx() -> DifProblem:
    return bundled.load_problem("xlnx")


@pytest.fixture(scope="session")
def lncubes() -> DifProblem:
    return bundled.load_problem("lncubes")


@pytest.fixture(scope="session")
def lncubes_alt() -> DifProblem:
    return bundled.load_problem("lncubes_alt")


def tau_of(name):
    return bundled.load_tau(name)


def make_problem(g1: str, g2: str, a: str, b: str, var=None, **options) -> DifProblem:
    return DifProblem.from_text(g1, g2, (a, b), var=var, **options)


# --- randomized families ----------------------------------------------------

# Building blocks that stay smooth and domain-safe on [-2, 2]; used by the
# derivative and enclosure property tests.
_SAFE_TEMPLATES = (
    "{a} + {b}*x",
    "{a}*x + {b}*x*x",
    "exp({a}*x)",
    "ln(x*x + {c})",
    "sin({a}*x)",
    "cos({a}*x)",
    "sqrt(x*x + {c})",
    "{c}^x",
    "x^3",
    "({a} + x*x)/({c} + x*x)",
    "tan({small}*x)",
)


def random_safe_expression(rng: random.Random) -> "object":
    parts = rng.sample(_SAFE_TEMPLATES, k=rng.randint(1, 3))
    rendered = []
    for tpl in parts:
        rendered.append(
            tpl.format(
                a=f"{rng.uniform(-2, 2):.3f}",
                b=f"{rng.uniform(-2, 2):.3f}",
                c=f"{rng.uniform(1, 3):.3f}",
                small=f"{rng.uniform(0.05, 0.6):.3f}",
            )
        )
    text = " + ".join(rendered)
    return parse(text)


def random_monotone_text(rng: random.Random) -> str:
    """An expression increasing on [0, 1] by construction."""
    terms = []
    n = rng.randint(1, 3)
    for _ in range(n):
        kind = rng.randrange(4)
        a = f"{rng.uniform(0.1, 3):.3f}"
        c = f"{rng.uniform(0.2, 2):.3f}"
        if kind == 0:
            terms.append(f"{a}*x")
        elif kind == 1:
            terms.append(f"{a}*exp({c}*x)")
        elif kind == 2:
            terms.append(f"{a}*ln(x + {c})")
        else:
            terms.append(f"{a}*sqrt(x + {c})")
    offset = f"{rng.uniform(-2, 2):.3f}"
    return " + ".join(terms) + f" + {offset}"
