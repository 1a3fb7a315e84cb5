import numpy as np
import pytest

from coda_ratios import Composition, parse_sbp


@pytest.fixture
def liability_tree():
    # assets split from both liability classes, then the two liability classes
    return parse_sbp("(TA|(NCL|CL))")


def random_tree_text(rng: np.random.Generator, labels) -> str:
    """Random sequential binary partition over the given labels."""
    labels = list(labels)
    rng.shuffle(labels)

    def build(group):
        if len(group) == 1:
            return group[0]
        cut = int(rng.integers(1, len(group)))
        return f"({build(group[:cut])}|{build(group[cut:])})"

    return build(labels)


def random_composition(rng: np.random.Generator, labels) -> Composition:
    """Strictly positive random composition spanning several magnitudes."""
    values = np.exp(rng.uniform(-4.0, 8.0, size=len(labels)))
    return Composition(labels=tuple(labels), values=tuple(float(v) for v in values))
