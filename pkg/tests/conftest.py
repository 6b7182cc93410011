"""Shared instance generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from idemx.spaces import FiniteTopSpace, discrete, from_minimal_basis, sierpinski


def random_space(rng: np.random.Generator, n: int) -> FiniteTopSpace:
    """A random finite topology: random reflexive relation, closed transitively."""
    rel = [[i == j or rng.random() < 0.3 for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if rel[i][j]:
                    for k in range(n):
                        if rel[j][k] and not rel[i][k]:
                            rel[i][k] = True
                            changed = True
    points = tuple(f"p{i}" for i in range(n))
    masks = tuple(
        sum(1 << j for j in range(n) if rel[i][j]) for i in range(n)
    )
    return FiniteTopSpace(points, masks)


def small_space_library() -> list[FiniteTopSpace]:
    """Hand-picked spaces covering discrete, chain, wedge, and mixed cases."""
    return [
        discrete(["a"]),
        discrete(["a", "b"]),
        discrete(["a", "b", "c"]),
        sierpinski(),
        from_minimal_basis({"p": ["p", "w"], "q": ["q", "w"], "w": ["w"]}),
        from_minimal_basis({"0": ["0", "1"], "1": ["1"], "2": ["2"]}),
        from_minimal_basis({"a": ["a", "b", "c"], "b": ["b"], "c": ["c"]}),
        from_minimal_basis(
            {"a": ["a", "c"], "b": ["b", "c"], "c": ["c"], "d": ["d"]}
        ),
    ]


@pytest.fixture
def spaces():
    return small_space_library()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
