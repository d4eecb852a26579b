"""Shared random-instance helpers for the test suite.

All randomness is seeded per test, so runs are reproducible.
"""

import random

from quadsum import Matrix, direct_sum, inverse, jordan_block


def rand_element(field, rng):
    if field.p is None:
        return field.element(rng.randint(-3, 3))
    return field.make(rng.randrange(field.p))


def rand_matrix(field, n, rng, cols=None):
    cols = n if cols is None else cols
    return Matrix(field, n, cols, [rand_element(field, rng) for _ in range(n * cols)])


def rand_invertible(field, n, rng):
    while True:
        m = rand_matrix(field, n, rng)
        try:
            inverse(m)
            return m
        except Exception:
            continue


def rand_idempotent(field, n, rng):
    """A random-conjugated rank-r projector."""
    r = rng.randrange(n + 1)
    p = Matrix.diagonal(field, [1] * r + [0] * (n - r))
    t = rand_invertible(field, n, rng)
    return t * p * inverse(t)


def rand_square_zero(field, n, rng):
    """A random-conjugated direct sum of 2x2 shift blocks and zeros."""
    k = rng.randrange(n // 2 + 1)
    blocks = [jordan_block(field, 2) for _ in range(k)]
    blocks += [Matrix.zero(field, 1)] * (n - 2 * k)
    q = direct_sum(field, blocks)
    t = rand_invertible(field, n, rng)
    return t * q * inverse(t)


def rand_decomposable(field, n, rng):
    """A matrix known to be idempotent + square-zero by construction."""
    return rand_idempotent(field, n, rng) + rand_square_zero(field, n, rng)
