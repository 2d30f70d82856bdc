"""Deterministic random generators shared by the test modules."""

import random

from weylracah import Poly, Rat, Ring, WeylOp


def random_rational(rng: random.Random, span: int = 6) -> Rat:
    num = rng.randint(-span, span)
    den = rng.randint(1, 4)
    return Rat(num, den)


def random_poly(rng: random.Random, ring: Ring, max_degree: int = 3, max_terms: int = 4) -> Poly:
    terms = {}
    width = ring.num_symbols
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * width
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.randrange(width)] += 1
        terms[tuple(exps)] = terms.get(tuple(exps), Rat(0)) + random_rational(rng)
    return Poly(ring, terms)


def random_weyl(rng: random.Random, ring: Ring, max_order: int = 2, max_terms: int = 3) -> WeylOp:
    op = WeylOp.zero(ring)
    for _ in range(rng.randint(0, max_terms)):
        alpha = [0] * ring.num_vars
        for _ in range(rng.randint(0, max_order)):
            alpha[rng.randrange(ring.num_vars)] += 1
        coeff = random_poly(rng, ring, max_degree=2, max_terms=2)
        op = op + WeylOp(ring, {tuple(alpha): coeff})
    return op


def random_invariant_op(rng: random.Random, dm, max_factors: int = 2) -> WeylOp:
    """Random element of the enveloping algebra of the sl model.

    Sums of products of generator images, so the result always preserves
    the bounded-degree space.
    """
    m = dm.m

    def atom():
        roll = rng.randrange(3)
        if roll == 0:
            return dm.ttilde_op(rng.randint(1, m - 1))
        if roll == 1:
            return dm.euler_op()
        i = rng.randint(1, m)
        j = rng.randint(1, m)
        while j == i:
            j = rng.randint(1, m)
        return dm.t_op(i, j)

    op = WeylOp.zero(dm.ring)
    for _ in range(rng.randint(1, 2)):
        piece = atom()
        for _ in range(rng.randint(0, max_factors - 1)):
            piece = piece * atom()
        op = op + random_rational(rng) * piece
    return op


def random_nu_values(rng: random.Random, n: int) -> dict:
    return {
        f"nu{i}": Rat(rng.randint(1, 9), rng.choice((1, 2, 3, 4)))
        for i in range(1, n + 1)
    }
