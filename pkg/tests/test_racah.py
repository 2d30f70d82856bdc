"""Racah realization: Casimir families, subset assembly, commutation."""

import random

import pytest

from helpers import random_invariant_op
from weylracah import RacahContext, WeylOp, check_racah_structure


def test_c_single_value():
    rc = RacahContext(4)
    nu1 = rc.ring.nu(1)
    assert rc.c_single(1) == WeylOp.from_poly(nu1 * (nu1 - 1))


def test_c_single_is_central():
    rc = RacahContext(4)
    op = random_invariant_op(random.Random(2), rc.dm)
    assert rc.c_single(1).commutator(op) == WeylOp.zero(rc.ring)


def test_c_single_vanishes_at_one():
    rc = RacahContext(4)
    assert rc.c_single(2).subs({"nu2": 1}) == WeylOp.zero(rc.ring)


def test_c_single_range():
    rc = RacahContext(4)
    with pytest.raises(ValueError):
        rc.c_single(0)
    with pytest.raises(ValueError):
        rc.c_single(5)


def test_c_pair_on_constant():
    rc = RacahContext(5)
    s = rc.ring.k() + rc.ring.nu(1) + rc.ring.nu(2)
    assert rc.c_pair(1, 2).apply(rc.ring.one()) == s * (s - 1)


def test_c_pair_one_j_on_constant():
    # j=3, n=3: only the middle term and the constant survive on 1
    rc = RacahContext(3)
    ring = rc.ring
    got = rc.c_pair(1, 3).apply(ring.one())
    expected = 2 * ring.nu(3) * ring.k() * (1 - ring.u(1)) + (ring.nu(1) + ring.nu(3)) * (
        ring.nu(1) + ring.nu(3) - 1
    )
    assert got == expected


def test_c_pair_two_j_on_constant():
    rc = RacahContext(3)
    ring = rc.ring
    got = rc.c_pair(2, 3).apply(ring.one())
    expected = 2 * ring.nu(3) * ring.k() * ring.u(1) + (ring.nu(2) + ring.nu(3)) * (
        ring.nu(2) + ring.nu(3) - 1
    )
    assert got == expected


def test_c_pair_generic_branch_support():
    # interior pair at n=5 involves u2 and the derivative steps (d2-d3), (d1-d2)
    rc = RacahContext(5)
    ring = rc.ring
    front = ring.u(2)
    step_hi = WeylOp.partial(ring, 2) - WeylOp.partial(ring, 3)
    step_lo = WeylOp.partial(ring, 1) - WeylOp.partial(ring, 2)
    expected = (
        -(front**2 * (step_hi * step_lo))
        + 2 * ring.nu(3) * (front * step_hi)
        - 2 * ring.nu(4) * (front * step_lo)
        + (ring.nu(3) + ring.nu(4)) * (ring.nu(3) + ring.nu(4) - 1)
    )
    assert rc.c_pair(3, 4) == expected


def test_c_pair_convention_drops_last_derivative():
    # at j = n the step derivative loses its second half: only d_{n-2} remains
    rc = RacahContext(4)
    ring = rc.ring
    eu = ring.u(1) * WeylOp.partial(ring, 1) + ring.u(2) * WeylOp.partial(ring, 2)
    front = 1 - ring.u(1) - ring.u(2)
    step = WeylOp.partial(ring, 2)
    expected = (
        -(front**2 * ((WeylOp.from_poly(ring.k() - 1) - eu) * step))
        + 2 * ring.nu(4) * (front * (WeylOp.from_poly(ring.k()) - eu))
        - 2 * ring.nu(1) * (front * step)
        + (ring.nu(1) + ring.nu(4)) * (ring.nu(1) + ring.nu(4) - 1)
    )
    assert rc.c_pair(1, 4) == expected


def test_c_pair_unordered():
    rc = RacahContext(5)
    for i in range(1, 6):
        for j in range(i + 1, 6):
            assert rc.c_pair(i, j) == rc.c_pair(j, i)


def test_c_pair_errors():
    rc = RacahContext(4)
    with pytest.raises(ValueError):
        rc.c_pair(2, 2)
    with pytest.raises(ValueError):
        rc.c_pair(0, 1)
    with pytest.raises(ValueError):
        rc.c_pair(1, 5)


def test_c_set_degenerate_cases():
    rc = RacahContext(4)
    assert rc.c_set([2]) == rc.c_single(2)
    assert rc.c_set([1, 2]) == rc.c_pair(1, 2)
    assert rc.c_set((2, 1)) == rc.c_pair(1, 2)


def test_c_set_triple():
    rc = RacahContext(4)
    expected = (
        rc.c_pair(1, 2)
        + rc.c_pair(1, 3)
        + rc.c_pair(2, 3)
        - (rc.c_single(1) + rc.c_single(2) + rc.c_single(3))
    )
    assert rc.c_set([1, 2, 3]) == expected


def test_c_set_empty():
    rc = RacahContext(4)
    with pytest.raises(ValueError):
        rc.c_set([])


def test_structure_suite_small():
    for n in (3, 4):
        report = check_racah_structure(RacahContext(n))
        assert report.failed == 0, report.to_text()


def test_disjoint_commutator_example():
    rc = RacahContext(4)
    assert rc.c_pair(1, 2).commutator(rc.c_pair(3, 4)) == WeylOp.zero(rc.ring)


def test_full_casimir_commutes_with_pairs():
    rc = RacahContext(4)
    full = rc.c_set([1, 2, 3, 4])
    for i in range(1, 5):
        for j in range(i + 1, 5):
            assert full.commutator(rc.c_pair(i, j)) == WeylOp.zero(rc.ring)


def test_self_commutator():
    rc = RacahContext(4)
    assert rc.c_pair(1, 2).commutator(rc.c_pair(1, 2)) == WeylOp.zero(rc.ring)


def test_full_casimir_scalar_on_constant():
    # the u-dependent pieces of the individual pair images cancel in the sum
    for n in (3, 4, 5):
        rc = RacahContext(n)
        image = rc.c_set(range(1, n + 1)).apply(rc.ring.one())
        assert image.is_u_free(), f"n={n}: {image!r}"


def test_context_requires_three_factors():
    with pytest.raises(ValueError):
        RacahContext(2)
