"""Exact integer linear algebra, cross-checked with property-based inputs."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainspec.exactlin import (
    DimensionError,
    IntMatrix,
    Lattice,
    QuotientTorsionError,
    diagonalize,
    hnf,
    in_lattice,
    kernel_basis,
    lattice_quotient,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
).map(IntMatrix.from_rows)


def _is_unimodular(u):
    # integer inverse exists iff the diagonalization is all +-1
    d, _, _ = diagonalize(u)
    return len(d) == u.rows == u.cols and all(abs(x) == 1 for x in d)


def test_matrix_shape_validation():
    with pytest.raises(DimensionError):
        IntMatrix(2, 2, ((1, 2), (3,)))
    with pytest.raises(DimensionError):
        IntMatrix.identity(2).mul(IntMatrix.zero(3, 1))


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_hnf_transform_identity(m):
    h, u = hnf(m)
    assert m.mul(u).entries == h.entries
    assert _is_unimodular(u)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_kernel_basis_annihilates(m):
    k = kernel_basis(m)
    assert m.mul(k).is_zero()


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_diagonalize_transform(m):
    d, lm, li = diagonalize(m)
    assert lm.mul(li).entries == IntMatrix.identity(m.rows).entries
    assert all(x != 0 for x in d)
    # L*M has the d entries as leading pivots up to column operations:
    # rows past len(d) of L*M are zero
    lmm = lm.mul(m)
    for i in range(len(d), m.rows):
        assert all(x == 0 for x in lmm.entries[i])


def test_membership_certificate_and_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        m = IntMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        v = tuple(rng.randint(-4, 4) for _ in range(rows))
        ok, cert = in_lattice(m, v)
        if ok:
            assert m.matvec(cert) == v
        else:
            # brute force over a small coefficient box
            bound = 6
            found = False

            def rec(j, acc):
                nonlocal found
                if found:
                    return
                if j == cols:
                    found = tuple(acc) == v
                    return
                for c in range(-bound, bound + 1):
                    rec(j + 1, [a + c * m.col(j)[i] for i, a in enumerate(acc)])

            rec(0, [0] * rows)
            assert not found


def test_lattice_membership_repeated_queries():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    lat = Lattice(m)
    assert lat.contains((4, 3))
    assert not lat.contains((1, 0))
    assert not lat.contains((0, 2))


def test_quotient_free_case():
    # Z^2 / <(2,1)> is free of rank 1
    m = IntMatrix.from_rows([[2], [1]])
    rank, proj, lift = lattice_quotient(2, m)
    assert rank == 1
    assert proj.mul(lift).entries == IntMatrix.identity(1).entries
    assert all(x == 0 for x in proj.matvec((2, 1)))


def test_quotient_torsion_detected():
    m = IntMatrix.from_rows([[2, 0], [0, 1]])
    with pytest.raises(QuotientTorsionError):
        lattice_quotient(2, m)


def test_diagonalize_previous_hang_regression():
    # this matrix once drove the pivot-clearing loop into oscillation
    m = IntMatrix.from_rows([[0, 0, 1, 2], [0, 1, 1, 0], [2, 1, 0, 0]])
    d, lm, li = diagonalize(m)
    assert len(d) == 3
    assert lm.mul(li).entries == IntMatrix.identity(3).entries
