"""Symmetric sequences, Day convolution normal forms, and the monoid Z[*]."""

import itertools

from chainspec import perm
from chainspec.chain import ChainElement
from chainspec.symseq import (
    day_act,
    day_basis,
    day_coords,
    day_d,
    day_from_coords,
    day_normalize,
    day_twist,
    mu,
    mu_day,
    zstar,
)


Z = zstar(6)


def _all_perms(n):
    return [perm.permutation(p) for p in itertools.permutations(range(n))]


def test_zstar_sign_action():
    for n in range(4):
        e = Z.complex(n).basis_element(n, 0)
        for p in _all_perms(n):
            assert Z.act_perm(n, p, e) == e.scale(perm.sign(p))


def test_day_normalize_representative_independence():
    # theta_*(a (x) b) with theta = sh o (alpha box beta) must normalize to
    # sgn(alpha)sgn(beta) sh_*(a (x) b) on Z[*]
    n, m = 2, 1
    ea = Z.complex(n).basis_element(n, 0)
    eb = Z.complex(m).basis_element(m, 0)
    for theta in _all_perms(n + m):
        sh, alpha, beta = perm.shuffle_decompose(theta, n, m)
        lhs = day_normalize(Z, Z, theta, n, ea, eb)
        rhs = day_normalize(Z, Z, sh, n, ea, eb).scale(
            perm.sign(alpha) * perm.sign(beta)
        )
        assert lhs == rhs


def test_day_basis_and_coords_roundtrip():
    basis = day_basis(Z, Z, 3, 3)
    x = day_from_coords(3, 3, basis, list(range(1, len(basis) + 1)))
    assert list(day_coords(x, basis)) == list(range(1, len(basis) + 1))


def test_day_action_functorial():
    basis = day_basis(Z, Z, 3, 3)
    x = day_from_coords(3, 3, basis, [1, -2, 1] + [0] * (len(basis) - 3))
    for g in _all_perms(3):
        for h in _all_perms(3):
            lhs = day_act(Z, Z, perm.compose(g, h), x)
            rhs = day_act(Z, Z, h, day_act(Z, Z, g, x))
            assert lhs == rhs


def test_day_differential_squares_to_zero():
    basis = day_basis(Z, Z, 2, 2)
    x = day_from_coords(2, 2, basis, [1] * len(basis))
    assert day_d(Z, Z, day_d(Z, Z, x)).is_zero()


def test_day_twist_involution():
    basis = day_basis(Z, Z, 3, 3)
    x = day_from_coords(3, 3, basis, [2, 0, -1] + [0] * (len(basis) - 3))
    assert day_twist(Z, Z, day_twist(Z, Z, x)) == x


def test_mu_signed_by_shuffle():
    for n in range(3):
        for m in range(3):
            for sh in perm.shuffles(n, m):
                assert mu(sh, n, m) == ChainElement(n + m, (perm.sign(sh),))


def test_mu_commutative_on_day_classes():
    # mu o tau = mu: multiply a twisted generator and compare
    n, m = 2, 1
    ea = Z.complex(n).basis_element(n, 0)
    eb = Z.complex(m).basis_element(m, 0)
    x = day_normalize(Z, Z, perm.identity(n + m), n, ea, eb)
    assert mu_day(day_twist(Z, Z, x)) == mu_day(x)
