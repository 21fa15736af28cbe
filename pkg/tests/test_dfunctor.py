"""The colimit functor D, its right adjoint R, and the structure maps."""

import pytest

from chainspec import perm
from chainspec.chain import ChainElement, sphere, tensor, two_term
from chainspec.dfunctor import (
    DRContext,
    DElement,
    cal_d_push,
    chi,
    d_equal,
    d_on_D,
    dtensor_of,
    dtensor_twist,
    epsilon_map,
    left_unitor,
    materialize_D,
    phi,
    psi,
    r_build,
    rho_sign_diagnostic,
    xi,
)
from chainspec.exactlin import QuotientTorsionError
from chainspec.spectra import BarSpectrum, free_spectrum, zstar_spectrum
from chainspec.symseq import day_from_coords


S = r_build(two_term(2), 5)
Z = zstar_spectrum(5)


def test_xi_and_suspension_insensitivity():
    x = S.complex(1).basis_element(1, 0)
    v = d_equal(S, xi(S, 1, x), xi(S, 2, S.suspend(1, x)), 4)
    assert v
    assert "EqualAtLevel" in repr(v)


def test_d_equal_distinguishes():
    x = S.complex(1).basis_element(1, 0)
    v = d_equal(S, xi(S, 1, x), xi(S, 1, x.scale(2)), 4)
    assert not v
    assert "NotEqualUpTo" in repr(v)


def test_d_on_D_squares_to_zero():
    x = S.complex(1).basis_element(1, 0)
    e = xi(S, 1, x)
    assert d_on_D(S, d_on_D(S, e)).is_zero()


def test_cal_d_push_completion_independence():
    x = S.complex(1).basis_element(0, 0)
    alpha = perm.Injection(1, 3, (1,))
    base = cal_d_push(S, alpha, x)
    for delta in (perm.identity(2), perm.permutation((1, 0))):
        alt = perm.compose(perm.box(delta, perm.identity(1)), perm.complete(alpha))
        other = cal_d_push(S, alpha, x, completion=alt)
        assert d_equal(S, xi(S, 3, base), xi(S, 3, other), 4)


def test_rho_sign_diagnostic_discrepancy():
    a = S.complex(1).basis_element(1, 0)
    literal, per_note = rho_sign_diagnostic(S, 1, 2, a)
    assert literal == S.sigma(1, 1, a)
    assert per_note == literal.scale(-1)


def test_materialize_sphere():
    dc = materialize_D(r_build(sphere(2), 5), 4)
    assert dc.complex.rank(2) == 1
    assert sum(dc.complex.rank(j) for j in dc.complex.degrees()) == 1


def test_materialize_torsion_raises():
    s = free_spectrum(2, sphere(1), 5)
    with pytest.raises(QuotientTorsionError):
        materialize_D(s, 4)


def test_adjunction_triangle_on_R():
    rc = r_build(two_term(2), 5)
    ctx = DRContext(rc, 4)
    eps = epsilon_map(rc, ctx.dcomplex)
    assert eps.commutes_with_d()
    for n in range(3):
        c = rc.complex(n)
        for deg in c.degrees():
            for i in range(c.rank(deg)):
                gen = c.basis_element(deg, i)
                e = ctx.eta(n, gen)
                back = rc.from_tensor(n, eps.apply(rc.to_tensor(n, e)))
                assert back == gen


def test_phi_chi_inverse_on_generators():
    a = r_build(sphere(0), 5)
    bar = BarSpectrum(Z, a)
    for n in range(3):
        for m in range(2):
            if n + m > bar.max_level:
                continue
            en = Z.complex(n).basis_element(n, 0)
            am = a.complex(m).basis_element(m, 0) if a.complex(m).rank(m) else None
            if am is None:
                continue
            t = dtensor_of(Z, n, en, a, m, am)
            assert chi(bar, phi(bar, t)) == t


def test_phi_is_chain_map_on_a_generator():
    a = r_build(two_term(2), 5)
    bar = BarSpectrum(a, a)
    t = dtensor_of(a, 1, a.complex(1).basis_element(1, 0),
                   a, 1, a.complex(1).basis_element(0, 0))
    from chainspec.dfunctor import dtensor_d

    lhs = d_on_D(bar, phi(bar, t))
    rhs = phi(bar, dtensor_d(a, a, t))
    assert d_equal(bar, lhs, rhs, 4)


def test_symmetric_square_on_a_generator():
    from chainspec.dfunctor import d_bar_map
    from chainspec.symseq import day_twist

    a = r_build(two_term(2), 5)
    bar_aa = BarSpectrum(a, a)
    t = dtensor_of(a, 1, a.complex(1).basis_element(1, 0),
                   a, 1, a.complex(1).basis_element(0, 0))
    lhs = phi(bar_aa, dtensor_twist(t))
    rhs = d_bar_map(bar_aa, phi(bar_aa, t), lambda de: day_twist(a, a, de), bar_aa)
    assert d_equal(bar_aa, lhs, rhs, 4)


def test_psi_lands_in_tensor():
    ca, cb = two_term(2), sphere(0)
    rc, rcp = r_build(ca, 5), r_build(cb, 5)
    rt = r_build(tensor(ca, cb), 5)
    bar = BarSpectrum(rc, rcp)
    p, deg = 2, 2
    basis = bar.basis(p, deg)
    if basis:
        x = day_from_coords(p, deg, basis, [1] + [0] * (len(basis) - 1))
        out = psi(rt, rc, rcp, x)
        assert isinstance(out, ChainElement)


def test_left_unitor_unit_element():
    a = r_build(sphere(0), 5)
    bar_za = BarSpectrum(Z, a)
    ident = perm.identity(1).images
    # e_0 (x) a at levels (1, 0) with the identity shuffle
    from chainspec.symseq import DayElement

    x = DayElement(1, 1, {(1, 0, ident, 1, 0, 0, 0): 1})
    out = left_unitor(bar_za, x)
    assert out == a.sigma(1, 0, a.complex(0).basis_element(0, 0))
