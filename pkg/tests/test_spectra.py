"""Spectra, validation, free spectra, and the bar (tensor over Z[*]) construction."""

import pytest

from chainspec import perm
from chainspec.chain import sphere, two_term
from chainspec.spectra import (
    BarSpectrum,
    bar_equal,
    bar_twist,
    free_spectrum,
    validate_spectrum,
    zstar_spectrum,
)
from chainspec.dfunctor import r_build
from chainspec.symseq import day_from_coords


def test_corpus_members_validate():
    for s in (
        zstar_spectrum(4),
        r_build(sphere(0), 4),
        r_build(two_term(2), 4),
        free_spectrum(1, sphere(0), 4),
        free_spectrum(2, sphere(1), 4),
    ):
        report = validate_spectrum(s)
        assert report.ok, report


def test_validation_catches_sign_flip():
    from chainspec.chain import ChainMap
    from chainspec.spectra import Spectrum

    good = r_build(two_term(2), 3)
    complexes = [good.complex(n) for n in range(4)]
    transpositions = [
        [good.transposition(n, t) for t in range(max(n - 1, 0))] for n in range(4)
    ]
    sigma1 = [good.sigma1_map(n) for n in range(3)]
    # flipping a single degree block of sigma_1 breaks anticommutation with
    # the nonzero differential (a global flip would still be valid)
    m1 = sigma1[1]
    mats = dict(m1.mats)
    top = max(mats)
    mats[top] = mats[top].scale(-1)
    sigma1[1] = ChainMap(m1.source, m1.target, mats, shift=1)
    mutant = Spectrum(complexes, transpositions, sigma1, validate=False)
    assert not validate_spectrum(mutant).ok


def test_suspension_composition():
    s = r_build(two_term(2), 5)
    x = s.complex(1).basis_element(1, 0)
    assert s.sigma(2, 1, x) == s.suspend(2, s.suspend(1, x))


def test_bar_spectrum_validates_and_is_spectrum_like():
    a = zstar_spectrum(4)
    b = r_build(sphere(0), 4)
    bar = BarSpectrum(a, b)
    assert bar.max_level == 4
    for p in range(3):
        c = bar.complex(p)
        for n in c.degrees():
            assert c.d(n - 1).mul(c.d(n)).is_zero()


def test_bar_relations_mix_suspensions():
    # sigma(a) (x) b ~ (-1)^{...} twist-conjugated a (x) sigma(b) in the bar
    a = r_build(sphere(0), 4)
    bar = BarSpectrum(a, a)
    found = False
    for p in range(1, 4):
        for deg in bar.complex(p).degrees():
            if bar.relations(p, deg):
                found = True
    assert found, "no mixing relations generated"


def test_bar_equal_quotients_relations():
    a = r_build(sphere(0), 4)
    bar = BarSpectrum(a, a)
    for p in range(1, 4):
        for deg in bar.complex(p).degrees():
            for r in bar.relations(p, deg):
                x = day_from_coords(p, deg, bar.basis(p, deg), r)
                assert bar.bar_equal(x, x.scale(0))
                assert bar_equal(bar, x, x.scale(0))


def test_bar_twist_involution_mod_relations():
    a = zstar_spectrum(4)
    b = r_build(two_term(2), 4)
    bar_ab = BarSpectrum(a, b)
    bar_ba = BarSpectrum(b, a)
    for p in range(3):
        for deg in bar_ab.complex(p).degrees():
            for i in range(bar_ab.complex(p).rank(deg)):
                x = bar_ab.element_to_day(p, bar_ab.complex(p).basis_element(deg, i))
                back = bar_twist(bar_ba, bar_twist(bar_ab, x))
                assert bar_ab.bar_equal(back, x)


def test_free_spectrum_level_bound():
    s = free_spectrum(2, sphere(1), 3)
    with pytest.raises(Exception):
        s.complex(4)
