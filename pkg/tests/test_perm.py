"""Injections, permutations, shuffles and their normal forms."""

import itertools
import math
import random

import pytest

from chainspec import perm


def _perms(n):
    return [perm.permutation(p) for p in itertools.permutations(range(n))]


def test_injection_validation():
    with pytest.raises(perm.DomainError):
        perm.Injection(2, 3, (0, 0))
    with pytest.raises(perm.DomainError):
        perm.Injection(2, 2, (0, 3))
    with pytest.raises(perm.DomainError):
        perm.permutation((0, 2))  # not surjective onto {0,1}


def test_compose_order_is_first_then_second():
    f = perm.Injection(1, 2, (0,))
    g = perm.permutation((1, 0))
    assert perm.compose(f, g).images == (1,)
    with pytest.raises(perm.ComposeError):
        perm.compose(g, f)


def test_inverse():
    for p in _perms(4):
        assert perm.compose(p, perm.inverse(p)).images == perm.identity(4).images


def test_sign_matches_inversion_count():
    for p in _perms(4):
        inv = sum(
            1
            for i in range(4)
            for j in range(i + 1, 4)
            if p.images[i] > p.images[j]
        )
        assert perm.sign(p) == (-1) ** inv


def test_box_blockwise():
    f = perm.permutation((1, 0))
    g = perm.permutation((0, 2, 1))
    assert perm.box(f, g).images == (1, 0, 2, 4, 3)
    assert perm.sign(perm.box(f, g)) == perm.sign(f) * perm.sign(g)


def test_twist_moves_first_block_past_second():
    t = perm.twist(2, 3)
    # twist(m, n) sends the first m symbols after the last n
    assert t.images == (3, 4, 0, 1, 2)
    assert perm.sign(t) == (-1) ** (2 * 3)


def test_twist_involution():
    for m in range(4):
        for n in range(4):
            t = perm.twist(m, n)
            assert perm.compose(t, perm.twist(n, m)).images == perm.identity(m + n).images


def test_complete_prepends_increasing_complement():
    alpha = perm.Injection(1, 3, (1,))
    c = perm.complete(alpha)
    assert c.is_permutation
    # the last source symbols land on alpha's images
    assert c.images[-1] == 1
    assert list(c.images[:-1]) == [0, 2]  # increasing complement first


def test_shuffles_count_and_property():
    for n in range(4):
        for m in range(4):
            sh = perm.shuffles(n, m)
            assert len(sh) == math.comb(n + m, n)
            assert all(perm.is_shuffle(s, n, m) for s in sh)
            assert len({s.images for s in sh}) == len(sh)


def test_shuffle_decompose_roundtrip():
    rng = random.Random(5)
    for _ in range(200):
        n, m = rng.randint(0, 3), rng.randint(0, 3)
        theta = _perms(n + m)[rng.randrange(math.factorial(n + m))]
        sh, alpha, beta = perm.shuffle_decompose(theta, n, m)
        assert perm.is_shuffle(sh, n, m)
        assert perm.compose(perm.box(alpha, beta), sh).images == theta.images


def test_adjacent_word_reconstructs_permutation():
    for p in _perms(4):
        acc = perm.identity(4)
        for t in perm.adjacent_word(p):
            s = perm.permutation(
                tuple(t + 1 if i == t else t if i == t + 1 else i for i in range(4))
            )
            acc = perm.compose(acc, s)
        assert acc.images == p.images


def test_rho_is_shuffle_completion_identity():
    r = perm.rho(2, 5)
    assert r.source == 2 and r.target == 5
    assert r.images == (3, 4)
    assert perm.complete(r).images == tuple(range(5))
