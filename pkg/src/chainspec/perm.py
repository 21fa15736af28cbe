"""Injections and permutations of the finite ordinals {0, ..., n-1}.

Objects are skeletal: an injection n -> m is its tuple of images.  This is
what makes signs of block permutations unambiguous, so no abstract finite
sets appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class ComposeError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Injection:
    source: int
    target: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if len(self.images) != self.source:
            raise DomainError("image sequence has wrong length")
        if self.source > self.target:
            raise DomainError("no injection from %d to %d" % (self.source, self.target))
        seen = set()
        for x in self.images:
            if not 0 <= x < self.target or x in seen:
                raise DomainError("images must be distinct values below the target")
            seen.add(x)

    def __call__(self, i):
        return self.images[i]

    @property
    def is_permutation(self):
        return self.source == self.target

    def __str__(self):
        return "[%s]:%d->%d" % (",".join(map(str, self.images)), self.source, self.target)


def permutation(images) -> Injection:
    images = tuple(images)
    return Injection(len(images), len(images), images)


def identity(n: int) -> Injection:
    return Injection(n, n, tuple(range(n)))


def compose(f: Injection, g: Injection) -> Injection:
    """The composite g after f (first f, then g)."""
    if f.target != g.source:
        raise ComposeError("cannot compose %s with %s" % (f, g))
    return Injection(f.source, g.target, tuple(g.images[x] for x in f.images))


def inverse(p: Injection) -> Injection:
    if not p.is_permutation:
        raise DomainError("only permutations are invertible")
    inv = [0] * p.source
    for i, x in enumerate(p.images):
        inv[x] = i
    return Injection(p.source, p.source, tuple(inv))


def sign(p: Injection) -> int:
    """(-1) to the inversion count; only defined for permutations."""
    if not p.is_permutation:
        raise DomainError("sign requires a permutation")
    inv = 0
    im = p.images
    for i in range(len(im)):
        for j in range(i + 1, len(im)):
            if im[i] > im[j]:
                inv += 1
    return -1 if inv % 2 else 1


def box(f: Injection, g: Injection) -> Injection:
    """Block sum: f on the first block, g shifted by f's target on the second."""
    return Injection(
        f.source + g.source,
        f.target + g.target,
        f.images + tuple(x + f.target for x in g.images),
    )


def twist(m: int, n: int) -> Injection:
    """The block exchange in Sigma_{m+n}: i < m goes to i+n, i >= m to i-m."""
    return Injection(m + n, m + n, tuple(i + n for i in range(m)) + tuple(range(n)))


def rho(n: int, m: int) -> Injection:
    """The tail inclusion n -> m, i |-> (m-n)+i."""
    if n > m:
        raise DomainError("rho requires n <= m")
    return Injection(n, m, tuple(m - n + i for i in range(n)))


def complete(alpha: Injection) -> Injection:
    """The canonical permutation a' of the target with a' o rho = alpha.

    On the first m-n points, a' is the increasing bijection onto the
    complement of alpha's image.
    """
    n, m = alpha.source, alpha.target
    complement = sorted(set(range(m)) - set(alpha.images))
    return Injection(m, m, tuple(complement) + alpha.images)


def shuffles(n: int, m: int):
    """All (n, m)-shuffles in Sigma_{n+m}, lexicographically by image tuple."""
    out = []
    universe = range(n + m)
    for first in combinations(universe, n):
        rest = tuple(x for x in universe if x not in first)
        out.append(Injection(n + m, n + m, first + rest))
    return out


def is_shuffle(theta: Injection, n: int, m: int) -> bool:
    im = theta.images
    return (
        theta.source == n + m
        and theta.is_permutation
        and all(im[i] < im[i + 1] for i in range(n - 1))
        and all(im[i] < im[i + 1] for i in range(n, n + m - 1))
    )


def shuffle_from_first_block(first, n: int, m: int) -> Injection:
    first = tuple(sorted(first))
    rest = tuple(x for x in range(n + m) if x not in set(first))
    return Injection(n + m, n + m, first + rest)


def shuffle_decompose(theta: Injection, n: int, m: int):
    """The unique factorization theta = sh o (alpha box beta).

    Returns (sh, alpha, beta) with sh an (n, m)-shuffle, alpha in Sigma_n,
    beta in Sigma_m.
    """
    if theta.source != n + m or not theta.is_permutation:
        raise DomainError("theta must be a permutation of n+m")
    first = theta.images[:n]
    second = theta.images[n:]
    sorted_first = sorted(first)
    sorted_second = sorted(second)
    rank_first = {x: i for i, x in enumerate(sorted_first)}
    rank_second = {x: i for i, x in enumerate(sorted_second)}
    sh = Injection(n + m, n + m, tuple(sorted_first) + tuple(sorted_second))
    alpha = Injection(n, n, tuple(rank_first[x] for x in first))
    beta = Injection(m, m, tuple(rank_second[x] for x in second))
    return sh, alpha, beta


def tri_shuffles(n: int, m: int, q: int):
    """Permutations of n+m+q increasing on each of the three blocks."""
    out = []
    universe = range(n + m + q)
    for first in combinations(universe, n):
        rest1 = tuple(x for x in universe if x not in set(first))
        for second in combinations(rest1, m):
            third = tuple(x for x in rest1 if x not in set(second))
            out.append(Injection(n + m + q, n + m + q, first + second + third))
    return out


def adjacent_word(p: Injection):
    """A word in adjacent transpositions s_i with p = product of the word.

    Applying the word left to right to an argument computes the action of p
    under any functorial assignment of the s_i.
    """
    if not p.is_permutation:
        raise DomainError("words exist only for permutations")
    arr = list(p.images)
    word = []
    # bubble sort: each adjacent swap at position i post-composes with s_i,
    # so p * s_{i_1} * ... * s_{i_k} = id and p = s_{i_k} * ... * s_{i_1}
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i)
                changed = True
    return word
