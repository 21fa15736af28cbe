"""Symmetric sequences of non-negatively graded complexes and their Day
convolution.

A symmetric sequence stores, per level n, a complex together with the
action of each adjacent transposition of Sigma_n.  Arbitrary permutations
act through reduced words; the braid relations are validated at
construction so the result is word-independent.

Day convolution is handled entirely through normal forms: every element
of (A (x) B) at a level is a unique integer combination of generators
sh_*(a (x) b) with sh a shuffle, which makes each level a genuine free
module with a known basis.
"""

from __future__ import annotations

from . import perm
from .chain import ChainComplex, ChainElement, ChainMap, identity_map, sphere
from .exactlin import IntMatrix


class DomainError(ValueError):
    pass


class SymSeq:
    def __init__(self, complexes, transpositions, validate=True):
        """complexes[n] is the level-n complex; transpositions[n] lists the
        ChainMaps of s_0, ..., s_{n-2} on it."""
        self._complexes = list(complexes)
        self._transpositions = [list(ts) for ts in transpositions]
        if len(self._transpositions) != len(self._complexes):
            raise DomainError("one transposition list per level required")
        for n, ts in enumerate(self._transpositions):
            if len(ts) != max(n - 1, 0):
                raise DomainError("level %d needs %d transpositions" % (n, max(n - 1, 0)))
        if validate:
            self._validate_actions()

    @property
    def max_level(self):
        return len(self._complexes) - 1

    def complex(self, n) -> ChainComplex:
        return self._complexes[n]

    def transposition(self, n, t) -> ChainMap:
        return self._transpositions[n][t]

    def relations(self, p, deg):
        """Extra identifications at level p (none for an honest sequence)."""
        return ()

    def _validate_actions(self):
        for n in range(self.max_level + 1):
            ident = identity_map(self.complex(n))
            ts = self._transpositions[n]
            for t, mp in enumerate(ts):
                if mp.source is not self.complex(n) or mp.shift != 0:
                    raise DomainError("transposition %d at level %d is not an endomap" % (t, n))
                if not mp.commutes_with_d():
                    raise DomainError("transposition %d at level %d is not a chain map" % (t, n))
                if not mp.compose(mp).equals(ident):
                    raise DomainError("transposition %d at level %d is not an involution" % (t, n))
            for t in range(len(ts) - 1):
                lhs = ts[t].compose(ts[t + 1]).compose(ts[t])
                rhs = ts[t + 1].compose(ts[t]).compose(ts[t + 1])
                if not lhs.equals(rhs):
                    raise DomainError("braid relation fails at level %d, strand %d" % (n, t))
            for t in range(len(ts)):
                for u in range(t + 2, len(ts)):
                    if not ts[t].compose(ts[u]).equals(ts[u].compose(ts[t])):
                        raise DomainError("distant transpositions do not commute at level %d" % n)

    def act_perm(self, n, sigma: perm.Injection, x: ChainElement) -> ChainElement:
        """Apply the functorial action of sigma in Sigma_n to x in level n."""
        if sigma.source != n or not sigma.is_permutation:
            raise DomainError("expected a permutation of %d" % n)
        if len(x.coeffs) != self.complex(n).rank(x.degree):
            raise DomainError("element does not live in level %d" % n)
        for t in perm.adjacent_word(sigma):
            x = self._transpositions[n][t].apply(x)
        return x


def act(a: SymSeq, n, sigma, x):
    return a.act_perm(n, sigma, x)


# ---------------------------------------------------------------------------
# Day convolution normal forms


class DayElement:
    """An integer combination of normal-form generators sh_*(a (x) b).

    A generator is keyed by (n, m, sh_images, i, ai, j, bi): left level and
    chain degree (n, i) with basis index ai, right (m, j, bi), and an
    (n, m)-shuffle sh.
    """

    __slots__ = ("level", "degree", "terms")

    def __init__(self, level, degree, terms=None):
        self.level = level
        self.degree = degree
        self.terms = {}
        for gen, coeff in (terms or {}).items():
            if coeff:
                self.terms[gen] = self.terms.get(gen, 0) + coeff
        for gen in [g for g, c in self.terms.items() if c == 0]:
            del self.terms[gen]

    def __add__(self, other):
        if (self.level, self.degree) != (other.level, other.degree):
            raise DomainError("cannot add Day elements of different bidegree")
        terms = dict(self.terms)
        for gen, c in other.terms.items():
            terms[gen] = terms.get(gen, 0) + c
        return DayElement(self.level, self.degree, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return DayElement(self.level, self.degree, {g: c * v for g, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, DayElement)
            and (self.level, self.degree) == (other.level, other.degree)
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "Day<%d,%d>(0)" % (self.level, self.degree)
        bits = []
        for gen, c in sorted(self.terms.items()):
            n, m, sh, i, ai, j, bi = gen
            bits.append("%+d*%s_*(a[%d,%d,%d] (x) b[%d,%d,%d])" % (c, list(sh), n, i, ai, m, j, bi))
        return "Day<%d,%d>(%s)" % (self.level, self.degree, " ".join(bits))


def day_zero(p, deg):
    return DayElement(p, deg, {})


def day_basis(a: SymSeq, b: SymSeq, p, deg):
    """Deterministic list of normal-form generator keys of (A (x) B)_{p,deg}."""
    out = []
    for n in range(p + 1):
        m = p - n
        ca, cb = a.complex(n), b.complex(m)
        shs = perm.shuffles(n, m)
        for i in ca.degrees():
            j = deg - i
            if cb.rank(j) == 0:
                continue
            for sh in shs:
                for ai in range(ca.rank(i)):
                    for bi in range(cb.rank(j)):
                        out.append((n, m, sh.images, i, ai, j, bi))
    return out


def day_coords(x: DayElement, basis):
    index = {g: k for k, g in enumerate(basis)}
    v = [0] * len(basis)
    for gen, c in x.terms.items():
        v[index[gen]] = c
    return tuple(v)


def day_from_coords(p, deg, basis, coords):
    return DayElement(p, deg, {g: c for g, c in zip(basis, coords) if c})


def day_normalize(a: SymSeq, b: SymSeq, theta: perm.Injection, n, xa: ChainElement, xb: ChainElement, coeff=1) -> DayElement:
    """Normal form of coeff * theta_*(xa (x) xb) with xa at level n.

    Writes theta = sh o (alpha box beta) and expands
    sh_*(alpha_*(xa) (x) beta_*(xb)) over basis pairs.
    """
    m = theta.source - n
    if m < 0:
        raise DomainError("level split exceeds the permutation size")
    sh, alpha, beta = perm.shuffle_decompose(theta, n, m)
    ya = a.act_perm(n, alpha, xa)
    yb = b.act_perm(m, beta, xb)
    terms = {}
    i, j = ya.degree, yb.degree
    for ai, ca in enumerate(ya.coeffs):
        if ca == 0:
            continue
        for bi, cb in enumerate(yb.coeffs):
            if cb == 0:
                continue
            gen = (n, m, sh.images, i, ai, j, bi)
            terms[gen] = terms.get(gen, 0) + coeff * ca * cb
    return DayElement(theta.source, i + j, terms)


def _gen_factors(a: SymSeq, b: SymSeq, gen):
    n, m, sh, i, ai, j, bi = gen
    return (
        perm.Injection(n + m, n + m, sh),
        a.complex(n).basis_element(i, ai),
        b.complex(m).basis_element(j, bi),
    )


def day_act(a: SymSeq, b: SymSeq, gamma: perm.Injection, x: DayElement) -> DayElement:
    """gamma_*(theta_*(xa (x) xb)) = (gamma o theta)_*(xa (x) xb), normalized."""
    out = day_zero(x.level, x.degree)
    for gen, c in x.terms.items():
        n = gen[0]
        sh, xa, xb = _gen_factors(a, b, gen)
        out = out + day_normalize(a, b, perm.compose(sh, gamma), n, xa, xb, c)
    return out


def day_d(a: SymSeq, b: SymSeq, x: DayElement) -> DayElement:
    """Koszul differential on normal forms (the shuffle is untouched)."""
    terms = {}
    for gen, c in x.terms.items():
        n, m, sh, i, ai, j, bi = gen
        da = a.complex(n).d(i).col(ai) if a.complex(n).rank(i - 1) else ()
        for aj, v in enumerate(da):
            if v:
                g2 = (n, m, sh, i - 1, aj, j, bi)
                terms[g2] = terms.get(g2, 0) + c * v
        sgn = -1 if i % 2 else 1
        db = b.complex(m).d(j).col(bi) if b.complex(m).rank(j - 1) else ()
        for bj, v in enumerate(db):
            if v:
                g2 = (n, m, sh, i, ai, j - 1, bj)
                terms[g2] = terms.get(g2, 0) + c * sgn * v
    return DayElement(x.level, x.degree - 1, terms)


def day_twist(a: SymSeq, b: SymSeq, x: DayElement) -> DayElement:
    """The Day twist: theta_*(xa (x) xb) |-> (-1)^{ij} (theta o twist)_*(xb (x) xa)."""
    out = day_zero(x.level, x.degree)
    for gen, c in x.terms.items():
        n, m, sh_images, i, ai, j, bi = gen
        sh, xa, xb = _gen_factors(a, b, gen)
        sgn = -1 if (i * j) % 2 else 1
        theta = perm.compose(perm.twist(m, n), sh)
        out = out + day_normalize(b, a, theta, m, xb, xa, c * sgn)
    return out


def day_twist_naive(a: SymSeq, b: SymSeq, x: DayElement) -> DayElement:
    """The ill-defined candidate twist that keeps theta and only swaps the
    factors with the Koszul sign.  Exists to exhibit counterexamples."""
    out = day_zero(x.level, x.degree)
    for gen, c in x.terms.items():
        n, m, sh_images, i, ai, j, bi = gen
        sh, xa, xb = _gen_factors(a, b, gen)
        sgn = -1 if (i * j) % 2 else 1
        out = out + day_normalize(b, a, sh, m, xb, xa, c * sgn)
    return out


# ---------------------------------------------------------------------------
# The sign sequence Z[*] and its multiplication


def zstar(max_level) -> SymSeq:
    """Level n is Z[n] = sphere(n); every adjacent transposition acts by -1."""
    complexes = [sphere(n) for n in range(max_level + 1)]
    transpositions = []
    for n, c in enumerate(complexes):
        neg = ChainMap(c, c, {n: IntMatrix.from_rows([[-1]])})
        transpositions.append([neg] * max(n - 1, 0))
    return SymSeq(complexes, transpositions)


def mu(theta: perm.Injection, n, m) -> ChainElement:
    """mu(theta_*(e_n (x) e_m)) = sgn(theta) e_{n+m}."""
    if theta.source != n + m or not theta.is_permutation:
        raise DomainError("mu needs a permutation of n+m")
    return ChainElement(n + m, (perm.sign(theta),))


def mu_day(x: DayElement) -> ChainElement:
    """mu extended over normal forms of Z[*] (x) Z[*]."""
    total = 0
    for gen, c in x.terms.items():
        n, m, sh, i, ai, j, bi = gen
        total += c * perm.sign(perm.Injection(n + m, n + m, sh))
    return ChainElement(x.level, (total,))
