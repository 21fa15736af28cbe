"""Symmetric spectra of chain complexes: Z[*]-modules with levelwise signed
actions and suspension maps, plus the tensor over Z[*].

A spectrum stores only the one-step suspension sigma_1; multi-step
suspensions are iterated, so associativity holds by construction and the
verification weight falls on the equivariance axiom.

The tensor over Z[*] (the "bar" tensor) is presented on the free Day
module by an explicit relation lattice: equality of bar elements is
lattice membership of the difference, decided exactly.
"""

from __future__ import annotations

from . import perm
from .chain import ChainComplex, ChainElement, ChainMap
from .exactlin import IntMatrix, Lattice
from .symseq import (
    DayElement,
    SymSeq,
    day_basis,
    day_coords,
    day_d,
    day_from_coords,
    day_normalize,
    day_twist,
    day_zero,
)


class LevelBoundError(ValueError):
    pass


class Spectrum(SymSeq):
    def __init__(self, complexes, transpositions, sigma1, validate=True):
        """sigma1[n] is a ChainMap A_n -> A_{n+1} of shift +1 for n < max level."""
        super().__init__(complexes, transpositions, validate=validate)
        self._sigma1 = list(sigma1)
        if len(self._sigma1) != max(len(self._complexes) - 1, 0):
            raise LevelBoundError("need a suspension map below each level")

    def suspend(self, n, x: ChainElement) -> ChainElement:
        if n >= self.max_level:
            raise LevelBoundError("suspension would exceed level bound %d" % self.max_level)
        return self._sigma1[n].apply(x)

    def sigma(self, k, n, x: ChainElement) -> ChainElement:
        """sigma(e_k (x) x) for x at level n, iterating the one-step map."""
        if n + k > self.max_level:
            raise LevelBoundError("sigma lands above the level bound")
        for step in range(k):
            x = self.suspend(n + step, x)
        return x

    def sigma1_map(self, n) -> ChainMap:
        return self._sigma1[n]


def sigma(a: Spectrum, k, n, x):
    return a.sigma(k, n, x)


def transposition_matrix(s, n, t, deg) -> IntMatrix:
    """Matrix of the adjacent transposition s_t on level n at chain degree deg.

    Works for any spectrum-like object exposing complex() and act_perm();
    cached on the object.
    """
    cache = getattr(s, "_transposition_matrix_cache", None)
    if cache is None:
        cache = {}
        s._transposition_matrix_cache = cache
    key = (n, t, deg)
    if key not in cache:
        c = s.complex(n)
        tr = perm.Injection(
            n, n, tuple(range(t)) + (t + 1, t) + tuple(range(t + 2, n))
        )
        cols = [s.act_perm(n, tr, c.basis_element(deg, i)).coeffs for i in range(c.rank(deg))]
        cache[key] = IntMatrix.from_cols(cols, rows=c.rank(deg))
    return cache[key]


# ---------------------------------------------------------------------------
# Validation


class ValidationReport:
    def __init__(self):
        self.failures = []

    @property
    def ok(self):
        return not self.failures

    def fail(self, check, witness):
        self.failures.append((check, witness))

    def __repr__(self):
        return "ValidationReport(ok)" if self.ok else "ValidationReport(%s)" % self.failures


def _modulo_zero(s, n, x: ChainElement) -> bool:
    """Is x zero modulo the identifications of level n (exact for honest
    spectra, lattice membership for bar presentations)?"""
    if x.is_zero():
        return True
    rels = s.relations(n, x.degree)
    if not rels:
        return False
    return Lattice(IntMatrix.from_cols(list(rels), rows=len(x.coeffs))).contains(x.coeffs)


def validate_spectrum(s, max_k=3) -> ValidationReport:
    """Check the module axioms: sigma_1 is a chain map with the Koszul sign,
    sigma with k = 0 is the identity, and full block equivariance
    (alpha box beta)_* sigma(e_k (x) a) = sgn(alpha) sigma(e_k (x) beta_* a)
    for k <= max_k."""
    report = ValidationReport()
    n_max = s.max_level
    for n in range(n_max):
        mp = s.sigma1_map(n) if isinstance(s, Spectrum) else None
        if mp is not None and not mp.commutes_with_d(sign=-1):
            report.fail("sigma1-chain-map", "level %d" % n)
    for k in range(1, max_k + 1):
        for n in range(0, n_max - k + 1):
            c = s.complex(n)
            for alpha in _all_perms(k):
                sa = perm.sign(alpha)
                for beta in _all_perms(n):
                    ab = perm.box(alpha, beta)
                    for deg in c.degrees():
                        for i in range(c.rank(deg)):
                            a = c.basis_element(deg, i)
                            lhs = s.act_perm(n + k, ab, s.sigma(k, n, a))
                            rhs = s.sigma(k, n, s.act_perm(n, beta, a)).scale(sa)
                            if not _modulo_zero(s, n + k, lhs - rhs):
                                report.fail(
                                    "equivariance",
                                    "k=%d n=%d alpha=%s beta=%s a=(%d,%d)" % (k, n, alpha.images, beta.images, deg, i),
                                )
                                return report
    return report


def _all_perms(n):
    from itertools import permutations as _p

    return [perm.Injection(n, n, im) for im in _p(range(n))]


# ---------------------------------------------------------------------------
# Constructors


def zstar_spectrum(max_level) -> Spectrum:
    """Z[*] as a module over itself: sphere(n) at level n, sign action,
    sigma(e_1 (x) e_n) = e_{n+1}."""
    from .chain import sphere

    complexes = [sphere(n) for n in range(max_level + 1)]
    transpositions = []
    sigma1 = []
    for n, c in enumerate(complexes):
        neg = ChainMap(c, c, {n: IntMatrix.from_rows([[-1]])})
        transpositions.append([neg] * max(n - 1, 0))
    for n in range(max_level):
        sigma1.append(
            ChainMap(complexes[n], complexes[n + 1], {n: IntMatrix.from_rows([[1]])}, shift=1)
        )
    return Spectrum(complexes, transpositions, sigma1)


def free_spectrum(m, c: ChainComplex, max_level) -> Spectrum:
    """The Z[*]-module freely generated by c placed at level m.

    Level n >= m has basis {sh_*(e_{n-m} (x) x)} over (n-m, m)-shuffles sh
    and basis elements x of c, shifted up n-m chain degrees.
    """
    if m > max_level:
        raise LevelBoundError("free generator level exceeds the bound")
    if any(d < 0 for d in c.degrees()):
        raise LevelBoundError("free_spectrum needs a non-negatively graded complex")
    complexes = []
    bases = []  # per level: list of (sh_images, deg, ci)
    for n in range(max_level + 1):
        if n < m:
            complexes.append(ChainComplex({}))
            bases.append([])
            continue
        shs = perm.shuffles(n - m, m)
        labels = {}
        basis = []
        for deg in c.degrees():
            lab = []
            for sh in shs:
                for ci in range(c.rank(deg)):
                    lab.append((sh.images, c.labels(deg)[ci]))
                    basis.append((sh.images, deg, ci))
            labels[deg + (n - m)] = tuple(lab)
        index = {}
        for k, (sh, deg, ci) in enumerate(basis):
            index[(sh, deg, ci)] = k
        diffs = {}
        for deg in c.degrees():
            if c.rank(deg - 1) == 0:
                continue
            sgn = -1 if (n - m) % 2 else 1
            rows = len(shs) * c.rank(deg - 1)
            cols = []
            for sh in shs:
                for ci in range(c.rank(deg)):
                    col = [0] * rows
                    for cj, v in enumerate(c.d(deg).col(ci)):
                        if v:
                            # position within degree deg-1 block
                            pos = 0
                            for sh2 in shs:
                                if sh2.images == sh.images:
                                    break
                                pos += c.rank(deg - 1)
                            col[pos + cj] = sgn * v
                    cols.append(col)
            diffs[deg + (n - m)] = IntMatrix.from_cols(cols, rows=rows)
        complexes.append(ChainComplex(labels, diffs))
        bases.append(basis)
    transpositions = []
    for n in range(max_level + 1):
        ts = []
        if n >= m and n >= 2:
            shs = perm.shuffles(n - m, m)
            sh_index = {sh.images: k for k, sh in enumerate(shs)}
            for t in range(n - 1):
                tr = perm.Injection(n, n, tuple(range(t)) + (t + 1, t) + tuple(range(t + 2, n)))
                mats = {}
                for deg in c.degrees():
                    rank = len(shs) * c.rank(deg)
                    cols = []
                    for sh in shs:
                        sh2, alpha, beta = perm.shuffle_decompose(
                            perm.compose(perm.Injection(n, n, sh.images), tr), n - m, m
                        )
                        sa = perm.sign(alpha)
                        base2 = sh_index[sh2.images] * c.rank(deg)
                        for ci in range(c.rank(deg)):
                            col = [0] * rank
                            col[base2 + ci] = sa
                            cols.append(col)
                    mats[deg + (n - m)] = IntMatrix.from_cols(cols, rows=rank)
                ts.append(ChainMap(complexes[n], complexes[n], mats))
        elif n >= 2:
            ts = [ChainMap(complexes[n], complexes[n], {})] * (n - 1)
        transpositions.append(ts)
    sigma1 = []
    for n in range(max_level):
        if n + 1 <= m:
            sigma1.append(ChainMap(complexes[n], complexes[n + 1], {}, shift=1))
            continue
        if n < m:
            sigma1.append(ChainMap(complexes[n], complexes[n + 1], {}, shift=1))
            continue
        shs = perm.shuffles(n - m, m)
        shs2 = perm.shuffles(n + 1 - m, m)
        sh2_index = {sh.images: k for k, sh in enumerate(shs2)}
        mats = {}
        for deg in c.degrees():
            rank_src = len(shs) * c.rank(deg)
            rank_dst = len(shs2) * c.rank(deg)
            cols = []
            for sh in shs:
                lifted = (0,) + tuple(x + 1 for x in sh.images)
                base2 = sh2_index[lifted] * c.rank(deg)
                for ci in range(c.rank(deg)):
                    col = [0] * rank_dst
                    col[base2 + ci] = 1
                    cols.append(col)
            mats[deg + (n - m)] = IntMatrix.from_cols(cols, rows=rank_dst)
        sigma1.append(ChainMap(complexes[n], complexes[n + 1], mats, shift=1))
    return Spectrum(complexes, transpositions, sigma1)


def direct_sum_spectrum(a: Spectrum, b: Spectrum) -> Spectrum:
    from .chain import direct_sum

    if a.max_level != b.max_level:
        raise LevelBoundError("direct sum requires matching level bounds")
    complexes = [direct_sum(a.complex(n), b.complex(n)) for n in range(a.max_level + 1)]

    def block(n, ma: ChainMap, mb: ChainMap, shift, target_n):
        mats = {}
        src, dst = complexes[n], complexes[target_n]
        for deg in src.degrees():
            ra, rb = a.complex(n).rank(deg), b.complex(n).rank(deg)
            rows_a = a.complex(target_n).rank(deg + shift)
            rows_b = b.complex(target_n).rank(deg + shift)
            mata, matb = ma.mat(deg), mb.mat(deg)
            rows = []
            for i in range(rows_a):
                rows.append(tuple(mata.entries[i]) + (0,) * rb)
            for i in range(rows_b):
                rows.append((0,) * ra + tuple(matb.entries[i]))
            mats[deg] = IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, ra + rb)
        return ChainMap(src, dst, mats, shift)

    transpositions = [
        [block(n, a.transposition(n, t), b.transposition(n, t), 0, n) for t in range(max(n - 1, 0))]
        for n in range(a.max_level + 1)
    ]
    sigma1 = [block(n, a.sigma1_map(n), b.sigma1_map(n), 1, n + 1) for n in range(a.max_level)]
    return Spectrum(complexes, transpositions, sigma1)


# ---------------------------------------------------------------------------
# The tensor over Z[*]


class BarSpectrum:
    """A (x)bar B, presented on the free Day module of A (x) B.

    Levels are genuine free modules with the shuffle normal-form basis;
    equality in the bar tensor is membership of the difference in the
    relation lattice, which collects the suspension-mixing relations and
    any identifications inherited from the factors.  The object itself
    behaves like a spectrum (levelwise complexes, action, suspension), so
    it can appear as a factor of a further tensor.
    """

    def __init__(self, a, b):
        self.a = a
        self.b = b
        self.max_level = min(a.max_level, b.max_level)
        self._basis = {}
        self._complexes = {}
        self._relations = {}
        self._lattices = {}

    # -- basis bookkeeping

    def basis(self, p, deg):
        key = (p, deg)
        if key not in self._basis:
            self._basis[key] = tuple(day_basis(self.a, self.b, p, deg))
        return self._basis[key]

    def index(self, p, deg):
        return {g: k for k, g in enumerate(self.basis(p, deg))}

    def complex(self, p) -> ChainComplex:
        if p not in self._complexes:
            lo = min((self.a.complex(n).lo + self.b.complex(p - n).lo for n in range(p + 1)), default=0)
            hi = max((self.a.complex(n).hi + self.b.complex(p - n).hi for n in range(p + 1)), default=-1)
            labels = {}
            for deg in range(lo, hi + 1):
                basis = self.basis(p, deg)
                if basis:
                    labels[deg] = basis
            diffs = {}
            for deg in list(labels):
                if deg - 1 not in labels:
                    continue
                index = self.index(p, deg - 1)
                cols = []
                for gen in labels[deg]:
                    de = day_d(self.a, self.b, DayElement(p, deg, {gen: 1}))
                    col = [0] * len(labels[deg - 1])
                    for g2, c in de.terms.items():
                        col[index[g2]] = c
                    cols.append(col)
                diffs[deg] = IntMatrix.from_cols(cols, rows=len(labels[deg - 1]))
            self._complexes[p] = ChainComplex(labels, diffs)
        return self._complexes[p]

    def element_to_day(self, p, x: ChainElement) -> DayElement:
        return day_from_coords(p, x.degree, self.basis(p, x.degree), x.coeffs)

    def day_to_element(self, de: DayElement) -> ChainElement:
        return ChainElement(de.degree, day_coords(de, self.basis(de.level, de.degree)))

    # -- spectrum-like interface

    def act_perm(self, p, sigma, x: ChainElement) -> ChainElement:
        from .symseq import day_act

        return self.day_to_element(day_act(self.a, self.b, sigma, self.element_to_day(p, x)))

    def suspend(self, p, x: ChainElement) -> ChainElement:
        """sigma(e_1 (x) theta_*(a (x) b)) = (1 box theta)_*(sigma(e_1 (x) a) (x) b)."""
        if p >= self.max_level:
            raise LevelBoundError("suspension would exceed level bound %d" % self.max_level)
        de = self.element_to_day(p, x)
        terms = {}
        for gen, c in de.terms.items():
            n, m, sh, i, ai, j, bi = gen
            a = self.a.complex(n).basis_element(i, ai)
            sa = self.a.suspend(n, a)
            lifted = (0,) + tuple(v + 1 for v in sh)
            for ak, v in enumerate(sa.coeffs):
                if v:
                    g2 = (n + 1, m, lifted, i + 1, ak, j, bi)
                    terms[g2] = terms.get(g2, 0) + c * v
        out = DayElement(p + 1, x.degree + 1, terms)
        return self.day_to_element(out)

    def sigma(self, k, p, x: ChainElement) -> ChainElement:
        if p + k > self.max_level:
            raise LevelBoundError("sigma lands above the level bound")
        for step in range(k):
            x = self.suspend(p + step, x)
        return x

    # -- the relation lattice

    def relations(self, p, deg):
        """Normal-form coordinate vectors spanning the identifications of
        (A (x)bar B)_{p,deg}: suspension-mixing relations anchored at
        tri-shuffles, plus relations inherited from either factor."""
        key = (p, deg)
        if key in self._relations:
            return self._relations[key]
        basis = self.basis(p, deg)
        index = {g: k for k, g in enumerate(basis)}
        rels = []

        def push(de: DayElement):
            v = [0] * len(basis)
            for g, c in de.terms.items():
                v[index[g]] = c
            if any(v):
                rels.append(tuple(v))

        for n in range(p + 1):
            for mm in range(1, p - n + 1):
                q = p - n - mm
                ca, cb = self.a.complex(n), self.b.complex(q)
                if ca.is_zero() or cb.is_zero():
                    continue
                tw = perm.box(perm.twist(mm, n), perm.identity(q))
                for phi in perm.tri_shuffles(n, mm, q):
                    phi2 = perm.compose(tw, phi)
                    for i in ca.degrees():
                        kk = deg - i - mm
                        if cb.rank(kk) == 0:
                            continue
                        for ai in range(ca.rank(i)):
                            a = ca.basis_element(i, ai)
                            sa = self.a.sigma(mm, n, a)
                            for bi in range(cb.rank(kk)):
                                b = cb.basis_element(kk, bi)
                                sb = self.b.sigma(mm, q, b)
                                lhs = day_normalize(self.a, self.b, phi, n, a, sb, 1)
                                sgn = -1 if (i * mm) % 2 else 1
                                rhs = day_normalize(self.a, self.b, phi2, n + mm, sa, b, sgn)
                                push(lhs - rhs)
        # relations inherited from the factors
        for n in range(p + 1):
            m = p - n
            ca, cb = self.a.complex(n), self.b.complex(m)
            for i in ca.degrees():
                j = deg - i
                if cb.rank(j) == 0:
                    continue
                for r in self.a.relations(n, i):
                    for sh in perm.shuffles(n, m):
                        for bi in range(cb.rank(j)):
                            terms = {}
                            for ai, v in enumerate(r):
                                if v:
                                    terms[(n, m, sh.images, i, ai, j, bi)] = v
                            push(DayElement(p, deg, terms))
                for r in self.b.relations(m, j):
                    for sh in perm.shuffles(n, m):
                        for ai in range(ca.rank(i)):
                            terms = {}
                            for bi, v in enumerate(r):
                                if v:
                                    terms[(n, m, sh.images, i, ai, j, bi)] = v
                            push(DayElement(p, deg, terms))
        out = tuple(sorted(set(rels)))
        self._relations[key] = out
        return out

    def relation_lattice(self, p, deg) -> Lattice:
        key = (p, deg)
        if key not in self._lattices:
            rels = self.relations(p, deg)
            self._lattices[key] = Lattice(
                IntMatrix.from_cols([list(r) for r in rels], rows=len(self.basis(p, deg)))
            )
        return self._lattices[key]

    def bar_equal(self, x: DayElement, y: DayElement) -> bool:
        if (x.level, x.degree) != (y.level, y.degree):
            raise LevelBoundError("bar elements of different bidegree are never compared")
        diff = x - y
        if diff.is_zero():
            return True
        return self.relation_lattice(x.level, x.degree).contains(
            day_coords(diff, self.basis(x.level, x.degree))
        )


def bar_relation_lattice(a, b, p, deg) -> IntMatrix:
    bar = BarSpectrum(a, b)
    rels = bar.relations(p, deg)
    return IntMatrix.from_cols([list(r) for r in rels], rows=len(bar.basis(p, deg)))


def bar_equal(bar: BarSpectrum, x: DayElement, y: DayElement) -> bool:
    return bar.bar_equal(x, y)


def bar_twist(bar: BarSpectrum, x: DayElement) -> DayElement:
    """The twist of the bar tensor: the Day twist of any representative."""
    return day_twist(bar.a, bar.b, x)
