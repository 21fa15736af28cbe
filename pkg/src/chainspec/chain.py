"""Bounded, degreewise finitely generated free integer chain complexes.

Differentials decrease degree by one and are exact integer matrices.  The
tensor product carries the Koszul sign rule, and truncation to
non-negative degrees takes the kernel in degree zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exactlin import IntMatrix, Lattice, kernel_basis


class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class ChainElement:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(x) for x in self.coeffs))

    def __add__(self, other):
        if self.degree != other.degree or len(self.coeffs) != len(other.coeffs):
            raise DegreeError("cannot add elements of different bidegree")
        return ChainElement(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return ChainElement(self.degree, tuple(c * x for x in self.coeffs))

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)


class ChainComplex:
    """Labels per degree plus differentials d_n : degree n -> degree n-1."""

    def __init__(self, labels, diffs=None, validate=True):
        self._labels = {int(n): tuple(ls) for n, ls in labels.items() if len(tuple(ls)) > 0}
        self._diffs = {}
        diffs = diffs or {}
        for n, m in diffs.items():
            n = int(n)
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m)
            if m.rows == 0 or m.cols == 0 or m.is_zero():
                continue
            if m.cols != self.rank(n) or m.rows != self.rank(n - 1):
                raise DegreeError("differential at degree %d has wrong shape" % n)
            self._diffs[n] = m
        if validate:
            for n in list(self._diffs):
                if n + 1 in self._diffs:
                    if not self._diffs[n].mul(self._diffs[n + 1]).is_zero():
                        raise DegreeError("d o d != 0 at degree %d" % (n + 1))

    @property
    def lo(self):
        return min(self._labels) if self._labels else 0

    @property
    def hi(self):
        return max(self._labels) if self._labels else -1

    def degrees(self):
        return sorted(self._labels)

    def rank(self, n):
        return len(self._labels.get(n, ()))

    def labels(self, n):
        return self._labels.get(n, ())

    def is_zero(self):
        return not self._labels

    def d(self, n):
        if n in self._diffs:
            return self._diffs[n]
        return IntMatrix.zero(self.rank(n - 1), self.rank(n))

    def element(self, n, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank(n):
            raise DegreeError("coefficient vector has wrong length at degree %d" % n)
        return ChainElement(n, coeffs)

    def zero_element(self, n):
        return ChainElement(n, (0,) * self.rank(n))

    def basis_element(self, n, i):
        return ChainElement(n, tuple(1 if j == i else 0 for j in range(self.rank(n))))

    def apply_d(self, x: ChainElement) -> ChainElement:
        if self.rank(x.degree) == 0:
            return self.zero_element(x.degree - 1)
        return ChainElement(x.degree - 1, self.d(x.degree).matvec(x.coeffs))

    def to_json_dict(self):
        return {
            "degrees": {str(n): [str(l) for l in self.labels(n)] for n in self.degrees()},
            "differentials": {
                str(n): [list(r) for r in m.entries] for n, m in sorted(self._diffs.items())
            },
        }

    @staticmethod
    def from_json_dict(data):
        labels = {int(n): tuple(ls) for n, ls in data.get("degrees", {}).items()}
        diffs = {int(n): IntMatrix.from_rows(m) for n, m in data.get("differentials", {}).items()}
        return ChainComplex(labels, diffs)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._labels == other._labels and {n: m.entries for n, m in self._diffs.items()} == {
            n: m.entries for n, m in other._diffs.items()
        }

    def __repr__(self):
        return "ChainComplex(%s)" % {n: self.rank(n) for n in self.degrees()}


def load_complex(path) -> ChainComplex:
    with open(path) as f:
        return ChainComplex.from_json_dict(json.load(f))


class ChainMap:
    """A degreewise matrix map between complexes, raising degree by shift.

    mats[n] sends source degree n to target degree n + shift; absent
    degrees act as zero.
    """

    def __init__(self, source, target, mats, shift=0):
        self.source = source
        self.target = target
        self.shift = shift
        self.mats = {}
        for n, m in mats.items():
            if m.cols != source.rank(n) or m.rows != target.rank(n + shift):
                raise DegreeError("chain map block at degree %d has wrong shape" % n)
            if m.rows and m.cols and not m.is_zero():
                self.mats[n] = m

    def mat(self, n):
        if n in self.mats:
            return self.mats[n]
        return IntMatrix.zero(self.target.rank(n + self.shift), self.source.rank(n))

    def apply(self, x: ChainElement) -> ChainElement:
        return ChainElement(x.degree + self.shift, self.mat(x.degree).matvec(x.coeffs))

    def compose(self, then):
        """self followed by then."""
        mats = {}
        for n in set(self.mats) | set(then.mats):
            mats[n] = then.mat(n + self.shift).mul(self.mat(n))
        return ChainMap(self.source, then.target, mats, self.shift + then.shift)

    def add(self, other):
        mats = {}
        for n in set(self.mats) | set(other.mats):
            mats[n] = self.mat(n).add(other.mat(n))
        return ChainMap(self.source, self.target, mats, self.shift)

    def scale(self, c):
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.mats.items()}, self.shift)

    def equals(self, other):
        degs = set(self.mats) | set(other.mats)
        return self.shift == other.shift and all(
            self.mat(n).entries == other.mat(n).entries for n in degs
        )

    def commutes_with_d(self, sign=1):
        """Check target_d o f == sign * f o source_d degreewise."""
        for n in self.source.degrees():
            lhs = self.target.d(n + self.shift).mul(self.mat(n))
            rhs = self.mat(n - 1).mul(self.source.d(n)).scale(sign)
            if lhs.entries != rhs.entries:
                return False
        return True


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: IntMatrix.identity(c.rank(n)) for n in c.degrees()})


def sphere(n: int) -> ChainComplex:
    """Z[n]: a single generator e_n in degree n with zero differential."""
    return ChainComplex({n: ("e%d" % n,)})


def two_term(scalar: int, top_degree: int = 0) -> ChainComplex:
    """Z --scalar--> Z in degrees top_degree, top_degree - 1."""
    return ChainComplex(
        {top_degree: ("x",), top_degree - 1: ("y",)},
        {top_degree: IntMatrix.from_rows([[scalar]])},
    )


def tensor_basis(c: ChainComplex, cp: ChainComplex, n: int):
    """Deterministic basis of (C (x) C')_n as triples (i, ai, bi), j = n - i."""
    out = []
    for i in c.degrees():
        j = n - i
        for ai in range(c.rank(i)):
            for bi in range(cp.rank(j)):
                out.append((i, ai, bi))
    return out


def tensor(c: ChainComplex, cp: ChainComplex) -> ChainComplex:
    """Graded tensor product with the Koszul differential."""
    labels = {}
    bases = {}
    for n in range(c.lo + cp.lo, c.hi + cp.hi + 1):
        basis = tensor_basis(c, cp, n)
        if basis:
            bases[n] = basis
            labels[n] = tuple((c.labels(i)[ai], cp.labels(n - i)[bi]) for (i, ai, bi) in basis)
    diffs = {}
    index = {n: {t: k for k, t in enumerate(b)} for n, b in bases.items()}
    for n, basis in bases.items():
        if n - 1 not in bases:
            continue
        rows = len(bases[n - 1])
        cols = [[0] * rows for _ in basis]
        for k, (i, ai, bi) in enumerate(basis):
            j = n - i
            da = c.d(i).col(ai) if c.rank(i - 1) else ()
            for aj, v in enumerate(da):
                if v:
                    cols[k][index[n - 1][(i - 1, aj, bi)]] += v
            sgn = -1 if i % 2 else 1
            db = cp.d(j).col(bi) if cp.rank(j - 1) else ()
            for bj, v in enumerate(db):
                if v:
                    cols[k][index[n - 1][(i, ai, bj)]] += sgn * v
        diffs[n] = IntMatrix.from_cols(cols, rows=rows)
    t = ChainComplex(labels, diffs)
    return t


def twist_chain(c: ChainComplex, cp: ChainComplex, t=None, t2=None) -> ChainMap:
    """The Koszul twist (C (x) C') -> (C' (x) C), (a, b) |-> (-1)^{ij} (b, a)."""
    t = t if t is not None else tensor(c, cp)
    t2 = t2 if t2 is not None else tensor(cp, c)
    mats = {}
    for n in t.degrees():
        basis = tensor_basis(c, cp, n)
        basis2 = tensor_basis(cp, c, n)
        index2 = {tup: k for k, tup in enumerate(basis2)}
        cols = [[0] * len(basis2) for _ in basis]
        for k, (i, ai, bi) in enumerate(basis):
            j = n - i
            sgn = -1 if (i * j) % 2 else 1
            cols[k][index2[(j, bi, ai)]] = sgn
        mats[n] = IntMatrix.from_cols(cols, rows=len(basis2))
    return ChainMap(t, t2, mats)


def truncate_with_inclusion(c: ChainComplex):
    """Good truncation to non-negative degrees, with inclusion matrices.

    Returns (truncated, inclusions) where inclusions[n] embeds the
    truncated degree-n piece into C_n (identity except in degree 0, where
    columns are a kernel basis of d_0).
    """
    labels = {n: c.labels(n) for n in c.degrees() if n > 0}
    inclusions = {n: IntMatrix.identity(c.rank(n)) for n in c.degrees() if n > 0}
    diffs = {n: c.d(n) for n in c.degrees() if n > 1}
    if c.rank(0):
        k = kernel_basis(c.d(0))
        if k.cols:
            labels[0] = tuple("ker%d" % i for i in range(k.cols))
            inclusions[0] = k
            if c.rank(1):
                lat = Lattice(k)
                cols = []
                for j in range(c.rank(1)):
                    ok, cert = lat.membership(c.d(1).col(j))
                    if not ok:
                        raise DegreeError("image of d_1 escapes ker(d_0); d o d != 0?")
                    cols.append(cert)
                diffs[1] = IntMatrix.from_cols(cols, rows=k.cols)
    tr = ChainComplex(labels, {n: m for n, m in diffs.items() if n > 0 or n in labels})
    return tr, inclusions


def truncate(c: ChainComplex) -> ChainComplex:
    return truncate_with_inclusion(c)[0]


def direct_sum(c: ChainComplex, cp: ChainComplex) -> ChainComplex:
    labels = {}
    for n in set(c.degrees()) | set(cp.degrees()):
        labels[n] = tuple(("L", l) for l in c.labels(n)) + tuple(("R", l) for l in cp.labels(n))
    diffs = {}
    for n in labels:
        ra, rb = c.rank(n - 1), cp.rank(n - 1)
        if ra + rb == 0:
            continue
        da, db = c.d(n), cp.d(n)
        rows = []
        for i in range(ra):
            rows.append(tuple(da.entries[i]) + (0,) * cp.rank(n))
        for i in range(rb):
            rows.append((0,) * c.rank(n) + tuple(db.entries[i]))
        diffs[n] = IntMatrix.from_rows(rows)
    return ChainComplex(labels, diffs)
