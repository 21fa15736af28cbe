"""All registered verification suites.

Each check returns (trials, failures, verdict, witness).  Checks either
enumerate exhaustively over a stated finite range or sample from the
check's own deterministic random stream; every comparison is exact
integer equality (possibly modulo an explicit relation lattice).
"""

from __future__ import annotations

from itertools import permutations as _permutations

from .. import perm
from ..chain import (
    ChainComplex,
    ChainElement,
    ChainMap,
    direct_sum,
    sphere,
    tensor,
    tensor_basis,
    truncate_with_inclusion,
    twist_chain,
    two_term,
)
from ..dfunctor import (
    DElement,
    DRContext,
    cal_d_push,
    chi,
    chi_composite,
    d_bar_map,
    d_equal,
    d_on_D,
    dtensor_coordinates,
    dtensor_d,
    dtensor_of,
    dtensor_twist,
    epsilon,
    epsilon_map,
    left_unitor,
    bar_assoc,
    materialize_D,
    phi,
    psi,
    r_build,
    rho_sign_diagnostic,
    xi,
)
from ..exactlin import (
    IntMatrix,
    QuotientTorsionError,
    diagonalize,
    hnf,
    in_lattice,
    kernel_basis,
    lattice_quotient,
)
from ..spectra import BarSpectrum, Spectrum, bar_twist, validate_spectrum
from ..symseq import (
    DayElement,
    SymSeq,
    day_act,
    day_basis,
    day_d,
    day_from_coords,
    day_normalize,
    day_twist,
    day_zero,
    mu_day,
    zstar,
)
from . import corpus, corpus_materializable, register

# ---------------------------------------------------------------------------
# Shared helpers


def _done(trials, failures, witness=None, verdict=None):
    if verdict is None:
        verdict = "pass" if failures == 0 else "fail"
    return trials, failures, verdict, witness


def _rand_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return perm.Injection(n, n, tuple(images))


def _rand_injection(rng, n, m):
    return perm.Injection(n, m, tuple(rng.sample(range(m), n)))


def _spots(s, n_max, d_max, n_min=0):
    out = []
    for n in range(n_min, min(n_max, s.max_level) + 1):
        c = s.complex(n)
        for deg in c.degrees():
            if deg <= d_max and c.rank(deg):
                out.append((n, deg))
    return out


def _rand_element(rng, s, n, deg):
    c = s.complex(n)
    return ChainElement(deg, tuple(rng.randint(-3, 3) for _ in range(c.rank(deg))))


_BAR_CACHE = {}


def _bar(a, b) -> BarSpectrum:
    key = (id(a), id(b))
    if key not in _BAR_CACHE:
        _BAR_CACHE[key] = BarSpectrum(a, b)
    return _BAR_CACHE[key]


_CTX_CACHE = {}


def _ctx(s, n_stab) -> DRContext:
    key = (id(s), n_stab)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = DRContext(s, n_stab)
    return _CTX_CACHE[key]


def _stab(cfg, s):
    return min(cfg.stab_bound, s.max_level)


def _gens(s, n_max, d_max):
    """All (level, degree, index) basis generators within the bounds."""
    out = []
    for n, deg in _spots(s, n_max, d_max):
        for i in range(s.complex(n).rank(deg)):
            out.append((n, deg, i))
    return out


def _small_complexes():
    return [("S0", sphere(0)), ("S2", sphere(2)), ("M2", two_term(2))]


def _regular_rep_seq():
    """Levels 0..3: rank 1 in degree 0 at level 1, the regular-style rank-2
    swap representation at level 2, zero elsewhere."""
    c0 = ChainComplex({})
    c1 = ChainComplex({0: ("u",)})
    c2 = ChainComplex({0: ("v0", "v1")})
    c3 = ChainComplex({})
    swap = ChainMap(c2, c2, {0: IntMatrix.from_rows([[0, 1], [1, 0]])})
    zero3 = ChainMap(c3, c3, {})
    return SymSeq([c0, c1, c2, c3], [[], [], [swap], [zero3, zero3]])


# ---------------------------------------------------------------------------
# perm-laws


@register("perm-laws", "compose-associative")
def _perm_assoc(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b, c, d = (rng.randint(0, 6) for _ in range(4))
        dims = sorted((a, b, c, d))
        f = _rand_injection(rng, dims[0], dims[1])
        g = _rand_injection(rng, dims[1], dims[2])
        h = _rand_injection(rng, dims[2], dims[3])
        if perm.compose(perm.compose(f, g), h) != perm.compose(f, perm.compose(g, h)):
            failures += 1
            witness = witness or "%s %s %s" % (f, g, h)
    return _done(cfg.trials, failures, witness)


@register("perm-laws", "sign-multiplicative")
def _perm_sign(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        n = rng.randint(0, 6)
        s, t = _rand_perm(rng, n), _rand_perm(rng, n)
        if perm.sign(perm.compose(s, t)) != perm.sign(s) * perm.sign(t):
            failures += 1
            witness = witness or "%s %s" % (s, t)
    return _done(cfg.trials, failures, witness)


@register("perm-laws", "twist-signature")
def _twist_sig(cfg, rng):
    trials = failures = 0
    witness = None
    for m in range(7):
        for n in range(7):
            trials += 1
            want = -1 if (m * n) % 2 else 1
            got = perm.sign(perm.twist(m, n))
            if got != want:
                failures += 1
                witness = witness or "twist(%d,%d): sign %d, expected %d" % (m, n, got, want)
    return _done(trials, failures, witness)


@register("perm-laws", "shuffle-decompose-exhaustive")
def _shuffle_decomp(cfg, rng):
    trials = failures = 0
    witness = None
    for total in range(6):
        for n in range(total + 1):
            m = total - n
            shuffle_set = {s.images for s in perm.shuffles(n, m)}
            for im in _permutations(range(total)):
                theta = perm.Injection(total, total, im)
                trials += 1
                sh, alpha, beta = perm.shuffle_decompose(theta, n, m)
                ok = (
                    sh.images in shuffle_set
                    and perm.compose(perm.box(alpha, beta), sh) == theta
                )
                # oracle: brute-force search finds exactly one factorization
                count = 0
                for s2 in perm.shuffles(n, m):
                    for ia in _permutations(range(n)):
                        for ib in _permutations(range(m)):
                            cand = perm.compose(
                                perm.box(perm.Injection(n, n, ia), perm.Injection(m, m, ib)), s2
                            )
                            if cand == theta:
                                count += 1
                if not ok or count != 1:
                    failures += 1
                    witness = witness or "theta=%s split (%d,%d), %d factorizations" % (
                        theta,
                        n,
                        m,
                        count,
                    )
    return _done(trials, failures, witness)


@register("perm-laws", "completion-law")
def _completion(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        m = rng.randint(0, 6)
        n = rng.randint(0, m)
        alpha = _rand_injection(rng, n, m)
        ap = perm.complete(alpha)
        if not ap.is_permutation or perm.compose(perm.rho(n, m), ap) != alpha:
            failures += 1
            witness = witness or str(alpha)
    return _done(cfg.trials, failures, witness)


@register("perm-laws", "adjacent-word-product")
def _adjacent_word(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        n = rng.randint(0, 6)
        p = _rand_perm(rng, n)
        acc = perm.identity(n)
        for t in perm.adjacent_word(p):
            s_t = perm.Injection(n, n, tuple(range(t)) + (t + 1, t) + tuple(range(t + 2, n)))
            acc = perm.compose(acc, s_t)
        # applying the word left to right realizes p functorially, which for
        # the composition action means p = s_last o ... o s_first
        if acc != p:
            failures += 1
            witness = witness or str(p)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# exactlin-oracles


def _rand_matrix(rng, rows, cols, lo=-3, hi=3):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


@register("exactlin-oracles", "hnf-transform")
def _hnf_transform(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        m = _rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        h, u = hnf(m)
        d, _, _ = diagonalize(u)
        if m.mul(u).entries != h.entries or len(d) != u.rows or any(abs(x) != 1 for x in d):
            failures += 1
            witness = witness or str(m)
    return _done(cfg.trials, failures, witness)


@register("exactlin-oracles", "membership-brute-force")
def _membership_oracle(cfg, rng):
    trials = max(cfg.trials, 200)
    failures = 0
    witness = None
    bound = 6
    for _ in range(trials):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        m = _rand_matrix(rng, rows, cols, -2, 2)
        if rng.random() < 0.5:
            v = m.matvec(tuple(rng.randint(-4, 4) for _ in range(cols)))
        else:
            v = tuple(rng.randint(-6, 6) for _ in range(rows))
        ok, cert = in_lattice(m, v)
        if ok:
            if m.matvec(cert) != tuple(v):
                failures += 1
                witness = witness or "bad certificate for %s in %s" % (list(v), m)
            continue
        # claimed non-member: brute force over the coefficient box must agree
        found = None

        def search(j, acc):
            nonlocal found
            if found is not None:
                return
            if j == cols:
                if m.matvec(tuple(acc)) == tuple(v):
                    found = tuple(acc)
                return
            for x in range(-bound, bound + 1):
                search(j + 1, acc + [x])

        search(0, [])
        if found is not None:
            failures += 1
            witness = witness or "missed member %s of %s (cert %s)" % (list(v), m, found)
    return _done(trials, failures, witness)


@register("exactlin-oracles", "kernel-basis")
def _kernel(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        m = _rand_matrix(rng, rng.randint(1, 3), rng.randint(1, 4), -2, 2)
        k = kernel_basis(m)
        for j in range(k.cols):
            if any(m.matvec(k.col(j))):
                failures += 1
                witness = witness or str(m)
    return _done(cfg.trials, failures, witness)


@register("exactlin-oracles", "quotient-torsion-by-determinant")
def _quotient_oracle(cfg, rng):
    failures = 0
    witness = None
    trials = 0
    for _ in range(cfg.trials):
        n = rng.randint(1, 3)
        m = _rand_matrix(rng, n, n, -2, 2)
        d, _, _ = diagonalize(m)
        if len(d) != n:
            continue  # singular; cokernel is infinite, not this oracle's case
        trials += 1
        det = 1
        for x in d:
            det *= abs(x)
        try:
            rank, proj, lift = lattice_quotient(n, m)
            torsion = False
            if rank and proj.mul(lift).entries != IntMatrix.identity(rank).entries:
                failures += 1
                witness = witness or "proj*lift != id for %s" % m
                continue
        except QuotientTorsionError:
            torsion = True
        if torsion != (det > 1):
            failures += 1
            witness = witness or "det %d vs torsion %s for %s" % (det, torsion, m)
    return _done(trials, failures, witness)


@register("exactlin-oracles", "quotient-projection")
def _quotient_proj(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        rows = rng.randint(1, 4)
        cols = rng.randint(0, 3)
        # unimodular-image relations avoid torsion: use random 0/1 pivots
        m = _rand_matrix(rng, rows, cols, -2, 2)
        try:
            rank, proj, lift = lattice_quotient(rows, m)
        except QuotientTorsionError:
            continue
        for j in range(cols):
            if any(proj.matvec(m.col(j))):
                failures += 1
                witness = witness or "relation survives projection: %s" % m
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# chain-laws


def _rand_complex(rng):
    """A random small complex, built as a tensor/truncation of seeds so that
    d o d = 0 holds by construction."""
    seeds = [sphere(0), sphere(1), sphere(2), two_term(2), two_term(3), two_term(1, 1)]
    c = seeds[rng.randrange(len(seeds))]
    if rng.random() < 0.5:
        c = tensor(c, seeds[rng.randrange(len(seeds))])
    return c


@register("chain-laws", "tensor-differential-squares-to-zero")
def _chain_dd(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        c = _rand_complex(rng)
        cp = _rand_complex(rng)
        t = tensor(c, cp)
        for n in t.degrees():
            if not t.d(n - 1).mul(t.d(n)).is_zero():
                failures += 1
                witness = witness or "%s (x) %s" % (c, cp)
    return _done(cfg.trials, failures, witness)


@register("chain-laws", "twist-chain-map-involution")
def _chain_twist(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        c, cp = _rand_complex(rng), _rand_complex(rng)
        tw = twist_chain(c, cp)
        tw2 = twist_chain(cp, c)
        if not tw.commutes_with_d():
            failures += 1
            witness = witness or "not a chain map: %s, %s" % (c, cp)
            continue
        comp = tw.compose(tw2)
        ident = ChainMap(
            tw.source, tw.source, {n: IntMatrix.identity(tw.source.rank(n)) for n in tw.source.degrees()}
        )
        if not comp.equals(ident):
            failures += 1
            witness = witness or "twist not involutive: %s, %s" % (c, cp)
    return _done(cfg.trials, failures, witness)


@register("chain-laws", "truncation-inclusion")
def _chain_trunc(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        c = tensor(sphere(rng.randint(0, 3)), _rand_complex(rng))
        tr, incl = truncate_with_inclusion(c)
        ok = True
        for n in tr.degrees():
            if n <= 0:
                continue
            lhs = incl.get(n - 1, IntMatrix.zero(c.rank(n - 1), tr.rank(n - 1))).mul(tr.d(n))
            rhs = c.d(n).mul(incl[n])
            if lhs.entries != rhs.entries:
                ok = False
        if 0 in incl and c.rank(-1):
            for j in range(incl[0].cols):
                if any(c.d(0).matvec(incl[0].col(j))):
                    ok = False
        if not ok:
            failures += 1
            witness = witness or str(c)
    return _done(cfg.trials, failures, witness)


@register("chain-laws", "interchange-roundtrip")
def _chain_json(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        c = _rand_complex(rng)
        c2 = ChainComplex.from_json_dict(c.to_json_dict())
        if {n: c2.rank(n) for n in c2.degrees()} != {n: c.rank(n) for n in c.degrees()} or any(
            c2.d(n).entries != c.d(n).entries for n in c.degrees()
        ):
            failures += 1
            witness = witness or str(c)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# monoid (Z[*])


@register("monoid", "mu-commutative-exhaustive")
def _monoid_comm(cfg, rng):
    z = zstar(6)
    trials = failures = 0
    witness = None
    for total in range(7):
        # day_basis runs over all splits n + m = total
        for gen in day_basis(z, z, total, total):
            trials += 1
            x = DayElement(total, total, {gen: 1})
            if mu_day(day_twist(z, z, x)) != mu_day(x):
                failures += 1
                witness = witness or str(gen)
    return _done(trials, failures, witness)


@register("monoid", "mu-is-signed-by-theta")
def _monoid_sign(cfg, rng):
    z = zstar(6)
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        total = rng.randint(0, 6)
        n = rng.randint(0, total)
        m = total - n
        theta = _rand_perm(rng, total)
        x = day_normalize(z, z, theta, n, ChainElement(n, (1,)), ChainElement(m, (1,)))
        if mu_day(x) != ChainElement(total, (perm.sign(theta),)):
            failures += 1
            witness = witness or str(theta)
    return _done(cfg.trials, failures, witness)


@register("monoid", "mu-associative")
def _monoid_assoc(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        total = rng.randint(0, 6)
        cuts = sorted((rng.randint(0, total), rng.randint(0, total)))
        n, m, q = cuts[0], cuts[1] - cuts[0], total - cuts[1]
        theta = _rand_perm(rng, total)
        # both bracketings multiply e_n, e_m, e_q into sgn(theta) e_total
        want = perm.sign(theta)
        z = zstar(6)
        inner = day_normalize(z, z, perm.identity(n + m), n, ChainElement(n, (1,)), ChainElement(m, (1,)))
        left = 0
        for gen, c in inner.terms.items():
            y = day_normalize(
                z, z, theta, n + m, mu_day(DayElement(n + m, n + m, {gen: c})), ChainElement(q, (1,))
            )
            left += mu_day(y).coeffs[0]
        if left != want:
            failures += 1
            witness = witness or "theta=%s split (%d,%d,%d)" % (theta, n, m, q)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# Day convolution suites

_DAY_SEQS = None


def _day_seqs(cfg):
    global _DAY_SEQS
    if _DAY_SEQS is None:
        members = corpus(cfg)
        _DAY_SEQS = [members[0][1], members[3][1], members[4][1], _regular_rep_seq()]
    return _DAY_SEQS


def _rand_day_pair(cfg, rng):
    seqs = _day_seqs(cfg)
    return seqs[rng.randrange(len(seqs))], seqs[rng.randrange(len(seqs))]


def _rand_day_element(rng, a, b, p, deg, width=2):
    basis = day_basis(a, b, p, deg)
    if not basis:
        return None
    terms = {}
    for _ in range(width):
        terms[basis[rng.randrange(len(basis))]] = rng.randint(-3, 3)
    return DayElement(p, deg, terms)


def _rand_day_spot(rng, a, b, n_max, d_max):
    spots = []
    for p in range(min(a.max_level, b.max_level, n_max) + 1):
        for n in range(p + 1):
            ca, cb = a.complex(n), b.complex(p - n)
            for i in ca.degrees():
                for j in cb.degrees():
                    if i + j <= d_max and ca.rank(i) and cb.rank(j):
                        spots.append((p, i + j))
    return spots[rng.randrange(len(spots))] if spots else None


@register("day-normalize", "representative-independence")
def _day_well(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        n = rng.randint(0, p)
        m = p - n
        ca, cb = a.complex(n), b.complex(m)
        degs = [(i, deg - i) for i in ca.degrees() if cb.rank(deg - i)]
        if not degs:
            continue
        i, j = degs[rng.randrange(len(degs))]
        xa = _rand_element(rng, a, n, i)
        xb = _rand_element(rng, b, m, j)
        theta = _rand_perm(rng, p)
        alpha, beta = _rand_perm(rng, n), _rand_perm(rng, m)
        lhs = day_normalize(a, b, theta, n, a.act_perm(n, alpha, xa), b.act_perm(m, beta, xb))
        rhs = day_normalize(a, b, perm.compose(perm.box(alpha, beta), theta), n, xa, xb)
        if lhs != rhs:
            failures += 1
            witness = witness or "theta=%s alpha=%s beta=%s" % (theta, alpha, beta)
    return _done(cfg.trials, failures, witness)


@register("day-normalize", "action-functorial")
def _day_functorial(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        g1, g2 = _rand_perm(rng, p), _rand_perm(rng, p)
        lhs = day_act(a, b, g2, day_act(a, b, g1, x))
        rhs = day_act(a, b, perm.compose(g1, g2), x)
        if lhs != rhs:
            failures += 1
            witness = witness or "%s then %s" % (g1, g2)
    return _done(cfg.trials, failures, witness)


@register("day-normalize", "action-chain-map")
def _day_chain(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        g = _rand_perm(rng, p)
        if day_d(a, b, day_act(a, b, g, x)) != day_act(a, b, g, day_d(a, b, x)):
            failures += 1
            witness = witness or str(g)
    return _done(cfg.trials, failures, witness)


@register("day-normalize", "differential-squares-to-zero")
def _day_dd(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        if not day_d(a, b, day_d(a, b, x)).is_zero():
            failures += 1
            witness = witness or repr(x)
    return _done(cfg.trials, failures, witness)


@register("day-twist", "involution")
def _twist_involution(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        if day_twist(b, a, day_twist(a, b, x)) != x:
            failures += 1
            witness = witness or repr(x)
    return _done(cfg.trials, failures, witness)


@register("day-twist", "equivariant")
def _twist_equivariant(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        g = _rand_perm(rng, p)
        if day_twist(a, b, day_act(a, b, g, x)) != day_act(b, a, g, day_twist(a, b, x)):
            failures += 1
            witness = witness or str(g)
    return _done(cfg.trials, failures, witness)


@register("day-twist", "chain-map")
def _twist_chainmap(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        a, b = _rand_day_pair(cfg, rng)
        spot = _rand_day_spot(rng, a, b, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        x = _rand_day_element(rng, a, b, p, deg)
        if day_twist(a, b, day_d(a, b, x)) != day_d(b, a, day_twist(a, b, x)):
            failures += 1
            witness = witness or repr(x)
    return _done(cfg.trials, failures, witness)


def _naive_rep(a, b, theta, n, xa, xb):
    """The naive candidate twist applied to a raw representative: keep
    theta, swap the factors, Koszul sign only."""
    m = theta.source - n
    sgn = -1 if (xa.degree * xb.degree) % 2 else 1
    return day_normalize(b, a, theta, m, xb, xa, sgn)


@register("day-twist-naive", "counterexample-found")
def _naive_counterexample(cfg, rng):
    """Negative test: the formula that keeps theta while swapping factors is
    not constant on representatives.  Pass means a witness IS found."""
    a = _regular_rep_seq()
    b = a
    trials = 0
    found = None
    # the documented family: levels (2, 1), alpha the swap, theta = identity
    for alpha in (_permutations(range(2))):
        alpha = perm.Injection(2, 2, alpha)
        for theta_im in _permutations(range(3)):
            theta = perm.Injection(3, 3, theta_im)
            trials += 1
            xa = a.complex(2).basis_element(0, 0)
            xb = b.complex(1).basis_element(0, 0)
            theta2 = perm.compose(perm.box(alpha, perm.identity(1)), theta)
            same_el = day_normalize(a, b, theta2, 2, xa, xb) == day_normalize(
                a, b, theta, 2, a.act_perm(2, alpha, xa), xb
            )
            n1 = _naive_rep(a, b, theta2, 2, xa, xb)
            n2 = _naive_rep(a, b, theta, 2, a.act_perm(2, alpha, xa), xb)
            if same_el and n1 != n2 and found is None:
                found = "alpha=%s theta=%s: %r vs %r" % (alpha, theta, n1, n2)
    if found is None:
        return _done(trials, 1, "no counterexample at levels (2,1)")
    return _done(trials, 0, found)


@register("day-twist-naive", "well-defined-twist-contrast")
def _naive_contrast(cfg, rng):
    """On the same witness family the corrected twist IS representative
    independent."""
    a = _regular_rep_seq()
    b = a
    trials = failures = 0
    witness = None
    for alpha_im in _permutations(range(2)):
        alpha = perm.Injection(2, 2, alpha_im)
        for theta_im in _permutations(range(3)):
            theta = perm.Injection(3, 3, theta_im)
            trials += 1
            xa = a.complex(2).basis_element(0, 0)
            xb = b.complex(1).basis_element(0, 0)
            theta2 = perm.compose(perm.box(alpha, perm.identity(1)), theta)
            t1 = day_twist(a, b, day_normalize(a, b, theta2, 2, xa, xb))
            t2 = day_twist(a, b, day_normalize(a, b, theta, 2, a.act_perm(2, alpha, xa), xb))
            if t1 != t2:
                failures += 1
                witness = witness or "alpha=%s theta=%s" % (alpha, theta)
    return _done(trials, failures, witness)


# ---------------------------------------------------------------------------
# spectrum validation


@register("spectrum-validation", "corpus-validates")
def _corpus_validates(cfg, rng):
    trials = failures = 0
    witness = None
    for name, s in corpus(cfg):
        trials += 1
        rep = validate_spectrum(s, max_k=2)
        if not rep.ok:
            failures += 1
            witness = witness or "%s: %r" % (name, rep)
    return _done(trials, failures, witness)


@register("spectrum-validation", "sign-corrupted-suspension-detected")
def _mutation_sigma(cfg, rng):
    base = two_term(2)
    good = r_build(base, 3)
    complexes = [good.complex(n) for n in range(4)]
    transpositions = [[good.transposition(n, t) for t in range(max(n - 1, 0))] for n in range(4)]
    sigma1 = [good.sigma1_map(n) for n in range(3)]
    # flip the sign of a single degree block: a global -1 would still be a
    # valid (isomorphic) module structure, but a per-degree flip breaks the
    # anticommutation with the nonzero differential of M2
    m1 = sigma1[1]
    mats = dict(m1.mats)
    deg = max(mats)
    mats[deg] = mats[deg].scale(-1)
    sigma1[1] = ChainMap(m1.source, m1.target, mats, shift=1)
    mutant = Spectrum(complexes, transpositions, sigma1, validate=False)
    rep = validate_spectrum(mutant, max_k=2)
    if rep.ok:
        return _done(1, 1, "sign-flipped sigma1 on R(M2) passed validation")
    return _done(1, 0, None)


@register("spectrum-validation", "corrupted-action-detected")
def _mutation_action(cfg, rng):
    from ..chain import sphere as _sphere

    complexes = [_sphere(n) for n in range(4)]
    transpositions = []
    for n, c in enumerate(complexes):
        pos = ChainMap(c, c, {n: IntMatrix.from_rows([[1]])})  # wrong: should be -1
        transpositions.append([pos] * max(n - 1, 0))
    sigma1 = [
        ChainMap(complexes[n], complexes[n + 1], {n: IntMatrix.from_rows([[1]])}, shift=1)
        for n in range(3)
    ]
    mutant = Spectrum(complexes, transpositions, sigma1, validate=False)
    rep = validate_spectrum(mutant, max_k=2)
    if rep.ok:
        return _done(1, 1, "trivial-action Z[*] passed validation")
    return _done(1, 0, None)


# ---------------------------------------------------------------------------
# bar tensor suites


def _bar_pairs(cfg):
    members = dict(corpus(cfg))
    names = ["Z[*]", "R(S0)", "R(M2)", "F1(S0)"]
    return [(members[x], members[y]) for x in names for y in names]


def _rand_bar_spot(rng, bar, n_max, d_max):
    spots = []
    for p in range(min(bar.max_level, n_max) + 1):
        c = bar.complex(p)
        for deg in c.degrees():
            if deg <= d_max and c.rank(deg):
                spots.append((p, deg))
    return spots[rng.randrange(len(spots))] if spots else None


@register("bar-twist-descent", "twist-respects-relations")
def _bar_twist_descent(cfg, rng):
    failures = 0
    witness = None
    pairs = _bar_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        rev = _bar(b, a)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        rels = bar.relations(p, deg)
        if not rels:
            continue
        r = rels[rng.randrange(len(rels))]
        x = day_from_coords(p, deg, bar.basis(p, deg), r)
        if not rev.bar_equal(bar_twist(bar, x), day_zero(p, deg)):
            failures += 1
            witness = witness or "level %d degree %d relation %s" % (p, deg, list(r))
    return _done(cfg.trials, failures, witness)


@register("bar-twist-descent", "twist-chain-map-mod-relations")
def _bar_twist_chain(cfg, rng):
    failures = 0
    witness = None
    pairs = _bar_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        rev = _bar(b, a)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        basis = bar.basis(p, deg)
        x = day_from_coords(p, deg, basis, [rng.randint(-3, 3) for _ in basis])
        if not rev.bar_equal(day_d(b, a, bar_twist(bar, x)), bar_twist(bar, day_d(a, b, x))):
            failures += 1
            witness = witness or "level %d degree %d" % (p, deg)
    return _done(cfg.trials, failures, witness)


@register("bar-lattice-completeness", "relations-closed-under-action")
def _bar_lattice_action(cfg, rng):
    failures = 0
    witness = None
    pairs = _bar_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        rels = bar.relations(p, deg)
        if not rels:
            continue
        r = rels[rng.randrange(len(rels))]
        g = _rand_perm(rng, p)
        x = day_act(bar.a, bar.b, g, day_from_coords(p, deg, bar.basis(p, deg), r))
        if not bar.bar_equal(x, day_zero(p, deg)):
            failures += 1
            witness = witness or "gamma=%s at level %d degree %d" % (g, p, deg)
    return _done(cfg.trials, failures, witness)


@register("bar-lattice-completeness", "general-anchor-in-lattice")
def _bar_lattice_anchor(cfg, rng):
    """Mixing relations anchored at arbitrary permutations (not just
    tri-shuffles) already lie in the tri-shuffle-anchored lattice."""
    failures = 0
    witness = None
    pairs = _bar_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        p = rng.randint(1, min(bar.max_level, cfg.max_level))
        n = rng.randint(0, p - 1)
        mm = rng.randint(1, p - n)
        q = p - n - mm
        ca, cb = a.complex(n), b.complex(q)
        degs = [
            (i, k)
            for i in ca.degrees()
            for k in cb.degrees()
            if ca.rank(i) and cb.rank(k) and i + mm + k <= cfg.max_level + mm
        ]
        if not degs:
            continue
        i, k = degs[rng.randrange(len(degs))]
        ai = rng.randrange(ca.rank(i))
        bi = rng.randrange(cb.rank(k))
        av, bv = ca.basis_element(i, ai), cb.basis_element(k, bi)
        anchor = _rand_perm(rng, p)
        tw = perm.box(perm.twist(mm, n), perm.identity(q))
        lhs = day_normalize(a, b, anchor, n, av, b.sigma(mm, q, bv))
        sgn = -1 if (i * mm) % 2 else 1
        rhs = day_normalize(a, b, perm.compose(tw, anchor), n + mm, a.sigma(mm, n, av), bv, sgn)
        if not bar.bar_equal(lhs, rhs):
            failures += 1
            witness = witness or "anchor=%s split (%d,%d,%d)" % (anchor, n, mm, q)
    return _done(cfg.trials, failures, witness)


@register("bar-lattice-completeness", "differential-preserves-lattice")
def _bar_lattice_d(cfg, rng):
    failures = 0
    witness = None
    pairs = _bar_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        rels = bar.relations(p, deg)
        if not rels:
            continue
        r = rels[rng.randrange(len(rels))]
        dx = day_d(a, b, day_from_coords(p, deg, bar.basis(p, deg), r))
        if not bar.bar_equal(dx, day_zero(p, deg - 1)):
            failures += 1
            witness = witness or "level %d degree %d" % (p, deg)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# D suites


def _rand_spectrum(cfg, rng):
    members = corpus(cfg)
    return members[rng.randrange(len(members))][1]


def _rand_spot_element(cfg, rng, s, n_min=0):
    spots = _spots(s, cfg.max_level, cfg.max_level, n_min)
    if not spots:
        return None
    n, deg = spots[rng.randrange(len(spots))]
    return n, _rand_element(rng, s, n, deg)


@register("d-well-definedness", "completion-independence")
def _d_completion(cfg, rng):
    trials = max(cfg.trials, 500)
    failures = 0
    witness = None
    for _ in range(trials):
        s = _rand_spectrum(cfg, rng)
        picked = _rand_spot_element(cfg, rng, s)
        if picked is None:
            continue
        n, a = picked
        m = rng.randint(n, min(cfg.stab_bound, s.max_level))
        alpha = _rand_injection(rng, n, m)
        delta = _rand_perm(rng, m - n)
        alt = perm.compose(perm.box(delta, perm.identity(n)), perm.complete(alpha))
        lhs = xi(s, m, cal_d_push(s, alpha, a))
        rhs = xi(s, m, cal_d_push(s, alpha, a, completion=alt))
        v = d_equal(s, lhs, rhs, _stab(cfg, s))
        if not v:
            failures += 1
            witness = witness or "alpha=%s delta=%s -> %r" % (alpha, delta, v)
    return _done(trials, failures, witness)


@register("d-well-definedness", "suspension-insensitive")
def _d_suspension(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        s = _rand_spectrum(cfg, rng)
        picked = _rand_spot_element(cfg, rng, s)
        if picked is None:
            continue
        n, a = picked
        k = rng.randint(1, max(1, min(cfg.stab_bound, s.max_level) - n))
        if n + k > s.max_level:
            continue
        v = d_equal(s, xi(s, n + k, s.sigma(k, n, a)), xi(s, n, a), _stab(cfg, s))
        if not v:
            failures += 1
            witness = witness or "k=%d n=%d -> %r" % (k, n, v)
    return _done(cfg.trials, failures, witness)


@register("d-well-definedness", "signed-action-insensitive")
def _d_action(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        s = _rand_spectrum(cfg, rng)
        picked = _rand_spot_element(cfg, rng, s, n_min=2)
        if picked is None:
            continue
        n, a = picked
        beta = _rand_perm(rng, n)
        lhs = xi(s, n, s.act_perm(n, beta, a))
        rhs = xi(s, n, a.scale(perm.sign(beta)))
        v = d_equal(s, lhs, rhs, _stab(cfg, s))
        if not v:
            failures += 1
            witness = witness or "beta=%s -> %r" % (beta, v)
    return _done(cfg.trials, failures, witness)


@register("d-functoriality", "composition")
def _d_functorial(cfg, rng):
    trials = max(cfg.trials, 500)
    failures = 0
    witness = None
    for _ in range(trials):
        s = _rand_spectrum(cfg, rng)
        picked = _rand_spot_element(cfg, rng, s)
        if picked is None:
            continue
        n, a = picked
        p = rng.randint(n, min(cfg.stab_bound, s.max_level, 5))
        m = rng.randint(n, p)
        alpha = _rand_injection(rng, n, m)
        beta = _rand_injection(rng, m, p)
        lhs = xi(s, p, cal_d_push(s, perm.compose(alpha, beta), a))
        rhs = xi(s, p, cal_d_push(s, beta, cal_d_push(s, alpha, a)))
        v = d_equal(s, lhs, rhs, _stab(cfg, s))
        if not v:
            failures += 1
            witness = witness or "alpha=%s beta=%s -> %r" % (alpha, beta, v)
    return _done(trials, failures, witness)


@register("d-chain-map", "push-commutes-with-d")
def _d_chainmap(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        s = _rand_spectrum(cfg, rng)
        picked = _rand_spot_element(cfg, rng, s)
        if picked is None:
            continue
        n, a = picked
        if a.degree - 1 < 0:
            continue
        m = rng.randint(n, min(cfg.stab_bound, s.max_level))
        alpha = _rand_injection(rng, n, m)
        da = s.complex(n).apply_d(a)
        sgn_n = -1 if n % 2 else 1
        sgn_m = -1 if m % 2 else 1
        lhs = xi(s, m, cal_d_push(s, alpha, da).scale(sgn_n))
        rhs = xi(s, m, s.complex(m).apply_d(cal_d_push(s, alpha, a)).scale(sgn_m))
        v = d_equal(s, lhs, rhs, _stab(cfg, s))
        if not v:
            failures += 1
            witness = witness or "alpha=%s -> %r" % (alpha, v)
    return _done(cfg.trials, failures, witness)


@register("d-chain-map", "materialized-d-squares-to-zero")
def _d_materialized(cfg, rng):
    trials = failures = 0
    witness = None
    for name, s in corpus_materializable(cfg):
        trials += 1
        try:
            dc = materialize_D(s, min(cfg.stab_bound - 1, s.max_level - 1))
        except Exception as e:  # noqa: BLE001 - report, never crash the suite
            failures += 1
            witness = witness or "%s: %r" % (name, e)
            continue
        for j in dc.complex.degrees():
            if not dc.complex.d(j - 1).mul(dc.complex.d(j)).is_zero():
                failures += 1
                witness = witness or "%s at D-degree %d" % (name, j)
    return _done(trials, failures, witness)


# ---------------------------------------------------------------------------
# phi suites


def _phi_pairs(cfg):
    members = dict(corpus(cfg))
    names = ["Z[*]", "R(S0)", "R(M2)", "F1(S0)"]
    return [(members[x], members[y]) for x in names for y in names]


def _rand_bounded_classes(cfg, rng, seqs, level_sum):
    """Random nonzero-level spots, one per sequence, with levels summing to
    at most level_sum; None when the bound admits no choice."""
    out = []
    remaining = level_sum
    for s in seqs:
        spots = [
            (n, deg)
            for n, deg in _spots(s, min(cfg.max_level, remaining), cfg.max_level)
            if remaining - n >= 0
        ]
        if not spots:
            return None
        n, deg = spots[rng.randrange(len(spots))]
        out.append((n, _rand_element(rng, s, n, deg)))
        remaining -= n
    return out


@register("phi-well-definedness", "sign-equivariance")
def _phi_signs(cfg, rng):
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        picked = _rand_bounded_classes(cfg, rng, (a, b), bar.max_level)
        if picked is None:
            continue
        (n, av), (m, bv) = picked
        alpha, beta = _rand_perm(rng, n), _rand_perm(rng, m)
        lhs = phi(bar, dtensor_of(a, n, a.act_perm(n, alpha, av), b, m, b.act_perm(m, beta, bv)))
        rhs = phi(bar, dtensor_of(a, n, av, b, m, bv)).scale(perm.sign(alpha) * perm.sign(beta))
        v = d_equal(bar, lhs, rhs, _stab(cfg, bar))
        if not v:
            failures += 1
            witness = witness or "alpha=%s beta=%s -> %r" % (alpha, beta, v)
    return _done(cfg.trials, failures, witness)


@register("phi-well-definedness", "left-suspension-insensitive")
def _phi_left_sigma(cfg, rng):
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        k = rng.randint(1, 2)
        picked = _rand_bounded_classes(cfg, rng, (a, b), bar.max_level - k)
        if picked is None:
            continue
        (n, av), (m, bv) = picked
        if n + k > a.max_level:
            continue
        lhs = phi(bar, dtensor_of(a, n + k, a.sigma(k, n, av), b, m, bv))
        rhs = phi(bar, dtensor_of(a, n, av, b, m, bv))
        v = d_equal(bar, lhs, rhs, _stab(cfg, bar))
        if not v:
            failures += 1
            witness = witness or "k=%d n=%d m=%d -> %r" % (k, n, m, v)
    return _done(cfg.trials, failures, witness)


@register("phi-well-definedness", "right-suspension-insensitive")
def _phi_right_sigma(cfg, rng):
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        k = rng.randint(1, 2)
        picked = _rand_bounded_classes(cfg, rng, (a, b), bar.max_level - k)
        if picked is None:
            continue
        (n, av), (m, bv) = picked
        if m + k > b.max_level:
            continue
        lhs = phi(bar, dtensor_of(a, n, av, b, m + k, b.sigma(k, m, bv)))
        rhs = phi(bar, dtensor_of(a, n, av, b, m, bv))
        v = d_equal(bar, lhs, rhs, _stab(cfg, bar))
        if not v:
            failures += 1
            witness = witness or "k=%d n=%d m=%d -> %r" % (k, n, m, v)
    return _done(cfg.trials, failures, witness)


@register("phi-chain-map", "d-phi-equals-phi-d")
def _phi_chainmap(cfg, rng):
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar = _bar(a, b)
        picked = _rand_bounded_classes(cfg, rng, (a, b), bar.max_level)
        if picked is None:
            continue
        (n, av), (m, bv) = picked
        t = dtensor_of(a, n, av, b, m, bv)
        lhs = d_on_D(bar, phi(bar, t))
        rhs = phi(bar, dtensor_d(a, b, t))
        v = d_equal(bar, lhs, rhs, _stab(cfg, bar))
        if not v:
            failures += 1
            witness = witness or "n=%d m=%d -> %r" % (n, m, v)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# the symmetric monoidal square


@register("symmetric-square", "phi-twist-square-exhaustive")
def _symmetric_square(cfg, rng):
    members = [(n, s) for n, s in corpus(cfg) if n != "R(S0+S2)"]
    trials = failures = 0
    witness = None
    for name_a, a in members:
        for name_b, b in members:
            bar_ab = _bar(a, b)
            bar_ba = _bar(b, a)
            fwd = lambda de: day_twist(a, b, de)  # noqa: E731
            for n, i, ai in _gens(a, cfg.max_level, cfg.max_level):
                for m, j, bi in _gens(b, cfg.max_level, cfg.max_level):
                    if n + m > bar_ab.max_level:
                        continue
                    trials += 1
                    t = dtensor_of(
                        a, n, a.complex(n).basis_element(i, ai), b, m, b.complex(m).basis_element(j, bi)
                    )
                    lhs = phi(bar_ba, dtensor_twist(t))
                    rhs = d_bar_map(bar_ab, phi(bar_ab, t), fwd, bar_ba)
                    v = d_equal(bar_ba, lhs, rhs, _stab(cfg, bar_ba))
                    if not v:
                        failures += 1
                        witness = witness or "%s(x)%s gen (%d,%d,%d)x(%d,%d,%d) -> %r" % (
                            name_a,
                            name_b,
                            n,
                            i,
                            ai,
                            m,
                            j,
                            bi,
                            v,
                        )
    return _done(trials, failures, witness)


@register("symmetric-square", "expected-sign")
def _symmetric_square_sign(cfg, rng):
    """Both routes literally produce (-1)^{mi+ij} xi(iota_*(b (x) a))."""
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for _ in range(cfg.trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar_ba = _bar(b, a)
        picked = _rand_bounded_classes(cfg, rng, (a, b), bar_ba.max_level)
        if picked is None:
            continue
        (n, av), (m, bv) = picked
        i, j = av.degree, bv.degree
        got = phi(bar_ba, dtensor_twist(dtensor_of(a, n, av, b, m, bv)))
        sgn = -1 if (m * i + i * j) % 2 else 1
        expected = phi(bar_ba, dtensor_of(b, m, bv, a, n, av)).scale(
            sgn * (-1 if (n * j + n * m) % 2 else 1)
        )
        # phi introduces (-1)^{n j + n m} on b (x) a; dividing it out leaves
        # exactly the proof's (-1)^{mi+ij} on xi(iota_*(b (x) a))
        lhs_terms = got.terms
        rhs_terms = expected.terms
        if lhs_terms != rhs_terms:
            failures += 1
            witness = witness or "n=%d m=%d i=%d j=%d" % (n, m, i, j)
    return _done(cfg.trials, failures, witness)


# ---------------------------------------------------------------------------
# phi associativity / unit


@register("phi-associativity", "reassociated-squares")
def _phi_assoc(cfg, rng):
    members = dict(corpus(cfg))
    seqs = [members["Z[*]"], members["R(S0)"], members["R(M2)"]]
    trials = min(cfg.trials, 120)
    failures = 0
    witness = None
    for _ in range(trials):
        a = seqs[rng.randrange(len(seqs))]
        b = seqs[rng.randrange(len(seqs))]
        c = seqs[rng.randrange(len(seqs))]
        picked = _rand_bounded_classes(cfg, rng, (a, b, c), cfg.max_level)
        if picked is None:
            continue
        (n, av), (m, bv), (q, cv) = picked
        bar_ab = _bar(a, b)
        bar_bc = _bar(b, c)
        bar_ab_c = _bar(bar_ab, c)
        bar_a_bc = _bar(a, bar_bc)
        lhs_inner = phi(bar_ab, dtensor_of(a, n, av, b, m, bv))
        lhs = phi(bar_ab_c, _dtensor_pair(lhs_inner, xi(c, q, cv)))
        lhs_mapped = d_bar_map(bar_ab_c, lhs, lambda de: bar_assoc(bar_ab_c, bar_a_bc, de), bar_a_bc)
        rhs_inner = phi(bar_bc, dtensor_of(b, m, bv, c, q, cv))
        rhs = phi(bar_a_bc, _dtensor_pair(xi(a, n, av), rhs_inner))
        v = d_equal(bar_a_bc, lhs_mapped, rhs, min(_stab(cfg, bar_a_bc), n + m + q + 1))
        if not v:
            failures += 1
            witness = witness or "(%d,%d,%d) -> %r" % (n, m, q, v)
    return _done(trials, failures, witness)


def _dtensor_pair(x, y):
    """Bilinear expansion of two D-elements into a formal tensor of basis
    classes (no sign: this is distribution over sums, not a graded swap)."""
    from ..dfunctor import DTensor

    terms = {}
    for (n, i), xc in x.terms.items():
        for ai, va in enumerate(xc):
            if va == 0:
                continue
            for (m, j), yc in y.terms.items():
                for bi, vb in enumerate(yc):
                    if vb:
                        key = ((n, i, ai), (m, j, bi))
                        terms[key] = terms.get(key, 0) + va * vb
    return DTensor(x.ddeg + y.ddeg, terms)


def _d_unitor_left(bar_za, x, target):
    """D of the left unitor Z[*] (x)bar A -> A, classwise on representatives."""
    terms = {}
    for (p, deg), coeffs in x.terms.items():
        de = day_from_coords(p, deg, bar_za.basis(p, deg), coeffs)
        v = left_unitor(bar_za, de)
        key = (p, v.degree)
        if key in terms:
            terms[key] = tuple(s + t for s, t in zip(terms[key], v.coeffs))
        else:
            terms[key] = v.coeffs
    return DElement(x.ddeg, terms)


@register("phi-unit", "left-unit-coherence")
def _phi_unit_left(cfg, rng):
    members = dict(corpus(cfg))
    z = members["Z[*]"]
    targets = [members["R(S0)"], members["R(M2)"], members["F1(S0)"]]
    trials = failures = 0
    witness = None
    for a in targets:
        bar_za = _bar(z, a)
        for n, i, ai in _gens(a, cfg.max_level, cfg.max_level):
            for k in range(0, cfg.max_level - n + 1):
                if k + n > bar_za.max_level:
                    continue
                trials += 1
                av = a.complex(n).basis_element(i, ai)
                ek = ChainElement(k, (1,))
                t = dtensor_of(z, k, ek, a, n, av)
                out = _d_unitor_left(bar_za, phi(bar_za, t), a)
                v = d_equal(a, out, xi(a, n, av), _stab(cfg, a))
                if not v:
                    failures += 1
                    witness = witness or "k=%d gen (%d,%d,%d) -> %r" % (k, n, i, ai, v)
    return _done(trials, failures, witness)


@register("phi-unit", "right-unit-coherence")
def _phi_unit_right(cfg, rng):
    members = dict(corpus(cfg))
    z = members["Z[*]"]
    targets = [members["R(S0)"], members["R(M2)"]]
    trials = failures = 0
    witness = None
    for a in targets:
        bar_az = _bar(a, z)
        bar_za = _bar(z, a)
        for n, i, ai in _gens(a, cfg.max_level, cfg.max_level):
            for k in range(0, cfg.max_level - n + 1):
                if k + n > bar_az.max_level:
                    continue
                trials += 1
                av = a.complex(n).basis_element(i, ai)
                ek = ChainElement(k, (1,))
                t = dtensor_of(a, n, av, z, k, ek)
                # right unitor = left unitor after the twist
                mapped = d_bar_map(bar_az, phi(bar_az, t), lambda de: day_twist(a, z, de), bar_za)
                out = _d_unitor_left(bar_za, mapped, a)
                v = d_equal(a, out, xi(a, n, av), _stab(cfg, a))
                if not v:
                    failures += 1
                    witness = witness or "k=%d gen (%d,%d,%d) -> %r" % (k, n, i, ai, v)
    return _done(trials, failures, witness)


# ---------------------------------------------------------------------------
# psi suites


_R_CACHE = {}


def _rspec(cfg, c_name, c):
    key = (c_name, cfg.stab_bound)
    if key not in _R_CACHE:
        _R_CACHE[key] = r_build(c, cfg.stab_bound)
    return _R_CACHE[key]


def _psi_setup(cfg, rng):
    (na, ca), (nb, cb) = (
        _small_complexes()[rng.randrange(3)],
        _small_complexes()[rng.randrange(3)],
    )
    rc = _rspec(cfg, na, ca)
    rcp = _rspec(cfg, nb, cb)
    rt = _rspec(cfg, "(%s)x(%s)" % (na, nb), tensor(ca, cb))
    return rc, rcp, rt, ca, cb


@register("psi-coequalizer", "relations-map-to-zero")
def _psi_coeq(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        rc, rcp, rt, ca, cb = _psi_setup(cfg, rng)
        bar = _bar(rc, rcp)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level + 2)
        if spot is None:
            continue
        p, deg = spot
        rels = bar.relations(p, deg)
        if not rels:
            continue
        r = rels[rng.randrange(len(rels))]
        out = psi(rt, rc, rcp, day_from_coords(p, deg, bar.basis(p, deg), r))
        if not out.is_zero():
            failures += 1
            witness = witness or "level %d degree %d: psi(relation) = %r" % (p, deg, out)
    return _done(cfg.trials, failures, witness)


@register("psi-commutativity", "twist-square")
def _psi_comm(cfg, rng):
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        (na, ca), (nb, cb) = (
            _small_complexes()[rng.randrange(3)],
            _small_complexes()[rng.randrange(3)],
        )
        rc = _rspec(cfg, na, ca)
        rcp = _rspec(cfg, nb, cb)
        rt = _rspec(cfg, "(%s)x(%s)" % (na, nb), tensor(ca, cb))
        rt2 = _rspec(cfg, "(%s)x(%s)" % (nb, na), tensor(cb, ca))
        tw = twist_chain(ca, cb, rt.base, rt2.base)
        bar = _bar(rc, rcp)
        spot = _rand_bar_spot(rng, bar, cfg.max_level, cfg.max_level + 2)
        if spot is None:
            continue
        p, deg = spot
        basis = bar.basis(p, deg)
        x = day_from_coords(p, deg, basis, [rng.randint(-3, 3) for _ in basis])
        lhs = psi(rt2, rcp, rc, day_twist(rc, rcp, x))
        y = psi(rt, rc, rcp, x)
        rhs = rt2.from_tensor(p, tw.apply(rt.to_tensor(p, y)))
        if lhs != rhs:
            failures += 1
            witness = witness or "level %d degree %d" % (p, deg)
    return _done(cfg.trials, failures, witness)


def _reassoc_index(c1, c2, c3, deg):
    """Index map from the basis of (C1 (x) C2) (x) C3 to C1 (x) (C2 (x) C3)
    at one degree (the associator of graded modules; no signs)."""
    t12, t23 = tensor(c1, c2), tensor(c2, c3)
    left = tensor_basis(t12, c3, deg)
    out = []
    for (i12, k12, ci) in left:
        i1, a1, b1 = tensor_basis(c1, c2, i12)[k12]
        j3 = deg - i12
        i23 = (i12 - i1) + j3
        k23 = tensor_basis(c2, c3, i23).index((i12 - i1, b1, ci))
        out.append(tensor_basis(c1, t23, deg).index((i1, a1, k23)))
    return out


@register("psi-associativity", "reader-exercise")
def _psi_assoc(cfg, rng):
    failures = 0
    witness = None
    trials = cfg.trials
    for _ in range(trials):
        names = [_small_complexes()[rng.randrange(3)] for _ in range(3)]
        (n1, c1), (n2, c2), (n3, c3) = names
        r1, r2, r3 = (_rspec(cfg, n, c) for n, c in names)
        t12 = tensor(c1, c2)
        t23 = tensor(c2, c3)
        rt12 = _rspec(cfg, "(%s)x(%s)" % (n1, n2), t12)
        rt23 = _rspec(cfg, "(%s)x(%s)" % (n2, n3), t23)
        rt_l = _rspec(cfg, "((%s)x(%s))x(%s)" % (n1, n2, n3), tensor(t12, c3))
        rt_r = _rspec(cfg, "(%s)x((%s)x(%s))" % (n1, n2, n3), tensor(c1, t23))
        picks = _rand_bounded_classes(cfg, rng, (r1, r2, r3), cfg.stab_bound)
        if picks is None:
            continue
        (p1, x1), (p2, x2), (p3, x3) = picks
        # left bracketing
        inner_l = psi(rt12, r1, r2, _day_pair(p1, x1, p2, x2))
        lhs = psi(rt_l, rt12, r3, _day_pair(p1 + p2, inner_l, p3, x3))
        # right bracketing
        inner_r = psi(rt23, r2, r3, _day_pair(p2, x2, p3, x3))
        rhs = psi(rt_r, r1, rt23, _day_pair(p1, x1, p2 + p3, inner_r))
        p = p1 + p2 + p3
        lc = rt_l.to_tensor(p, lhs)
        rc_ = rt_r.to_tensor(p, rhs)
        idx = _reassoc_index(c1, c2, c3, lc.degree)
        moved = [0] * len(rc_.coeffs)
        for k, v in enumerate(lc.coeffs):
            moved[idx[k]] += v
        if tuple(moved) != rc_.coeffs:
            failures += 1
            witness = witness or "levels (%d,%d,%d)" % (p1, p2, p3)
    return _done(trials, failures, witness)


def _day_pair(p1, x1, p2, x2):
    """The identity-shuffle Day element x1 (x) x2 from coordinate elements."""
    terms = {}
    ident = perm.identity(p1 + p2).images
    for ai, va in enumerate(x1.coeffs):
        if va == 0:
            continue
        for bi, vb in enumerate(x2.coeffs):
            if vb:
                terms[(p1, p2, ident, x1.degree, ai, x2.degree, bi)] = va * vb
    return DayElement(p1 + p2, x1.degree + x2.degree, terms)


# ---------------------------------------------------------------------------
# adjunction


@register("adjunction-triangles", "triangle-R")
def _triangle_r(cfg, rng):
    trials = failures = 0
    witness = None
    for name, c in _small_complexes() + [("S0+S2", direct_sum(sphere(0), sphere(2)))]:
        rc = _rspec(cfg, name, c)
        ctx = _ctx(rc, min(cfg.stab_bound - 1, rc.max_level - 1))
        eps = epsilon_map(rc, ctx.dcomplex)
        if not eps.commutes_with_d():
            failures += 1
            witness = witness or "%s: epsilon is not a chain map" % name
        for n, deg, i in _gens(rc, cfg.max_level, cfg.max_level + 2):
            trials += 1
            gen = rc.complex(n).basis_element(deg, i)
            e = ctx.eta(n, gen)
            back = rc.from_tensor(n, eps.apply(ctx.rspectrum.to_tensor(n, e)))
            if back != gen:
                failures += 1
                witness = witness or "%s gen (%d,%d,%d): got %r" % (name, n, deg, i, back)
    return _done(trials, failures, witness)


@register("adjunction-triangles", "triangle-D")
def _triangle_d(cfg, rng):
    trials = failures = 0
    witness = None
    for name, s in corpus_materializable(cfg):
        ctx = _ctx(s, min(cfg.stab_bound - 1, s.max_level - 1))
        dc = ctx.dcomplex
        n = dc.n_stab
        for j in dc.complex.degrees():
            for i in range(dc.complex.rank(j)):
                trials += 1
                basis_vec = tuple(1 if k == i else 0 for k in range(dc.complex.rank(j)))
                rep = dc.lift(j, basis_vec)
                e = ctx.eta(n, rep)  # D(eta)(xi(rep)) = xi(eta(rep))
                out = epsilon(ctx.rspectrum, xi(ctx.rspectrum, n, e))
                if out.coeffs != basis_vec:
                    failures += 1
                    witness = witness or "%s D-degree %d index %d: got %r" % (name, j, i, out)
    return _done(trials, failures, witness)


@register("adjunction-triangles", "torsion-member-detected")
def _triangle_torsion(cfg, rng):
    members = dict(corpus(cfg))
    s = members["F2(S1)"]
    try:
        materialize_D(s, min(cfg.stab_bound - 1, s.max_level - 1))
    except QuotientTorsionError as e:
        return _done(1, 0, str(e))
    return _done(1, 1, "F2(S1) materialized despite Z/2 coinvariant torsion")


# ---------------------------------------------------------------------------
# chi suites


@register("chi-inverse", "chi-phi-identity")
def _chi_phi(cfg, rng):
    trials = failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for a, b in pairs:
        bar = _bar(a, b)
        for n, i, ai in _gens(a, cfg.max_level, cfg.max_level):
            for m, j, bi in _gens(b, cfg.max_level, cfg.max_level):
                if n + m > bar.max_level:
                    continue
                trials += 1
                t = dtensor_of(
                    a, n, a.complex(n).basis_element(i, ai), b, m, b.complex(m).basis_element(j, bi)
                )
                if chi(bar, phi(bar, t)) != t:
                    failures += 1
                    witness = witness or "(%d,%d,%d)x(%d,%d,%d)" % (n, i, ai, m, j, bi)
    return _done(trials, failures, witness)


@register("chi-inverse", "phi-chi-identity")
def _phi_chi(cfg, rng):
    trials = failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    for a, b in pairs:
        bar = _bar(a, b)
        for p, deg in _spots(bar, cfg.max_level, cfg.max_level):
            for i in range(bar.complex(p).rank(deg)):
                trials += 1
                x = DElement(deg - p, {(p, deg): tuple(1 if k == i else 0 for k in range(bar.complex(p).rank(deg)))})
                v = d_equal(bar, phi(bar, chi(bar, x)), x, _stab(cfg, bar))
                if not v:
                    failures += 1
                    witness = witness or "level %d degree %d index %d -> %r" % (p, deg, i, v)
    return _done(trials, failures, witness)


@register("chi-cocommutativity", "twist-square-via-phi")
def _chi_cocomm(cfg, rng):
    failures = 0
    witness = None
    pairs = _phi_pairs(cfg)
    trials = min(cfg.trials, 200)
    for _ in range(trials):
        a, b = pairs[rng.randrange(len(pairs))]
        bar_ab = _bar(a, b)
        bar_ba = _bar(b, a)
        spot = _rand_bar_spot(rng, bar_ab, cfg.max_level, cfg.max_level)
        if spot is None:
            continue
        p, deg = spot
        rank = bar_ab.complex(p).rank(deg)
        i = rng.randrange(rank)
        x = DElement(deg - p, {(p, deg): tuple(1 if k == i else 0 for k in range(rank))})
        lhs = dtensor_twist(chi(bar_ab, x))
        rhs = chi(bar_ba, d_bar_map(bar_ab, x, lambda de: day_twist(a, b, de), bar_ba))
        # chi of different representatives differs by coinvariance; compare
        # through phi, which is injective since chi inverts it
        v = d_equal(bar_ba, phi(bar_ba, lhs), phi(bar_ba, rhs), _stab(cfg, bar_ba))
        if not v:
            failures += 1
            witness = witness or "level %d degree %d index %d -> %r" % (p, deg, i, v)
    return _done(trials, failures, witness)


@register("chi-composite-consistency", "closed-formula-vs-composite")
def _chi_composite(cfg, rng):
    members = dict(corpus(cfg))
    names = ["Z[*]", "R(S0)", "R(M2)", "F1(S0)"]
    trials = failures = 0
    witness = None
    for name_a in names:
        for name_b in names:
            a, b = members[name_a], members[name_b]
            bar = _bar(a, b)
            n_stab = min(cfg.stab_bound - 1, a.max_level - 1, b.max_level - 1)
            ctxa = _ctx(a, n_stab)
            ctxb = _ctx(b, n_stab)
            for p, deg in _spots(bar, min(cfg.max_level, 3), min(cfg.max_level, 3)):
                for i in range(bar.complex(p).rank(deg)):
                    trials += 1
                    x = DElement(
                        deg - p,
                        {(p, deg): tuple(1 if k == i else 0 for k in range(bar.complex(p).rank(deg)))},
                    )
                    via_composite = chi_composite(bar, ctxa, ctxb, x)
                    via_closed = dtensor_coordinates(chi(bar, x), ctxa, ctxb)
                    if via_composite != via_closed:
                        failures += 1
                        witness = witness or "%s(x)%s level %d degree %d index %d" % (
                            name_a,
                            name_b,
                            p,
                            deg,
                            i,
                        )
    return _done(trials, failures, witness)


# ---------------------------------------------------------------------------
# the rho-sign diagnostic


@register("rho-sign", "dual-evaluation")
def _rho_dual(cfg, rng):
    members = dict(corpus(cfg))
    s = members["R(M2)"]
    n, m = 1, 2
    a = s.complex(1).basis_element(1, 0)
    literal, per_note = rho_sign_diagnostic(s, n, m, a)
    witness = (
        "rho_*(e_-1 (x) a) on R(M2), n=1, m=2: literal formula gives %r; "
        "the alternative (-1)^((m-n)n) scaling gives %r" % (literal, per_note)
    )
    if literal == per_note:
        return _done(1, 1, "expected a sign discrepancy, found none: " + witness)
    if literal != s.sigma(m - n, n, a):
        return _done(1, 1, "literal formula no longer yields +sigma: " + witness)
    return 1, 0, "expected-discrepancy", witness


@register("rho-sign", "even-case-agrees")
def _rho_even(cfg, rng):
    members = dict(corpus(cfg))
    s = members["R(M2)"]
    trials = failures = 0
    witness = None
    for n in range(0, 3):
        for m in range(n, min(4, s.max_level) + 1):
            if ((m - n) * n) % 2:
                continue
            for deg in s.complex(n).degrees():
                if deg > cfg.max_level:
                    continue
                for i in range(s.complex(n).rank(deg)):
                    trials += 1
                    a = s.complex(n).basis_element(deg, i)
                    literal, per_note = rho_sign_diagnostic(s, n, m, a)
                    if literal != per_note:
                        failures += 1
                        witness = witness or "n=%d m=%d deg=%d" % (n, m, deg)
    return _done(trials, failures, witness)


@register("rho-sign", "literal-formula-well-defined")
def _rho_well_defined(cfg, rng):
    members = dict(corpus(cfg))
    s = members["R(M2)"]
    failures = 0
    witness = None
    for _ in range(cfg.trials):
        picked = _rand_spot_element(cfg, rng, s)
        if picked is None:
            continue
        n, a = picked
        m = rng.randint(n, min(cfg.stab_bound, s.max_level))
        delta = _rand_perm(rng, m - n)
        rho = perm.rho(n, m)
        alt = perm.compose(perm.box(delta, perm.identity(n)), perm.complete(rho))
        v = d_equal(
            s,
            xi(s, m, cal_d_push(s, rho, a)),
            xi(s, m, cal_d_push(s, rho, a, completion=alt)),
            _stab(cfg, s),
        )
        if not v:
            failures += 1
            witness = witness or "n=%d m=%d delta=%s -> %r" % (n, m, delta, v)
    return _done(cfg.trials, failures, witness)
