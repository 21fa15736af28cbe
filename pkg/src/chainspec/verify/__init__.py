"""Suite registry and check execution.

Each registered suite is a list of named checks; every check derives its
own random stream from (seed, suite, check), so suites are deterministic
and order-independent.  Reports carry exact failure counts and a witness
for the first failure.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from functools import lru_cache

from ..chain import ChainComplex, direct_sum, load_complex, sphere, two_term
from ..dfunctor import r_build
from ..spectra import free_spectrum, zstar_spectrum


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 300
    max_level: int = 4
    stab_bound: int = 5
    fail_fast: bool = False
    extra_complexes: tuple = ()  # (name, path) pairs loaded into the corpus as R(C)


@dataclass
class CheckReport:
    suite: str
    check: str
    trials: int
    failures: int
    verdict: str  # pass | fail | expected-discrepancy
    witness: str | None = None

    def __post_init__(self):
        if (self.failures == 0) != (self.verdict in ("pass", "expected-discrepancy")):
            raise ValueError("verdict inconsistent with failure count")

    def to_dict(self):
        d = {
            "suite": self.suite,
            "check": self.check,
            "trials": self.trials,
            "failures": self.failures,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


_SUITES = {}  # name -> list of (check_name, fn(cfg, rng) -> CheckReport-shaped tuple)


def register(suite, check):
    def wrap(fn):
        _SUITES.setdefault(suite, []).append((check, fn))
        return fn

    return wrap


def suite_names():
    from . import checks  # noqa: F401  (populates the registry)

    return sorted(_SUITES)


def check_rng(cfg: SuiteConfig, suite, check) -> random.Random:
    digest = hashlib.sha256(("%d:%s:%s" % (cfg.seed, suite, check)).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def run_suite(name, cfg: SuiteConfig):
    from . import checks  # noqa: F401  (populates the registry)

    if name not in _SUITES:
        raise UsageError("unknown suite: %s" % name)
    reports = []
    for check, fn in _SUITES[name]:
        trials, failures, verdict, witness = fn(cfg, check_rng(cfg, name, check))
        reports.append(CheckReport(name, check, trials, failures, verdict, witness))
        if cfg.fail_fast and verdict == "fail":
            break
    return reports


def run_all(cfg: SuiteConfig, names=None):
    from . import checks  # noqa: F401

    names = sorted(names) if names else suite_names()
    for n in names:
        if n not in _SUITES:
            raise UsageError("unknown suite: %s" % n)
    out = []
    for n in names:
        reports = run_suite(n, cfg)
        out.extend(reports)
        if cfg.fail_fast and any(r.verdict == "fail" for r in reports):
            break
    return out


# ---------------------------------------------------------------------------
# Corpus


@lru_cache(maxsize=None)
def _corpus_cached(level_bound, extra_complexes):
    members = [
        ("Z[*]", zstar_spectrum(level_bound)),
        ("R(S0)", r_build(sphere(0), level_bound)),
        ("R(S2)", r_build(sphere(2), level_bound)),
        ("R(M2)", r_build(two_term(2), level_bound)),
        ("F1(S0)", free_spectrum(1, sphere(0), level_bound)),
        ("F2(S1)", free_spectrum(2, sphere(1), level_bound)),
        ("R(S0+S2)", r_build(direct_sum(sphere(0), sphere(2)), level_bound)),
    ]
    for name, path in extra_complexes:
        members.append(("R(%s)" % name, r_build(load_complex(path), level_bound)))
    return tuple(members)


def corpus(cfg: SuiteConfig = SuiteConfig()):
    """The fixed test corpus, built once per level bound."""
    return _corpus_cached(cfg.stab_bound, cfg.extra_complexes)


def corpus_materializable(cfg: SuiteConfig = SuiteConfig()):
    """Corpus members whose D has no torsion (F2(S1) is the exception:
    its coinvariants carry a Z/2 factor, detected and excluded)."""
    return tuple((n, s) for n, s in corpus(cfg) if n != "F2(S1)")
