"""Reproducible randomized samplers and named verification suites.

Each suite is bound to one algebraic statement and reports machine-readable
pass/fail with replayable counterexample expressions.  Determinism: every
trial draws from a substream seeded by (seed, label), so identical configs
produce byte-identical reports; failures are sorted by trial index.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import affine, sl2
from .valued import INFINITY, Field, PAdicField, RationalFunctionField, ValuedScalar


class UnknownSuite(KeyError):
    pass


@dataclass
class SamplerConfig:
    field: Field
    seed: int = 42
    valuation_range: tuple[int, int] = (-3, 6)
    laurent_support: int = 6
    word_length: int = 8
    trials: int = 500

    def rng(self, label) -> random.Random:
        return random.Random(f"{self.seed}:{label}")

    def echo(self) -> dict:
        return {
            "field": self.field.spec_string(),
            "seed": self.seed,
            "valuation_range": list(self.valuation_range),
            "laurent_support": self.laurent_support,
            "word_length": self.word_length,
            "trials": self.trials,
        }


@dataclass
class Failure:
    trial: int
    inputs: str
    expected: str
    got: str

    def as_dict(self):
        return {"trial": self.trial, "inputs": self.inputs,
                "expected": self.expected, "got": self.got}


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list[Failure]
    elapsed: float
    skipped: str = ""

    @property
    def verdict(self) -> str:
        if self.skipped:
            return "not-applicable"
        return "pass" if not self.failures else "fail"

    def as_dict(self, include_elapsed=False):
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "verdict": self.verdict,
            "failures": [f.as_dict() for f in sorted(self.failures, key=lambda f: f.trial)],
        }
        if self.skipped:
            out["reason"] = self.skipped
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out


# ---------------------------------------------------------------------------
# Scalar and element samplers.  Every sampler returns (expression, element)
# and its output passes its defining predicate by construction.

def sample_unit(rng: random.Random, field: Field) -> ValuedScalar:
    if isinstance(field, PAdicField):
        p = field.p
        num = rng.choice([k for k in range(1, 4 * p) if k % p] + [-1, -2])
        while num % p == 0:
            num = rng.randrange(1, 4 * p)
        den = rng.choice([k for k in range(1, 2 * p + 1) if k % p])
        return field.scalar(Fraction(num, den))
    q = field.q
    deg = rng.randrange(0, 3)
    num = [rng.randrange(q) for _ in range(deg + 1)]
    num[0] = rng.randrange(1, q)
    if not any(num[1:]):
        num = num[:1]
    den = [1]
    if rng.random() < 0.4:
        den = [rng.randrange(1, q), rng.randrange(q)]
    return field.ratio(num, den)


def sample_scalar(rng: random.Random, field: Field, vrange, allow_zero=True) -> ValuedScalar:
    if allow_zero and rng.random() < 0.08:
        return field.zero()
    v = rng.randint(vrange[0], vrange[1])
    return sample_unit(rng, field) * field.pi_power(v)


def sample_scalar_min_val(rng: random.Random, field: Field, low: int, spread: int = 3) -> ValuedScalar:
    return sample_unit(rng, field) * field.pi_power(low + rng.randrange(0, spread + 1))


def sample_sl2_generic(rng: random.Random, cfg: SamplerConfig):
    field = cfg.field
    length = rng.randrange(1, max(2, cfg.word_length))
    words = []
    elt = sl2.identity(field)
    for _ in range(length):
        kind = rng.choice(["xp", "xm", "diag", "w"])
        if kind == "w":
            words.append("w")
            elt = elt * sl2.weyl_w(field)
        elif kind == "diag":
            f = sample_scalar(rng, field, cfg.valuation_range, allow_zero=False)
            words.append(f"diag({f})")
            elt = elt * sl2.diag_torus(f)
        else:
            c = sample_scalar(rng, field, cfg.valuation_range)
            words.append(f"{kind}({c})")
            elt = elt * (sl2.x_plus(c) if kind == "xp" else sl2.x_minus(c))
    return " ".join(words), elt


def sample_sl2_kerpi(rng: random.Random, cfg: SamplerConfig, n: int):
    field = cfg.field
    b = sample_scalar_min_val(rng, field, n)
    c = sample_scalar_min_val(rng, field, n)
    d = field.one() + sample_scalar_min_val(rng, field, n)
    expr = f"xp({b}) xm({c}) diag({d})"
    return expr, sl2.compose_upt(b, c, d)


def sample_sl2_vlambda(rng: random.Random, cfg: SamplerConfig, n: int):
    field = cfg.field
    b = sample_scalar_min_val(rng, field, 2 * n)
    c = sample_scalar_min_val(rng, field, 2 * n)
    d = field.one() + sample_scalar_min_val(rng, field, 4 * n)
    expr = f"xp({b}) xm({c}) diag({d})"
    return expr, sl2.compose_upt(b, c, d)


def sample_sl2_torus(rng: random.Random, cfg: SamplerConfig):
    s = sample_scalar(rng, cfg.field, (-2, 4), allow_zero=False)
    if rng.random() < 0.5:
        s = cfg.field.one() + sample_scalar_min_val(rng, cfg.field, rng.randrange(1, 5))
    return f"diag({s})", sl2.diag_torus(s)


def sample_tree_point(rng: random.Random, cfg: SamplerConfig):
    expr, g = sample_sl2_generic(rng, cfg)
    y = Fraction(rng.randint(2 * cfg.valuation_range[0], 2 * cfg.valuation_range[1]), 2)
    return f"point({expr}, {y})", sl2.TreePoint.make(g, y)


def _aff_gen(rng, cfg, kind, k, c):
    if kind == "xp":
        return f"xp({k}; {c})", affine.aff_x_plus(cfg.field, k, c)
    return f"xm({k}; {c})", affine.aff_x_minus(cfg.field, k, c)


def sample_aff_word(rng: random.Random, cfg: SamplerConfig):
    field = cfg.field
    length = rng.randrange(1, max(2, min(cfg.word_length, 5)))
    words = []
    elt = affine.aff_identity(field)
    for _ in range(length):
        kind = rng.choice(["xp", "xm", "t", "torus", "s0", "s1"])
        if kind in ("xp", "xm"):
            k = rng.randint(-min(2, cfg.laurent_support), min(2, cfg.laurent_support))
            c = sample_scalar(rng, field, (-2, 4))
            w, g = _aff_gen(rng, cfg, kind, k, c)
        elif kind == "t":
            ell, nn = rng.randint(-1, 1), rng.randint(-1, 1)
            w, g = f"t({ell}, {nn})", affine.aff_t_mu(field, ell, nn)
        elif kind == "torus":
            f = sample_scalar(rng, field, (-1, 2), allow_zero=False)
            z = sample_scalar(rng, field, (-1, 2), allow_zero=False)
            w, g = f"torus({f}; {z})", affine.aff_torus(f, z)
        else:
            w = kind
            g = affine.aff_s0(field) if kind == "s0" else affine.aff_s1(field)
        words.append(w)
        elt = elt * g
    return " ".join(words), elt


def sample_aff_hn(rng: random.Random, cfg: SamplerConfig, n: int):
    """Products of x_±(k, c) with ω(c) ≥ n·max(1, |k|) and T_n tori: all in H_n."""
    field = cfg.field
    support = min(3, cfg.laurent_support)
    length = rng.randrange(1, max(2, min(cfg.word_length, 5)))
    words = []
    elt = affine.aff_identity(field)
    for _ in range(length):
        if rng.random() < 0.2:
            f = field.one() + sample_scalar_min_val(rng, field, n)
            z = field.one() + sample_scalar_min_val(rng, field, n)
            words.append(f"torus({f}; {z})")
            elt = elt * affine.aff_torus(f, z)
        else:
            kind = rng.choice(["xp", "xm"])
            k = rng.randint(-support, support)
            c = sample_scalar_min_val(rng, field, n * max(1, abs(k)))
            w, g = _aff_gen(rng, cfg, kind, k, c)
            words.append(w)
            elt = elt * g
    return " ".join(words), elt


def sample_aff_torus(rng: random.Random, cfg: SamplerConfig):
    field = cfg.field
    f = sample_scalar(rng, field, (-2, 3), allow_zero=False)
    z = sample_scalar(rng, field, (-2, 3), allow_zero=False)
    if rng.random() < 0.5:
        f = field.one() + sample_scalar_min_val(rng, field, rng.randrange(1, 4))
    if rng.random() < 0.5:
        z = field.one() + sample_scalar_min_val(rng, field, rng.randrange(1, 4))
    return f"torus({f}; {z})", affine.aff_torus(f, z)


def sample_aff_vform(rng: random.Random, cfg: SamplerConfig, n: int):
    """u_+ · u_- · t with u_± built from one-root generators conjugated by
    t_{∓nλ} (λ = å∨ + 3d): a deliberate under-approximation of the full sets.
    """
    field = cfg.field
    t_nl = affine.aff_t_mu(field, n, 3 * n)      # translation by nλ
    t_nl_inv = t_nl.inverse()
    words = []

    def plus_part():
        out = affine.aff_identity(field)
        for _ in range(rng.randrange(1, 4)):
            if rng.random() < 0.6:
                k = rng.randrange(0, 3)
                c = sample_scalar_min_val(rng, field, 0)
                w, g = _aff_gen(rng, cfg, "xp", k, c)
            else:
                k = rng.randrange(1, 3)
                c = sample_scalar_min_val(rng, field, 0)
                w, g = _aff_gen(rng, cfg, "xm", k, c)
            words.append(f"t(-{n}, -{3 * n}) {w} t({n}, {3 * n})")
            out = out * (t_nl_inv * g * t_nl)
        return out

    def minus_part():
        out = affine.aff_identity(field)
        for _ in range(rng.randrange(1, 4)):
            if rng.random() < 0.6:
                k = -rng.randrange(0, 3)
                c = sample_scalar_min_val(rng, field, 0)
                w, g = _aff_gen(rng, cfg, "xm", k, c)
            else:
                k = -rng.randrange(1, 3)
                c = sample_scalar_min_val(rng, field, 0)
                w, g = _aff_gen(rng, cfg, "xp", k, c)
            words.append(f"t({n}, {3 * n}) {w} t(-{n}, -{3 * n})")
            out = out * (t_nl * g * t_nl_inv)
        return out

    u_plus = plus_part()
    u_minus = minus_part()
    f = field.one() + sample_scalar_min_val(rng, field, 2 * n)
    z = field.one() + sample_scalar_min_val(rng, field, 2 * n)
    words.append(f"torus({f}; {z})")
    return " ".join(words), u_plus * u_minus * affine.aff_torus(f, z)


_SAMPLERS = {
    "SL2Generic": lambda rng, cfg, n: sample_sl2_generic(rng, cfg),
    "SL2KerPi": sample_sl2_kerpi,
    "AffWord": lambda rng, cfg, n: sample_aff_word(rng, cfg),
    "AffHn": sample_aff_hn,
    "AffTorus": lambda rng, cfg, n: sample_aff_torus(rng, cfg),
    "AffVForm": sample_aff_vform,
}


def sample_element(cls: str, cfg: SamplerConfig, index: int, n: int | None = None):
    """Deterministic sample stream: same (cls, cfg, index, n) -> same output."""
    if cls not in _SAMPLERS:
        raise KeyError(f"unknown sampler class {cls!r}")
    rng = cfg.rng(f"{cls}:{n}:{index}")
    return _SAMPLERS[cls](rng, cfg, n)


# ---------------------------------------------------------------------------
# Suites.

def _suite(name):
    def deco(fn):
        SUITES[name] = fn
        return fn
    return deco


SUITES: dict = {}


def run_suite(name: str, cfg: SamplerConfig) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    start = time.perf_counter()
    trials, failures, skipped = SUITES[name](cfg)
    return SuiteReport(name, trials, failures, time.perf_counter() - start, skipped)


def run_suites(names, cfg: SamplerConfig) -> list[SuiteReport]:
    return [run_suite(name, cfg) for name in names]


def all_suite_names() -> list[str]:
    return sorted(SUITES)


@_suite("commutation")
def _commutation(cfg: SamplerConfig):
    """x_-(b)·x_+(a) = x_+(a r^{-1})·diag(r^{-1}, r)·x_-(b r^{-1}) with
    r = 1 + ab, plus the form with the torus moved right."""
    failures = []
    field = cfg.field
    for i in range(cfg.trials):
        rng = cfg.rng(f"commutation:{i}")
        a = sample_scalar(rng, field, cfg.valuation_range)
        b = sample_scalar(rng, field, cfg.valuation_range)
        r = field.one() + a * b
        if r.is_zero():
            continue
        lhs = sl2.x_minus(b) * sl2.x_plus(a)
        rinv = r.inv()
        form1 = sl2.x_plus(a * rinv) * sl2.diag_torus(rinv) * sl2.x_minus(b * rinv)
        form2 = sl2.x_plus(a * rinv) * sl2.x_minus(b * r) * sl2.diag_torus(rinv)
        if lhs != form1 or lhs != form2:
            failures.append(Failure(i, f"a={a}, b={b}", str(lhs),
                                    f"form1={form1}, form2={form2}"))
    return cfg.trials, failures, ""


@_suite("uut-uniqueness")
def _uut(cfg: SamplerConfig):
    failures = []
    field = cfg.field
    for i in range(cfg.trials):
        rng = cfg.rng(f"uut:{i}")
        b = sample_scalar(rng, field, cfg.valuation_range)
        c = sample_scalar(rng, field, cfg.valuation_range)
        d = sample_scalar(rng, field, cfg.valuation_range, allow_zero=False)
        g = sl2.compose_upt(b, c, d)
        got = sl2.upt_decompose(g)
        if got != (b, c, d):
            failures.append(Failure(i, f"b={b}, c={c}, δ={d}",
                                    f"({b}, {c}, {d})", str(tuple(map(str, got)))))
    return cfg.trials, failures, ""


@_suite("kerpi-sl2")
def _kerpi_sl2(cfg: SamplerConfig):
    """Entry congruences agree with the product form, n ≤ 3, both directions."""
    failures = []
    total = 0
    for n in (1, 2, 3):
        for i in range(cfg.trials):
            total += 1
            rng = cfg.rng(f"kerpi:{n}:{i}")
            if i % 2 == 0:
                expr, g = sample_sl2_kerpi(rng, cfg, n)
                expected = True
            else:
                expr, g = sample_sl2_generic(rng, cfg)
                expected = None
            cong = sl2.sl2_member(g, sl2.SL2SubgroupSpec.kerpi(n))
            prod = sl2.kerpi_product_member(g, n)
            if cong != prod or (expected is True and not cong):
                failures.append(Failure(total, f"n={n}: {expr}",
                                        "congruence == product-form",
                                        f"congruence={cong}, product={prod}"))
    return total, failures, ""


@_suite("rank1-refinement")
def _rank1_refinement(cfg: SamplerConfig):
    """x_+(ω≥2n)·x_-(ω≥2n)·T_{4n} is closed under products and inverses."""
    failures = []
    total = 0
    for n in (1, 2):
        spec = sl2.SL2SubgroupSpec.v_lambda(n)
        for i in range(cfg.trials // 2):
            total += 1
            rng = cfg.rng(f"rank1:{n}:{i}")
            e1, g = sample_sl2_vlambda(rng, cfg, n)
            e2, h = sample_sl2_vlambda(rng, cfg, n)
            if not sl2.sl2_member(g * h, spec):
                failures.append(Failure(total, f"n={n}: ({e1})·({e2})",
                                        "product stays in the set", "escape"))
            if not sl2.sl2_member(g.inverse(), spec):
                failures.append(Failure(total, f"n={n}: inv({e1})",
                                        "inverse stays in the set", "escape"))
    return total, failures, ""


@_suite("hn-closure")
def _hn_closure(cfg: SamplerConfig):
    failures = []
    total = 0
    for n in (1, 2):
        spec = affine.AffSubgroupSpec.hn(n)
        for i in range(cfg.trials // 2):
            total += 1
            rng = cfg.rng(f"hncl:{n}:{i}")
            e1, g = sample_aff_hn(rng, cfg, n)
            e2, h = sample_aff_hn(rng, cfg, n)
            if not affine.aff_member(g * h, spec):
                failures.append(Failure(total, f"n={n}: ({e1})·({e2})",
                                        "product in H_n", "escape"))
            if not affine.aff_member(g.inverse(), spec):
                failures.append(Failure(total, f"n={n}: inv({e1})",
                                        "inverse in H_n", "escape"))
    return total, failures, ""


@_suite("v-in-h")
def _v_in_h(cfg: SamplerConfig):
    """Sampled λ-segment subgroup elements all land in H_n (n ≤ 2)."""
    failures = []
    total = 0
    for n in (1, 2):
        spec = affine.AffSubgroupSpec.hn(n)
        for i in range(cfg.trials):
            total += 1
            rng = cfg.rng(f"vinh:{n}:{i}")
            expr, g = sample_aff_vform(rng, cfg, n)
            viol = affine.aff_violations(g, spec)
            if viol:
                failures.append(Failure(total, f"n={n}: {expr}",
                                        "member of H_n", "; ".join(viol)))
    return total, failures, ""


@_suite("h2n-in-v")
def _h2n_in_v(cfg: SamplerConfig):
    """Conjugating H_{2n} by t_{-nλ'} (λ' = å∨ + d) shifts each coefficient by
    exactly ϖ^{n·i + 2n·w(entry)}; the suite checks the shifted bounds
    ω ≥ 2n·max(1,|i|) + n·i + 2n·w and z ∈ O^×."""
    failures = []
    total = 0
    weight = {(0, 0): 0, (1, 1): 0, (0, 1): 1, (1, 0): -1}
    for n in (1, 2):
        t_conj = affine.aff_t_mu(cfg.field, -n, -n)
        for i in range(cfg.trials // 2):
            total += 1
            rng = cfg.rng(f"h2nv:{n}:{i}")
            expr, g = sample_aff_hn(rng, cfg, 2 * n)
            h = t_conj.conj(g)
            bad = []
            if h.z.valuation() != 0:
                bad.append("z not a unit")
            one = affine.LaurentPoly.one(cfg.field)
            for r in range(2):
                for c in range(2):
                    dev = h.m[r][c] - one if r == c else h.m[r][c]
                    for k, coeff in dev.coeffs.items():
                        bound = 2 * n * max(1, abs(k)) + n * k + 2 * n * weight[(r, c)]
                        if coeff.valuation() < bound:
                            bad.append(f"({r + 1},{c + 1}) u^{k}: ω < {bound}")
            if bad:
                failures.append(Failure(total, f"n={n}: {expr}",
                                        "shifted valuation bounds", "; ".join(bad)))
    return total, failures, ""


def conj_generator_list(field: Field):
    """The fixed 12-element list of conjugators for the invariance suite."""
    pi = field.uniformizer()
    one = field.one()
    return [
        ("xp(0; 1)", affine.aff_x_plus(field, 0, one)),
        (f"xp(0; {pi.inv()})", affine.aff_x_plus(field, 0, pi.inv())),
        ("xp(1; 1)", affine.aff_x_plus(field, 1, one)),
        ("xp(-1; 1)", affine.aff_x_plus(field, -1, one)),
        (f"xm(0; {pi.inv()})", affine.aff_x_minus(field, 0, pi.inv())),
        ("xm(1; 1)", affine.aff_x_minus(field, 1, one)),
        ("xm(-1; 1)", affine.aff_x_minus(field, -1, one)),
        ("s0", affine.aff_s0(field)),
        ("s1", affine.aff_s1(field)),
        ("t(1, 0)", affine.aff_t_mu(field, 1, 0)),
        ("t(0, 1)", affine.aff_t_mu(field, 0, 1)),
        (f"torus({pi}; {pi})", affine.aff_torus(pi, pi)),
    ]


def find_conjugation_bound(g: affine.AffElt, n: int, m_max: int, cfg: SamplerConfig,
                           _cache: dict | None = None):
    """Least m ≤ m_max with conj(g, sample(H_m)) ⊆ H_n on cfg.trials samples;
    None when exhausted (an outcome, not an error)."""
    spec = affine.AffSubgroupSpec.hn(n)
    for m in range(1, m_max + 1):
        if _cache is not None and m in _cache:
            samples = _cache[m]
        else:
            samples = [sample_aff_hn(cfg.rng(f"conj:{m}:{i}"), cfg, m)
                       for i in range(cfg.trials)]
            if _cache is not None:
                _cache[m] = samples
        if all(affine.aff_member(g.conj(s), spec) for _, s in samples):
            return m
    return None


@_suite("conj-invariance")
def _conj_invariance(cfg: SamplerConfig):
    failures = []
    total = 0
    cache: dict = {}
    m_max = 6
    for expr, g in conj_generator_list(cfg.field):
        for n in (1, 2):
            total += 1
            m = find_conjugation_bound(g, n, m_max, cfg, _cache=cache)
            if m is None:
                failures.append(Failure(total, f"g={expr}, n={n}",
                                        f"some m <= {m_max}", "exhausted"))
    return total, failures, ""


@_suite("hausdorff")
def _hausdorff(cfg: SamplerConfig):
    """Every sampled non-identity element escapes H_n at a computable level."""
    failures = []
    total = 0
    one = affine.LaurentPoly.one(cfg.field)
    for i in range(cfg.trials):
        total += 1
        rng = cfg.rng(f"hausdorff:{i}")
        expr, g = sample_aff_word(rng, cfg)
        if g.is_identity():
            continue
        candidates = []
        vz = (g.z - 1).valuation()
        if vz != INFINITY:
            candidates.append(max(1, int(vz) + 1))
        for r in range(2):
            for c in range(2):
                dev = g.m[r][c] - one if r == c else g.m[r][c]
                for k, coeff in dev.coeffs.items():
                    v = coeff.valuation()
                    candidates.append(max(1, int(v // max(1, abs(k))) + 1) if v >= 0 else 1)
        n_escape = min(candidates)
        if affine.aff_member(g, affine.AffSubgroupSpec.hn(n_escape)):
            failures.append(Failure(i, expr, f"escape by n = {n_escape}", "still inside"))
    return total, failures, ""


@_suite("center-separation")
def _center_separation(cfg: SamplerConfig):
    """(−I, 1) is central-integral and fixes every test point but is not in
    ker π_1: the witness separating the two topologies.  Needs residue
    characteristic ≠ 2."""
    field = cfg.field
    if isinstance(field, PAdicField) and field.p == 2:
        return 0, [], "witness needs p != 2 (-1 ≡ 1 mod 2)"
    if isinstance(field, RationalFunctionField) and field.q == 2:
        return 0, [], "witness needs odd residue characteristic"
    minus_i = affine.aff_torus(-field.one(), field.one())
    failures = []
    checks = [
        ("passes CenterO", affine.aff_member(minus_i, affine.AffSubgroupSpec.center_integral())),
        ("fails KerPi(1)", not affine.aff_member(minus_i, affine.AffSubgroupSpec.kerpi(1))),
    ]
    for i in (0, 1):
        for n in range(1, 11):
            checks.append((f"fixes test point i={i}, n={n}",
                           affine.fixes_test_point(minus_i, i, n)))
    for idx, (what, ok) in enumerate(checks):
        if not ok:
            failures.append(Failure(idx, "torus(-1; 1)", what, "false"))
    return len(checks), failures, ""


@_suite("coset-count")
def _coset_count(cfg: SamplerConfig):
    """Exhibits ≥ 10 pairwise-distinct H_2-cosets inside H_1 among x_-(k, ϖ^j)."""
    field = cfg.field
    elements = []
    for k in range(-3, 4):
        low = max(1, abs(k))
        for j in range(low, 2 * max(1, abs(k))):
            elements.append((f"xm({k}; {field.pi_power(j)})",
                             affine.aff_x_minus(field, k, field.pi_power(j))))
    spec2 = affine.AffSubgroupSpec.hn(2)
    spec1 = affine.AffSubgroupSpec.hn(1)
    failures = []
    reps: list[tuple[str, affine.AffElt]] = []
    for expr, g in elements:
        if not affine.aff_member(g, spec1):
            failures.append(Failure(len(failures), expr, "in H_1", "outside"))
            continue
        if all(not affine.aff_member(r.inverse() * g, spec2) for _, r in reps):
            reps.append((expr, g))
    if len(reps) < 10:
        failures.append(Failure(len(elements), "coset census",
                                ">= 10 distinct H_2-cosets", str(len(reps))))
    return len(elements), failures, ""


@_suite("tree-retraction")
def _tree_retraction(cfg: SamplerConfig):
    failures = []
    field = cfg.field
    pi = field.uniformizer()
    closed_cases = [
        (f"point(xm({pi}), 1)", sl2.TreePoint.make(sl2.x_minus(pi), 1), Fraction(0)),
        ("point(xp(0), 1/4)", sl2.apartment_point(field, Fraction(1, 4)), Fraction(1, 4)),
        ("point(xp(0), -2)", sl2.apartment_point(field, -2), Fraction(-2)),
    ]
    total = 0
    for expr, p, want in closed_cases:
        total += 1
        got = sl2.tree_retract(p)
        if got != want:
            failures.append(Failure(total, expr, str(want), str(got)))
    for i in range(cfg.trials):
        total += 1
        rng = cfg.rng(f"retract:{i}")
        expr, p = sample_tree_point(rng, cfg)
        got = sl2.tree_retract(p)
        oracle = _retract_oracle(p)
        if oracle is None or got != oracle:
            failures.append(Failure(total, expr, str(oracle), str(got)))
    return total, failures, ""


def _retract_oracle(p: sl2.TreePoint):
    """Candidate scan over half-integers with solvable-unipotent checks,
    independent of the closed-form valuation formula."""
    field = p.g.field
    vals = [v for v in (e.valuation() for e in p.g.entries()) if v != INFINITY]
    width = int(max(abs(v) for v in vals)) + int(abs(p.y)) + 2
    candidates = []
    g = p.g
    c_options = [field.zero()]
    if not g.c.is_zero():
        c_options.append(g.a / g.c)
    if not g.d.is_zero():
        c_options.append(g.b / g.d)
    for twice in range(-2 * width, 2 * width + 1):
        y2 = Fraction(twice, 2)
        for c0 in c_options:
            q = sl2.TreePoint.make(sl2.x_plus(c0), y2)
            if sl2.tree_point_equal(q, p):
                candidates.append(y2)
                break
    if len(candidates) != 1:
        return None
    return candidates[0]


@_suite("fix-criterion")
def _fix_criterion(cfg: SamplerConfig):
    """For SL2 tori, ω(α(t)−1) ≥ n iff t fixes the point x_+(ϖ^{-n})·0."""
    failures = []
    field = cfg.field
    total = 0
    for i in range(cfg.trials):
        rng = cfg.rng(f"fixcrit:{i}")
        expr, t = sample_sl2_torus(rng, cfg)
        s = t.a
        for n in range(1, 5):
            total += 1
            valuation_side = (s * s - 1).valuation() >= n
            base = sl2.tree_act(sl2.x_plus(field.pi_power(-n)), sl2.apartment_point(field, 0))
            geometric_side = sl2.tree_point_equal(sl2.tree_act(t, base), base)
            if valuation_side != geometric_side:
                failures.append(Failure(total, f"{expr}, n={n}",
                                        f"criterion={valuation_side}",
                                        f"geometric={geometric_side}"))
    return total, failures, ""
