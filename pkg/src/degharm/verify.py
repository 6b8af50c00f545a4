"""Identity registry and runner.

Each registered identity yields a stream of :class:`Check` objects, i.e. a
cell plus two values that should agree.  The runner compares them as
polynomials first and then at every sampled λ, and collects everything into a
:class:`VerificationReport`.  Failures are data, never exceptions.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import sequences as seq
from . import series as ps
from .exact import LAMBDA, PolyLambda, as_poly, binom_poly

DEFAULT_LAMBDAS = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(1, 2),
    Fraction(-1, 3),
    Fraction(2),
)
RANDOM_SEQ_LENGTH = 12
RANDOM_SEQ_MAX_M = 3
ENUMERATE_MAX_N = 10
SYMBOLIC = "symbolic"


class UnknownIdentityError(KeyError):
    pass


class ConsistencyError(RuntimeError):
    """A polynomial identity held symbolically but failed at a sample point."""


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 25
    max_m: int = 4
    series_order: int = 32
    lambda_samples: tuple[Fraction, ...] = DEFAULT_LAMBDAS
    random_seq_trials: int = 50
    seed: int = 42

    def __post_init__(self):
        object.__setattr__(
            self, "lambda_samples", tuple(Fraction(x) for x in self.lambda_samples)
        )
        if self.max_n < 1 or self.max_m < 1 or self.series_order < 1:
            raise ValueError("max_n, max_m and series_order must be positive")
        if self.series_order < self.max_n:
            raise ValueError("series_order must be at least max_n")
        if not self.lambda_samples:
            raise ValueError("lambda_samples must not be empty")
        if self.random_seq_trials < 0 or self.seed < 0:
            raise ValueError("random_seq_trials and seed must be non-negative")

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "max_m": self.max_m,
            "series_order": self.series_order,
            "lambda_samples": [str(x) for x in self.lambda_samples],
            "random_seq_trials": self.random_seq_trials,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Cell:
    case: str = ""
    n: int | None = None
    m: int | None = None
    k: int | None = None
    trial: int | None = None
    lam: str = SYMBOLIC

    def to_dict(self) -> dict:
        d: dict = {}
        if self.case:
            d["case"] = self.case
        for name in ("n", "m", "k", "trial"):
            v = getattr(self, name)
            if v is not None:
                d[name] = v
        d["lambda"] = self.lam
        return d

    def label(self) -> str:
        parts = [self.case] if self.case else []
        for name in ("trial", "n", "m", "k"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v}")
        if self.lam != SYMBOLIC:
            parts.append(f"λ={self.lam}")
        return " ".join(parts)


@dataclass(frozen=True)
class Check:
    cell: Cell
    lhs: PolyLambda
    rhs: PolyLambda
    lambda_free: bool = False


@dataclass(frozen=True)
class Record:
    identity: str
    cell: Cell
    status: str  # "pass" | "fail" | "skipped"
    lhs: PolyLambda | None = None
    rhs: PolyLambda | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        d = {"identity": self.identity, "cell": self.cell.to_dict(), "status": self.status}
        if self.status == "fail":
            d["witness"] = {"lhs": poly_to_json(self.lhs), "rhs": poly_to_json(self.rhs)}
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    checks: Callable[[SuiteConfig], Iterable[Check]]
    expected: str = "pass"
    # cell whose symbolic check must fail for an expected-fail identity
    witness_cell: Cell | None = None


@dataclass
class IdentityResult:
    identity: Identity
    records: list[Record]
    seconds: float = 0.0

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.records)

    @property
    def observed(self) -> str:
        return "fail" if self.count("fail") else "pass"

    @property
    def met(self) -> bool:
        ident = self.identity
        if ident.expected == "pass":
            return self.observed == "pass"
        if ident.witness_cell is None:
            return self.observed == "fail"
        return any(r.cell == ident.witness_cell and r.status == "fail" for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if r.status == "fail"]

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "expected": self.identity.expected,
            "observed": self.observed,
            "met": self.met,
            "pass": self.count("pass"),
            "fail": self.count("fail"),
            "skipped": self.count("skipped"),
        }
        if timing:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class VerificationReport:
    config: SuiteConfig
    results: dict[str, IdentityResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.met for r in self.results.values())

    def records(self) -> list[Record]:
        out = []
        for ident_id in sorted(self.results):
            out.extend(sorted(self.results[ident_id].records, key=_record_key(self.config)))
        return out

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "config": self.config.to_dict(),
            "ok": self.ok,
            "summary": {
                i: self.results[i].to_dict(timing) for i in sorted(self.results)
            },
            "records": [r.to_dict() for r in self.records()],
        }


def _record_key(config: SuiteConfig):
    lam_rank = {str(x): i + 1 for i, x in enumerate(config.lambda_samples)}

    def key(r: Record):
        c = r.cell
        return (
            c.case,
            -1 if c.trial is None else c.trial,
            -1 if c.n is None else c.n,
            -1 if c.m is None else c.m,
            -1 if c.k is None else c.k,
            0 if c.lam == SYMBOLIC else lam_rank.get(c.lam, len(lam_rank) + 1),
            c.lam,
        )

    return key


def poly_to_json(p: PolyLambda, ascii: bool = False) -> dict:
    return {
        "text": p.render(ascii=ascii),
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in p.coeffs],
    }


# -- identity definitions ----------------------------------------------------


def _ns(config: SuiteConfig, start: int = 1) -> range:
    return range(start, config.max_n + 1)


def _ms(config: SuiteConfig) -> range:
    return range(1, config.max_m + 1)


def _random_sequences(config: SuiteConfig) -> list[list[Fraction]]:
    rng = random.Random(config.seed)
    return [
        [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(RANDOM_SEQ_LENGTH)]
        for _ in range(config.random_seq_trials)
    ]


def _harmonic_weights(n: int) -> list[PolyLambda]:
    # a_k = binom(λ+k-1, k-1)/k, whose binomial inversion is H_{n,λ}
    return [binom_poly(LAMBDA + (k - 1), k - 1) / k for k in range(1, n + 1)]


def _eq2(config):
    classical = ps.geometric(config.max_n) * ps.classical_log_gf(config.max_n)
    gf = ps.gf_H(config.max_n)
    for n in _ns(config):
        h = as_poly(seq.harmonic(n))
        yield Check(Cell("classical_gf", n=n, lam="0"), classical[n], h, True)
        yield Check(Cell("gf_H_at_0", n=n, lam="0"), as_poly(gf[n](0)), h, True)


def _eq4(config):
    N = config.series_order
    exp1 = ps.gf_deg_exp(1, N)
    log = ps.gf_deg_log(N)
    rev = ps.series_reversion(exp1 - 1)
    exp_of_log = ps.series_compose(exp1, log)
    log_of_exp = ps.series_compose(log, exp1 - 1)
    target = ps.one(N) + ps.t_series(N)
    for n in range(N + 1):
        yield Check(Cell("reversion", n=n), rev[n], log[n])
        yield Check(Cell("exp_of_log", n=n), exp_of_log[n], target[n])
        yield Check(Cell("log_of_exp", n=n), log_of_exp[n] + (1 if n == 0 else 0), target[n])


def _eq6(config):
    N = config.max_n
    gf = ps.gf_H(N)
    gf_k1 = ps.gf_K(1, N)
    li1 = ps.gf_polylog(1, N)
    neg_log = -ps.series_compose(ps.gf_deg_log(N), -ps.t_series(N))
    for n in _ns(config):
        yield Check(Cell("gf_H", n=n), gf[n], seq.H_def(n))
        yield Check(Cell("K1_vs_H", n=n), gf_k1[n], gf[n])
        yield Check(Cell("li1_vs_neg_log", n=n), li1[n], neg_log[n])


def _eq8(config):
    for k in range(config.max_n + 1):
        egf = ps.gf_lah(k, config.max_n).egf_values()
        for n in range(k, config.max_n + 1):
            yield Check(Cell(n=n, k=k), egf[n], as_poly(seq.lah(n, k)), True)


def _eq13(config):
    N = config.max_n
    minus_log = -ps.series_compose(ps.gf_deg_log(N), -ps.t_series(N))
    power = ps.one(N)
    for k in range(N + 1):
        if k:
            power = power * minus_log
        egf = (power / math.factorial(k)).egf_values()
        for n in range(k, N + 1):
            yield Check(Cell(n=n, k=k), egf[n], seq.deg_stirling1_unsigned(n, k))


def _eq15(config):
    egf = ps.gf_deg_derangement(config.max_n).egf_values()
    for n in range(config.max_n + 1):
        yield Check(Cell(n=n), egf[n], seq.deg_derangement(n))


def _eq18(config):
    for n in _ns(config):
        step = binom_poly(LAMBDA - 1, n - 1) * Fraction((-1) ** (n - 1), n)
        yield Check(Cell(n=n), seq.H_def(n) - seq.H_def(n - 1), step)


def _thm21(config):
    for n in _ns(config):
        yield Check(Cell(n=n), seq.H_binom(n), seq.H_def(n))


def _cor22(config):
    for n in _ns(config):
        lhs, rhs = seq.corollary22_sides(n)
        yield Check(Cell(n=n), lhs, rhs)


def _thm23(config):
    for t, a in enumerate(_random_sequences(config)):
        back = seq.binomial_inversion(seq.binomial_inversion(a))
        for n in range(1, RANDOM_SEQ_LENGTH + 1):
            yield Check(Cell("random", n=n, trial=t), as_poly(back[n - 1]), as_poly(a[n - 1]), True)
    b = seq.binomial_inversion(_harmonic_weights(config.max_n))
    for n in _ns(config):
        yield Check(Cell("harmonic_weights", n=n), b[n - 1], seq.H_def(n))


def _thm_lemma24(config):
    for t, a in enumerate(_random_sequences(config)):
        b = seq.binomial_inversion(a)
        direct = seq.weighted_inversion(a, 1)
        for n in range(1, RANDOM_SEQ_LENGTH + 1):
            rhs = sum((b[k - 1] / k for k in range(1, n + 1)), Fraction(0))
            yield Check(Cell("random", n=n, trial=t), as_poly(direct[n - 1]), as_poly(rhs), True)


def _thm25(config):
    max_m = min(config.max_m, RANDOM_SEQ_MAX_M)
    for t, a in enumerate(_random_sequences(config)):
        b = seq.binomial_inversion(a)
        for m in range(1, max_m + 1):
            direct = seq.weighted_inversion(a, m)
            dp = seq.chain_sums(b, m)
            for n in range(1, RANDOM_SEQ_LENGTH + 1):
                brute = as_poly(seq.chain_sum_enumerate(b, m, n))
                yield Check(Cell("direct_vs_enumerate", n=n, m=m, trial=t), as_poly(direct[n - 1]), brute, True)
                yield Check(Cell("dp_vs_enumerate", n=n, m=m, trial=t), as_poly(dp[n - 1]), brute, True)


def _thm26(config):
    for m in _ms(config):
        for n in _ns(config):
            lhs, rhs = seq.thm26_sides(n, m)
            yield Check(Cell(n=n, m=m), lhs, rhs)


def _thm27(config):
    for m in _ms(config):
        gf = ps.gf_K(m, config.max_n)
        for n in _ns(config):
            k = seq.K_nested(n, m)
            yield Check(Cell("gf_K", n=n, m=m), k, gf[n])
            if n <= ENUMERATE_MAX_N:
                yield Check(Cell("enumerate", n=n, m=m), k, seq.K_nested(n, m, "enumerate"))
            if m == 1:
                yield Check(Cell("m1_vs_def", n=n, m=m), k, seq.H_def(n))


def _thm28(config):
    for m in _ms(config):
        for n in _ns(config):
            k = seq.K_nested(n, m)
            yield Check(Cell("lah", n=n, m=m), seq.K_lah(n, m), k)
            yield Check(Cell("nested_binomial", n=n, m=m), seq.K_binom(n, m), k)


def _thm29(config):
    for m in _ms(config):
        gf = ps.gf_H_order(m, config.max_n)
        for n in _ns(config):
            yield Check(Cell("gf_H_order", n=n, m=m), seq.H_order(n, m), gf[n])
            if m == 1:
                yield Check(Cell("m1_vs_def", n=n, m=m), seq.H_order(n, 1), seq.H_def(n))


def _thm210(variant):
    def checks(config):
        top = max(config.max_n, 2) if variant == "as_printed" else config.max_n
        for n in range(1, top + 1):
            yield Check(Cell(n=n), seq.H_stirling(n, variant), seq.H_def(n))

    return checks


def _remark211(config):
    N = config.max_n
    gf = ps.gf_H(N)
    li1 = ps.gf_polylog(1, N)
    for n in _ns(config):
        yield Check(Cell("eq36", n=n), li1[n], gf[n] - gf[n - 1])
    for m in _ms(config):
        li = ps.gf_polylog(m, N)
        for n in _ns(config):
            yield Check(
                Cell("order_m", n=n, m=m), li[n], seq.H_order(n, m) - seq.H_order(n - 1, m)
            )


def _thm212(config):
    for n in _ns(config):
        yield Check(Cell(n=n), seq.H_derangement(n), seq.H_def(n))


def _conclusion_k(config):
    for m in _ms(config):
        gf = ps.gf_K(m, config.max_n)
        for n in _ns(config):
            yield Check(Cell(n=n, m=m), seq.K_single_sum(n, m), gf[n])


def _classical(config):
    for n in range(config.max_n + 1):
        yield Check(Cell("H", n=n, lam="0"), as_poly(seq.H_def(n)(0)), as_poly(seq.harmonic(n)), True)
        yield Check(
            Cell("derangement", n=n, lam="0"),
            as_poly(seq.deg_derangement(n)(0)),
            as_poly(seq.derangement(n)),
            True,
        )
        for m in _ms(config):
            yield Check(
                Cell("H_order", n=n, m=m, lam="0"),
                as_poly(seq.H_order(n, m)(0)),
                as_poly(seq.harmonic_order(n, m)),
                True,
            )
        for k in range(n + 1):
            yield Check(
                Cell("stirling1_unsigned", n=n, k=k, lam="0"),
                as_poly(seq.deg_stirling1_unsigned(n, k)(0)),
                as_poly(seq.stirling1_unsigned(n, k)),
                True,
            )


REGISTRY: dict[str, Identity] = {
    i.id: i
    for i in [
        Identity("eq_2_classical_gf", "classical harmonic generating function at λ=0", _eq2),
        Identity("eq_4_reversion", "log_λ is the compositional inverse of e_λ", _eq4),
        Identity("eq_6_gf_vs_def", "H_{n,λ} generating function", _eq6),
        Identity("eq_8_lah_gf", "Lah exponential generating function", _eq8),
        Identity("eq_13_stirling_gf", "degenerate Stirling exponential generating function", _eq13),
        Identity("eq_15_derangement_gf", "degenerate derangement generating function", _eq15),
        Identity("eq_18_recurrence", "first difference of H_{n,λ}", _eq18),
        Identity("thm_2_1", "binomial-sum form of H_{n,λ}", _thm21),
        Identity("cor_2_2", "falling/rising factorial difference", _cor22),
        Identity("thm_2_3_involution", "binomial inversion is an involution", _thm23),
        Identity("lemma_2_4", "weighted inversion with 1/k", _thm_lemma24),
        Identity("thm_2_5", "weighted inversion with 1/k^m vs chain sums", _thm25),
        Identity("thm_2_6", "weighted binomial sum vs chain sum", _thm26),
        Identity("thm_2_7_vs_def_gf", "chain-sum form of K vs its generating function", _thm27),
        Identity("thm_2_8", "Lah form of K", _thm28),
        Identity("thm_2_9", "H^{(m)}_{n,λ} closed form vs generating function", _thm29),
        Identity(
            "thm_2_10_as_printed",
            "Stirling form of H_{n,λ}, printed variant (known misprint)",
            _thm210("as_printed"),
            expected="fail",
            witness_cell=Cell(n=2),
        ),
        Identity("thm_2_10_as_derived", "Stirling form of H_{n,λ}, derived variant", _thm210("as_derived")),
        Identity("remark_2_11_telescoping", "polylog coefficients telescope H^{(m)}", _remark211),
        Identity("thm_2_12", "derangement form of H_{n,λ}", _thm212),
        Identity("conclusion_K_single_sum", "single binomial sum equals K", _conclusion_k),
        Identity("classical_limits", "λ=0 specialisations", _classical),
    ]
}


# -- runner -----------------------------------------------------------------


def _evaluate(ident: Identity, config: SuiteConfig) -> IdentityResult:
    start = time.perf_counter()
    checks = list(ident.checks(config))
    records: list[Record] = []
    symbolic_ok = []
    for chk in checks:
        ok = chk.lhs == chk.rhs
        symbolic_ok.append(ok)
        records.append(Record(ident.id, chk.cell, "pass" if ok else "fail", chk.lhs, chk.rhs))
    any_lambda_free = False
    for chk, ok in zip(checks, symbolic_ok):
        if chk.lambda_free:
            any_lambda_free = True
            continue
        for lam in config.lambda_samples:
            lv, rv = chk.lhs(lam), chk.rhs(lam)
            point_ok = lv == rv
            if ok and not point_ok:
                raise ConsistencyError(
                    f"{ident.id} {chk.cell.label()}: symbolic pass but λ={lam} fails"
                )
            c = chk.cell
            records.append(
                Record(
                    ident.id,
                    Cell(c.case, c.n, c.m, c.k, c.trial, str(lam)),
                    "pass" if point_ok else "fail",
                    PolyLambda.constant(lv),
                    PolyLambda.constant(rv),
                )
            )
    if any_lambda_free:
        records.append(
            Record(
                ident.id,
                Cell("lambda_samples", lam="*"),
                "skipped",
                reason="λ-free or λ-specialised cells: exact comparison already covers every sample",
            )
        )
    return IdentityResult(ident, records, time.perf_counter() - start)


def run_identity(identity_id: str, config: SuiteConfig | None = None) -> VerificationReport:
    config = config or SuiteConfig()
    if identity_id not in REGISTRY:
        raise UnknownIdentityError(identity_id)
    report = VerificationReport(config)
    report.results[identity_id] = _evaluate(REGISTRY[identity_id], config)
    return report


def run_all(config: SuiteConfig | None = None, only: Iterable[str] | None = None) -> VerificationReport:
    """Evaluate every registered identity (or the ``only`` subset)."""
    config = config or SuiteConfig()
    ids = list(REGISTRY) if only is None else list(only)
    for i in ids:
        if i not in REGISTRY:
            raise UnknownIdentityError(i)
    report = VerificationReport(config)
    for i in ids:
        report.results[i] = _evaluate(REGISTRY[i], config)
    return report


def iter_failures(report: VerificationReport) -> Iterator[Record]:
    for r in report.records():
        if r.status == "fail":
            yield r
