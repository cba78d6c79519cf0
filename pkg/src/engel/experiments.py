"""Desk-scale numerical experiments and their CSV/JSON serialization.

* :func:`mc_slln` samples dyadic rationals and averages ``log d_n(x) / n``.
* :func:`cover_sum_beta` and :func:`cover_sum_pq` evaluate the cover sums that
  bound Hausdorff measures of ``{D(x) <= beta}`` and ``{p <= D(x) <= q}``.
* :func:`ekj_breakdown` tabulates the band-by-band dimension bounds.

Huge quantities (binomials, factorials, ``exp((q+eps)k)``) are kept as natural
logs; tail sums use log-sum-exp.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .analysis import count_monotone
from .constructions import parse_alpha
from .errors import ConfigError, DomainError


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.78 else math.inf


# --- Monte Carlo ----------------------------------------------------------------

@dataclass(frozen=True)
class McConfig:
    trials: int
    precision_bits: int
    seed: int
    n_report: tuple[int, ...]

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.precision_bits < 256:
            raise ConfigError("precision_bits must be at least 256")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if not self.n_report or min(self.n_report) < 1:
            raise ConfigError("n_report must list positive digit indices")
        object.__setattr__(self, "n_report", tuple(sorted(set(self.n_report))))


@dataclass
class McResult:
    """Rows ``(n, mean, std, retained)``; ``mean``/``std`` are NaN when nothing is retained."""

    per_n: list[tuple[int, float, float, int]]
    config: McConfig

    csv_header = ("n", "mean", "std", "retained")

    def rows(self):
        return self.per_n

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "per_n": [{"n": n, "mean": _finite_or_none(m), "std": _finite_or_none(s),
                       "retained": r} for n, m, s, r in self.per_n],
        }


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def draw_dyadic(seed_seq: np.random.SeedSequence, bits: int) -> int:
    """Uniform integer in ``(0, 2**bits)`` from one independent substream."""
    rng = np.random.default_rng(seed_seq)
    nbytes = -(-bits // 8)
    while True:
        k = int.from_bytes(rng.bytes(nbytes), "little") >> (8 * nbytes - bits)
        if k:
            return k


def _trial(args) -> list[int]:
    """Reliable digits of one random ``k / 2**p``."""
    seed_seq, bits, n_max = args
    p, q = draw_dyadic(seed_seq, bits), 1 << bits
    digits, prod = [], 1
    while len(digits) < n_max and p:
        d = -(-q // p)
        prod *= d
        # keep d_n only while d_1 ... d_n <= 2**(bits/2)
        if prod * prod > q:
            break
        digits.append(d)
        p = p * d - q
    return digits


def mc_slln(cfg: McConfig, workers: int = 1) -> McResult:
    """Average ``log d_n(x) / n`` over random dyadic ``x`` at each requested ``n``.

    Trial ``i`` uses the ``i``-th child of ``SeedSequence(cfg.seed)``, so the
    result does not depend on ``workers``.
    """
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    n_max = max(cfg.n_report)
    jobs = [(c, cfg.precision_bits, n_max) for c in children]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(_trial, jobs, chunksize=16))
    else:
        runs = [_trial(j) for j in jobs]

    per_n = []
    for n in cfg.n_report:
        vals = [math.log(r[n - 1]) / n for r in runs if len(r) >= n]
        if not vals:
            per_n.append((n, math.nan, math.nan, 0))
            continue
        mean = math.fsum(vals) / len(vals)
        std = (math.sqrt(math.fsum((v - mean) ** 2 for v in vals) / (len(vals) - 1))
               if len(vals) > 1 else 0.0)
        per_n.append((n, mean, std, len(vals)))
    return McResult(per_n, cfg)


# --- cover sums ----------------------------------------------------------------

@dataclass
class CoverSumResult:
    """Per-index log terms and tail sums ``sum_{i=N}^{N_max} term_i``.

    ``log_partial`` holds the logs of the tail sums; ``partial_sums`` the same
    values exponentiated (``inf`` beyond float range).
    """

    params: dict
    terms: list[tuple[int, float]]
    log_partial: list[tuple[int, float]]
    extra: dict = field(default_factory=dict)

    csv_header = ("n", "log_term", "partial_sum_from_n")

    @property
    def partial_sums(self) -> list[tuple[int, float]]:
        return [(n, _exp(lp)) for n, lp in self.log_partial]

    def partial_from(self, n: int) -> float:
        start = self.log_partial[0][0]
        return _exp(self.log_partial[n - start][1])

    def rows(self):
        return [(n, lt, ps) for (n, lt), (_, ps) in zip(self.terms, self.partial_sums)]

    def to_dict(self) -> dict:
        return {"params": self.params, **self.extra,
                "terms": [[n, lt] for n, lt in self.terms],
                "log_partial": [[n, lp] for n, lp in self.log_partial]}


def _tail_logsumexp(log_terms: np.ndarray) -> np.ndarray:
    return np.logaddexp.accumulate(log_terms[::-1])[::-1]


def cover_sum_beta(beta: float, epsilon: float, N_start: int | None = None,
                   N_max: int = 400) -> CoverSumResult:
    """Terms ``count_monotone(n, floor(n**(beta+eps))) * 2**(-eps*n)`` for ``n`` in ``[N_start, N_max]``.

    ``N_start`` defaults to ``ceil(2**(1/(beta+eps)))``, the first index where
    ``floor(n**(beta+eps)) >= 2``.
    """
    if not 0 <= beta < 1:
        raise DomainError("beta must lie in [0, 1)")
    if not 0 < epsilon < 1 - beta:
        raise DomainError("epsilon must lie in (0, 1 - beta)")
    g = beta + epsilon
    n0 = math.ceil(2 ** (1 / g))
    if N_start is None:
        N_start = n0
    if N_start < n0:
        raise DomainError(f"N_start must be at least {n0}")
    if N_max < N_start:
        raise DomainError("N_max must be at least N_start")
    ns = range(N_start, N_max + 1)
    log_terms = np.array([math.log(count_monotone(n, max(2, math.floor(n ** g))))
                          - epsilon * n * math.log(2) for n in ns])
    tails = _tail_logsumexp(log_terms)
    return CoverSumResult(
        {"beta": beta, "epsilon": epsilon, "N_start": N_start, "N_max": N_max,
         "s": epsilon},
        list(zip(ns, log_terms.tolist())), list(zip(ns, tails.tolist())))


def cover_sum_pq(p: float, q: float, epsilon: float, k_start: int = 1,
                 k_max: int = 400) -> CoverSumResult:
    """Terms ``2**(k-1) * exp((q+eps)k) / (k!)**eps`` for ``k`` in ``[k_start, k_max]``.

    Also reports the exponent ``s = (q + 2 eps - 1)/(p - eps)`` and its
    ``eps -> 0`` target ``(q - 1)/p``.
    """
    if not 1 <= p <= q < math.inf:
        raise DomainError("need 1 <= p <= q < inf")
    if not 0 < epsilon < p:
        raise DomainError("epsilon must lie in (0, p)")
    if not 1 <= k_start <= k_max:
        raise DomainError("need 1 <= k_start <= k_max")
    ks = np.arange(1, k_max + 1)
    log_fact = np.cumsum(np.log(ks))
    log_terms = ((ks - 1) * math.log(2) + (q + epsilon) * ks - epsilon * log_fact)
    log_terms = log_terms[k_start - 1:]
    tails = _tail_logsumexp(log_terms)
    kr = range(k_start, k_max + 1)
    s = (q + 2 * epsilon - 1) / (p - epsilon)
    return CoverSumResult(
        {"p": p, "q": q, "epsilon": epsilon, "k_start": k_start, "k_max": k_max},
        list(zip(kr, log_terms.tolist())), list(zip(kr, tails.tolist())),
        extra={"s": s, "target": (q - 1) / p})


# --- E(k, j) bands ----------------------------------------------------------------

@dataclass
class EkjTable:
    alpha: Fraction | float
    k: int
    bands: list[tuple[int, object, object, object]]
    max_bound: object
    closed_form: object | None

    csv_header = ("j", "lower", "upper", "bound")

    def rows(self):
        return self.bands

    def to_dict(self) -> dict:
        f = float
        return {"alpha": f(self.alpha), "k": self.k,
                "rows": [[j, f(a), f(b), f(c)] for j, a, b, c in self.bands],
                "max_bound": f(self.max_bound),
                "closed_form": None if self.closed_form is None else f(self.closed_form)}


def ekj_breakdown(alpha, k: int) -> EkjTable:
    """Bands ``1 + (j-1)g < D <= 1 + jg`` with ``g = (alpha-1)/k`` and bounds ``jg/(1+(j-1)g)``.

    Arithmetic is exact for rational ``alpha``.  ``closed_form`` is
    ``(alpha-1)/(1 + (k-1)/k (alpha-1))`` when ``k > alpha - 1``, else ``None``.
    """
    a = parse_alpha(alpha)
    if a == math.inf or a <= 1:
        raise DomainError("alpha must lie in (1, inf)")
    if k < 1:
        raise DomainError("k must be positive")
    g = (a - 1) / k
    rows = [(j, 1 + (j - 1) * g, 1 + j * g, j * g / (1 + (j - 1) * g))
            for j in range(1, k + 1)]
    closed = (a - 1) / (1 + Fraction(k - 1, k) * (a - 1)) if k > a - 1 else None
    return EkjTable(a, k, rows, max(r[3] for r in rows), closed)


# --- serialization ---------------------------------------------------------------

def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(result) -> str:
    return json.dumps(result.to_dict(), sort_keys=True, default=_json_default) + "\n"


def to_csv(result) -> str:
    buf = io.StringIO()
    meta = result.to_dict()
    config = {k: v for k, v in meta.items()
              if k not in ("per_n", "terms", "log_partial", "rows")}
    buf.write("# " + json.dumps(config, sort_keys=True, default=_json_default) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.csv_header)
    for row in result.rows():
        writer.writerow([_csv_cell(x) for x in row])
    return buf.getvalue()


def _csv_cell(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return x


def emit(result, fmt: str = "json", path=None) -> str:
    """Serialize ``result`` as ``"json"`` or ``"csv"``; write to ``path`` if given.

    CSV output starts with one ``#`` comment line holding the configuration,
    followed by the header row.  Returns the serialized text.
    """
    if fmt == "json":
        text = to_json(result)
    elif fmt == "csv":
        text = to_csv(result)
    else:
        raise DomainError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
