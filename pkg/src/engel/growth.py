"""Positive functions on the positive integers, evaluated in log space.

Growth functions in this package routinely exceed float range
(``exp(exp(n))`` at n = 200, say), so the primary evaluation is
``log_value(n) = log f(n)``.  ``value`` and ``loglog`` are derived from it,
and built-in rules override them with closed forms where those are exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import DomainError


@dataclass(frozen=True)
class GrowthFunction:
    """A positive function ``n -> f(n)`` for integers ``n >= 1``.

    ``log_rule`` returns ``log f(n)``.  ``monotone`` is a claim made by the
    constructor; :meth:`check_monotone` tests it on a finite range.
    """

    log_rule: Callable[[int], float]
    name: str = "custom"
    params: dict = field(default_factory=dict)
    monotone: bool = False
    value_rule: Callable[[int], float] | None = None
    loglog_rule: Callable[[int], float] | None = None

    def log_value(self, n: int) -> float:
        return float(self.log_rule(n))

    def value(self, n: int) -> float:
        """``f(n)`` as a float; ``inf`` once it overflows."""
        if self.value_rule is not None:
            return float(self.value_rule(n))
        try:
            return math.exp(self.log_value(n))
        except OverflowError:
            return math.inf

    __call__ = value

    def loglog(self, n: int) -> float:
        """``log log f(n)``; defined only where ``f(n) > 1``."""
        if self.loglog_rule is not None:
            return float(self.loglog_rule(n))
        lv = self.log_value(n)
        if lv <= 0:
            raise DomainError(f"{self.name}: f({n}) <= 1, log log undefined")
        return math.log(lv)

    def log_values(self, lo: int, hi: int) -> list[float]:
        return [self.log_value(n) for n in range(lo, hi + 1)]

    def check_monotone(self, lo: int, hi: int) -> bool:
        vals = self.log_values(lo, hi)
        return all(a <= b for a, b in zip(vals, vals[1:]))

    def to_json(self) -> str:
        if self.name == "table":
            rows = [[n, v] for n, v in sorted(self.params["table"].items())]
            return json.dumps(rows)
        return json.dumps({"rule": self.name, **self.params}, sort_keys=True)


def power(a: float = 1.0, scale: float = 1.0) -> GrowthFunction:
    """``scale * n**a``."""
    if scale <= 0:
        raise DomainError("scale must be positive")
    log_scale = math.log(scale)
    return GrowthFunction(
        lambda n: log_scale + a * math.log(n),
        name="power", params={"a": a, "scale": scale}, monotone=a >= 0,
        value_rule=lambda n: scale * float(n) ** a)


def exponential(b: float = 1.0, scale: float = 1.0) -> GrowthFunction:
    """``scale * exp(b*n)``."""
    if scale <= 0:
        raise DomainError("scale must be positive")
    log_scale = math.log(scale)
    return GrowthFunction(
        lambda n: log_scale + b * n,
        name="exp", params={"b": b, "scale": scale}, monotone=b >= 0)


def double_exponential(c: float = 1.0) -> GrowthFunction:
    """``exp(exp(c*n))``; ``log log f(n) = c*n`` exactly."""
    return GrowthFunction(
        lambda n: math.exp(c * n) if c * n < 709 else math.inf,
        name="double-exp", params={"c": c}, monotone=c >= 0,
        loglog_rule=lambda n: c * n)


def stretched_exponential(c: float = 0.5) -> GrowthFunction:
    """``exp(n**c)``."""
    return GrowthFunction(
        lambda n: float(n) ** c,
        name="stretched-exp", params={"c": c}, monotone=c >= 0)


def logarithmic(scale: float = 1.0) -> GrowthFunction:
    """``scale * log(n + 1)``, positive for every ``n >= 1``."""
    if scale <= 0:
        raise DomainError("scale must be positive")
    log_scale = math.log(scale)
    return GrowthFunction(
        lambda n: log_scale + math.log(math.log(n + 1)),
        name="log", params={"scale": scale}, monotone=True,
        value_rule=lambda n: scale * math.log(n + 1))


def constant(value: float) -> GrowthFunction:
    if value <= 0:
        raise DomainError("value must be positive")
    lv = math.log(value)
    return GrowthFunction(lambda n: lv, name="constant", params={"value": value},
                          monotone=True, value_rule=lambda n: value)


def mixed(a: float = 0.0, b: float = 0.0, c: float = 0.0,
          scale: float = 1.0) -> GrowthFunction:
    """``scale * n**a * exp(b*n + n**c)``; ``c = 0`` drops the stretched term."""
    if scale <= 0:
        raise DomainError("scale must be positive")
    log_scale = math.log(scale)

    def log_rule(n):
        lv = log_scale + a * math.log(n) + b * n
        if c:
            lv += float(n) ** c
        return lv

    return GrowthFunction(log_rule, name="mixed",
                          params={"a": a, "b": b, "c": c, "scale": scale},
                          monotone=a >= 0 and b >= 0 and c >= 0)


def table(rows) -> GrowthFunction:
    """Lookup table from ``[[n, value], ...]`` (or a mapping ``n -> value``)."""
    items = rows.items() if isinstance(rows, dict) else rows
    data = {}
    for n, v in items:
        n, v = int(n), float(v)
        if v <= 0:
            raise DomainError(f"table value at n={n} is not positive")
        data[n] = v

    def lookup(n):
        try:
            return data[n]
        except KeyError:
            raise DomainError(f"table has no entry for n={n}") from None

    vals = [data[k] for k in sorted(data)]
    return GrowthFunction(lambda n: math.log(lookup(n)), name="table",
                          params={"table": data},
                          monotone=all(x <= y for x, y in zip(vals, vals[1:])),
                          value_rule=lookup)


_BUILTINS = {
    "power": power,
    "exp": exponential,
    "double-exp": double_exponential,
    "stretched-exp": stretched_exponential,
    "log": logarithmic,
    "constant": constant,
    "mixed": mixed,
}


def from_spec(spec) -> GrowthFunction:
    """Build a growth function from its JSON form.

    ``spec`` is either ``{"rule": name, **params}`` for a built-in rule or a
    table ``[[n, value], ...]``; a JSON string of either is also accepted.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if isinstance(spec, list):
        return table(spec)
    if isinstance(spec, dict):
        params = dict(spec)
        rule = params.pop("rule", None)
        if rule not in _BUILTINS:
            raise DomainError(f"unknown growth rule {rule!r}; "
                              f"known: {', '.join(sorted(_BUILTINS))}")
        try:
            return _BUILTINS[rule](**params)
        except TypeError as exc:
            raise DomainError(f"bad parameters for rule {rule!r}: {exc}") from exc
    raise DomainError(f"cannot build a growth function from {spec!r}")
