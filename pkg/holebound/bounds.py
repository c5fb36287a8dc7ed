"""Exact evaluation of the constant recurrences behind the chromatic bound, with a symbolic fallback.

Every constant is a ``BoundExpr``: a node of an expression DAG that also carries its
exact integer value while that value stays within the digit budget. Past the budget
the node is kept symbolic; values are never truncated.
"""

from __future__ import annotations

import contextlib
import contextvars
import logging
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

logger = logging.getLogger(__name__)

DIGIT_BUDGET = int(os.environ.get("HOLEBOUND_DIGIT_BUDGET", str(10**6)))
LADDER_UNROLL = 64
EXPLICIT_MAX_TAU = 16

_LOG10_2 = math.log10(2)
_budget: contextvars.ContextVar[int] = contextvars.ContextVar("digit_budget", default=DIGIT_BUDGET)


@contextlib.contextmanager
def digit_budget(digits: int) -> Iterator[None]:
    """Evaluates bounds built inside the block with a budget of ``digits`` decimal digits."""
    if digits < 1:
        raise ValueError(f"digit budget must be positive, got {digits}")
    token = _budget.set(digits)
    try:
        yield
    finally:
        _budget.reset(token)


def _log10_of(value: int) -> float:
    if value <= 1:
        return 0.0
    if value.bit_length() < 1000:
        return math.log10(value)
    return value.bit_length() * _LOG10_2


@dataclass(frozen=True, eq=False)
class BoundExpr:
    """One node of a constant's expression DAG.

    ``op`` is one of const, add, mul, pow, max, label, ladder. ``value`` is the exact
    value, or None when the node is symbolic. ``log10`` estimates the decimal size
    (``inf`` for towers).
    """

    op: str
    args: tuple[BoundExpr, ...] = ()
    value: Optional[int] = None
    label: Optional[str] = None
    log10: float = 0.0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def digits(self) -> Optional[int]:
        """Decimal digit count of an exact value."""
        if self.value is None:
            return None
        if self.value < 10:
            return 1
        estimate = int(_log10_of(self.value))
        for candidate in (estimate, estimate + 1, estimate + 2):
            if self.value < 10**candidate:
                return candidate
        return estimate + 2

    def walk(self) -> Iterator[BoundExpr]:
        """Each distinct node once, children before parents."""
        seen: set[int] = set()
        stack: list[tuple[BoundExpr, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen:
                continue
            if expanded:
                seen.add(id(node))
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.args):
                if id(child) not in seen:
                    stack.append((child, False))

    def find(self, label: str) -> list[BoundExpr]:
        return [node for node in self.walk() if node.label == label]

    def summary(self) -> dict:
        ops: Counter[str] = Counter()
        labels: Counter[str] = Counter()
        for node in self.walk():
            ops[node.op] += 1
            if node.label is not None:
                labels[node.label] += 1
        return {
            "exact": self.exact,
            "digits": self.digits(),
            "log10": None if math.isinf(self.log10) else round(self.log10, 3),
            "nodes": sum(ops.values()),
            "ops": dict(sorted(ops.items())),
            "labels": dict(sorted(labels.items())),
        }

    def to_json(self) -> dict:
        """Node table in child-first order; values are hex strings so no decimal conversion limit applies."""
        index: dict[int, int] = {}
        nodes = []
        for node in self.walk():
            index[id(node)] = len(nodes)
            nodes.append(
                {
                    "op": node.op,
                    "args": [index[id(a)] for a in node.args],
                    "value": None if node.value is None else hex(node.value),
                    "label": node.label,
                    "log10": None if math.isinf(node.log10) else node.log10,
                }
            )
        return {"nodes": nodes, "root": len(nodes) - 1}

    @classmethod
    def from_json(cls, data: dict) -> BoundExpr:
        built: list[BoundExpr] = []
        for item in data["nodes"]:
            built.append(
                cls(
                    op=item["op"],
                    args=tuple(built[i] for i in item["args"]),
                    value=None if item["value"] is None else int(item["value"], 16),
                    label=item.get("label"),
                    log10=math.inf if item.get("log10") is None else float(item["log10"]),
                )
            )
        return built[data["root"]]

    def structurally_equal(self, other: BoundExpr) -> bool:
        return self.to_json() == other.to_json()

    def __repr__(self) -> str:
        if self.value is not None and self.log10 < 30:
            shown = str(self.value)
        elif self.value is not None:
            shown = f"<{self.digits()} digits>"
        else:
            shown = "<symbolic>"
        name = f" {self.label}" if self.label else ""
        return f"BoundExpr({self.op}{name} = {shown})"


Boundish = Union[BoundExpr, int]


def const(value: int) -> BoundExpr:
    if value < 0:
        raise ValueError(f"bound constants are nonnegative, got {value}")
    return BoundExpr("const", (), value, None, _log10_of(value))


def _lift(x: Boundish) -> BoundExpr:
    return x if isinstance(x, BoundExpr) else const(x)


def _within_budget(log10: float) -> bool:
    return log10 <= _budget.get()


def add(*terms: Boundish) -> BoundExpr:
    args = tuple(_lift(t) for t in terms)
    log10 = max((a.log10 for a in args), default=0.0) + math.log10(max(len(args), 1))
    value = None
    if all(a.exact for a in args) and _within_budget(log10):
        value = sum(a.value for a in args)
        log10 = _log10_of(value)
    return BoundExpr("add", args, value, None, log10)


def mul(*factors: Boundish) -> BoundExpr:
    args = tuple(_lift(f) for f in factors)
    value = None
    if any(a.exact and a.value == 0 for a in args):
        return BoundExpr("mul", args, 0, None, 0.0)
    log10 = sum(a.log10 for a in args)
    if all(a.exact for a in args) and _within_budget(log10):
        value = math.prod(a.value for a in args)
        log10 = _log10_of(value)
    return BoundExpr("mul", args, value, None, log10)


def power(base: Boundish, exponent: Boundish) -> BoundExpr:
    b, e = _lift(base), _lift(exponent)
    if e.exact and e.value == 0:
        return BoundExpr("pow", (b, e), 1, None, 0.0)
    if b.exact and b.value in (0, 1):
        return BoundExpr("pow", (b, e), b.value, None, 0.0)
    if e.exact:
        log10 = e.value * b.log10
    elif e.log10 < 300:
        log10 = 10**e.log10 * b.log10
    else:
        log10 = math.inf
    value = None
    if b.exact and e.exact and _within_budget(log10):
        value = b.value**e.value
        log10 = _log10_of(value)
    return BoundExpr("pow", (b, e), value, None, log10)


def maximum(*terms: Boundish) -> BoundExpr:
    args = tuple(_lift(t) for t in terms)
    value = max(a.value for a in args) if all(a.exact for a in args) else None
    log10 = max(a.log10 for a in args) if value is None else _log10_of(value)
    return BoundExpr("max", args, value, None, log10)


def labelled(name: str, expr: Boundish) -> BoundExpr:
    """Names a sub-result; the label node keeps the child so the tree stays auditable."""
    child = _lift(expr)
    return BoundExpr("label", (child,), child.value, name, child.log10)


def opaque(name: str, *args: Boundish) -> BoundExpr:
    """A symbolic node standing for a recurrence too long to unroll."""
    lifted = tuple(_lift(a) for a in args)
    return BoundExpr("ladder", lifted, None, name, math.inf)


def _ceil_half(x: int) -> int:
    return -(-x // 2)


# --- Parameters ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundParams:
    k: int
    ell: int
    h: int = 1
    kappa: int = 0
    tau: int = 0
    m: int = 0
    c: int = 0
    j: int = 0
    n: int = 0

    def __post_init__(self) -> None:
        for name in ("k", "ell", "h", "kappa", "tau", "m", "c", "j", "n"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in ("k", "ell", "h", "kappa", "tau", "m", "c", "j", "n")}


# --- Tick and impression constants -----------------------------------------------


@dataclass(frozen=True)
class GettickConstants:
    m_j: BoundExpr
    c_j: BoundExpr
    d2: Optional[BoundExpr] = None
    d1: Optional[BoundExpr] = None
    d0: Optional[BoundExpr] = None


def gettick_constants(j: int, k: Boundish, m: Boundish, c: Boundish, kappa: Boundish) -> GettickConstants:
    """m_j and c_j of the tick lemma, by the displayed recurrence from m_0 = c_0 = 1."""
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}")
    k, m, c, kappa = _lift(k), _lift(m), _lift(c), _lift(kappa)
    result = GettickConstants(labelled("m_0", 1), labelled("c_0", 1))
    for level in range(1, j + 1):
        m_prev, c_prev = result.m_j, result.c_j
        m_j = labelled(f"m_{level}", mul(2, k, m, m_prev))
        two_m = power(2, m_j)
        d2 = labelled(f"d2@{level}", add(mul(m_j, two_m, c_prev), mul(two_m, c)))
        d1 = labelled(f"d1@{level}", add(d2, mul(m_j, kappa)))
        d0 = labelled(f"d0@{level}", mul(k, two_m, d1))
        c_j = labelled(f"c_{level}", add(d0, mul(k, kappa)))
        result = GettickConstants(m_j, c_j, d2, d1, d0)
    return result


def gettick_values(j: int, k: int, m: int, c: int, kappa: int) -> list[tuple[int, int]]:
    """(m_i, c_i) for i = 0..j as plain integers."""
    ladder = [(1, 1)]
    for _ in range(j):
        m_prev, c_prev = ladder[-1]
        m_i = 2 * k * m * m_prev
        d2 = m_i * 2**m_i * c_prev + 2**m_i * c
        d1 = d2 + m_i * kappa
        d0 = k * 2**m_i * d1
        ladder.append((m_i, d0 + k * kappa))
    return ladder


def stableimpression_constants(k: Boundish, kappa: Boundish, n: int) -> tuple[BoundExpr, BoundExpr]:
    """(m, c): n rounds of the tick lemma with j = k, ending at targets (n, 1)."""
    m_req: BoundExpr = const(n)
    c_req: BoundExpr = const(1)
    j = _lift(k).value
    if j is None:
        raise ValueError("the clique bound must be exact")
    for _ in range(n):
        step = gettick_constants(j, k, m_req, c_req, kappa)
        m_req, c_req = step.m_j, step.c_j
    return labelled("stableimpression.m", m_req), labelled("stableimpression.c", c_req)


def impression_constants(k: Boundish, kappa: Boundish, n: int) -> tuple[BoundExpr, BoundExpr]:
    """(m, c' * kappa^m) where (m, c') are the stable constants."""
    m, c_stable = stableimpression_constants(k, kappa, n)
    return labelled("impression.m", m), labelled("impression.c", mul(c_stable, power(kappa, m)))


def ramsey_upper(h: Boundish, m: Boundish) -> BoundExpr:
    """t such that every h-colouring of the pairs of a t-set has a monochromatic m-subset: h^(h(m-1)+1), or m when h = 1."""
    h_e, m_e = _lift(h), _lift(m)
    if h_e.exact and h_e.value < 1 or m_e.exact and m_e.value < 1:
        raise ValueError("ramsey_upper needs h, m >= 1")
    if h_e.exact and h_e.value == 1:
        return labelled("ramsey", m_e)
    # a symbolic m stands in for m - 1, which only enlarges the bound
    reduced = const(m_e.value - 1) if m_e.exact else m_e
    return labelled("ramsey", power(h_e, add(mul(h_e, reduced), 1)))


def usetype1_constants(k: Boundish, kappa: Boundish, n: int, h: Boundish) -> tuple[BoundExpr, BoundExpr]:
    """(t1, c1): type-1 cables of length t1 have base chromatic number at most c1."""
    m, c = impression_constants(k, kappa, n)
    return labelled("usetype1.t", ramsey_upper(h, m)), labelled("usetype1.c", c)


def usetype2_threshold(ell: int, tau: Boundish) -> tuple[BoundExpr, BoundExpr]:
    """(length, chi ceiling) for type-2 cables: (ell-3, (ell-3)tau); requires ell >= 5."""
    if ell < 5:
        raise ValueError(f"type-2 cables need ell >= 5, got {ell}")
    return labelled("usetype2.t", const(ell - 3)), labelled("usetype2.c", mul(ell - 3, tau))


def usecable_constants(k: Boundish, kappa: Boundish, tau: Boundish, ell: int, h: Boundish) -> tuple[BoundExpr, BoundExpr]:
    """(t, c): every h-cable of length t has base chromatic number at most c.

    Pairs are two-coloured by type; a homogeneous subcable is long enough for the
    type-1 or the type-2 bound. The type-2 branch uses max(ell, 5) since a graph with
    no hole of length >= 4 has none of length >= 5 either.
    """
    n = _ceil_half(ell)
    t1, c1 = usetype1_constants(k, kappa, n, h)
    t2, c2 = usetype2_threshold(max(ell, 5), tau)
    t = ramsey_upper(2, maximum(t1, t2))
    return labelled("usecable.t", t), labelled("usecable.c", maximum(c1, c2))


# --- Cable ladder and clique control ---------------------------------------------


Phi = Callable[[BoundExpr], BoundExpr]


@dataclass(frozen=True)
class SigmaLadder:
    """sigmas[s] is sigma_s for s = 0..t when unrolled; empty when the ladder is symbolic."""

    sigmas: tuple[BoundExpr, ...]
    c_prime: BoundExpr


def sigma_ladder(
    t: Boundish,
    c: Boundish,
    tau: Boundish,
    kappa: Boundish,
    h: Boundish,
    phi: Phi,
) -> SigmaLadder:
    """sigma_t = max(c, tau+h kappa); sigma_s = max(2^s phi((h+1)^s sigma_{s+1}), tau+h kappa); c' = sigma_0."""
    t_e, c_e, tau_e, kappa_e, h_e = (_lift(x) for x in (t, c, tau, kappa, h))
    floor = add(tau_e, mul(h_e, kappa_e))
    if not t_e.exact or t_e.value > LADDER_UNROLL:
        node = opaque("sigma_ladder", t_e, c_e, tau_e, kappa_e, h_e, phi(floor))
        return SigmaLadder((), node)
    steps = t_e.value
    sigmas: list[BoundExpr] = [const(0)] * (steps + 1)
    sigmas[steps] = maximum(c_e, floor)
    for s in range(steps - 1, -1, -1):
        inner = mul(power(add(h_e, 1), s), sigmas[s + 1])
        sigmas[s] = maximum(mul(power(2, s), phi(inner)), floor)
    return SigmaLadder(tuple(sigmas), labelled("sigma_ladder", sigmas[0]))


def phi1(x: Boundish, ell: int, kappa: Boundish) -> BoundExpr:
    """2(ell-3)(kappa+x)+1."""
    if ell < 4:
        raise ValueError(f"ell must be at least 4, got {ell}")
    return add(mul(2, ell - 3, add(kappa, x)), 1)


def mainthm2_constant(
    k: Boundish,
    kappa: Boundish,
    tau: Boundish,
    ell: int,
    h: Boundish,
    phi: Phi,
) -> BoundExpr:
    """c(tau): chi(G) <= c(tau) when the (h+1)-clique second neighbourhoods have chi <= tau."""
    t, c = usecable_constants(k, kappa, tau, ell, h)
    ladder = sigma_ladder(t, c, tau, kappa, h, phi)
    return labelled("mainthm2", ladder.c_prime)


@dataclass
class PhiLadder:
    """phi_1..phi_h_max as BoundExpr-valued functions (``phis[h - 1]`` is phi_h)."""

    k: int
    ell: int
    kappa: BoundExpr
    phis: list[Phi] = field(default_factory=list)

    def __call__(self, h: int, x: Boundish) -> BoundExpr:
        return self.phis[h - 1](_lift(x))


def phi_ladder(k: int, ell: int, kappa: Boundish, h_max: int) -> PhiLadder:
    if not 1 <= h_max <= max(k, 1):
        raise ValueError(f"h_max must be in 1..{k}, got {h_max}")
    if ell < 4:
        raise ValueError(f"ell must be at least 4, got {ell}")
    kappa_e = _lift(kappa)
    ladder = PhiLadder(k, ell, kappa_e)

    def first(x: BoundExpr) -> BoundExpr:
        return labelled("phi_1", phi1(x, ell, kappa_e))

    ladder.phis.append(first)
    for h in range(1, h_max):
        ladder.phis.append(_next_phi(k, ell, kappa_e, h, ladder.phis[h - 1]))
    return ladder


def _next_phi(k: int, ell: int, kappa: BoundExpr, h: int, phi_h: Phi) -> Phi:
    name = f"phi_{h + 1}"

    def c_of(tau: BoundExpr) -> BoundExpr:
        return mainthm2_constant(k, kappa, tau, ell, h, phi_h)

    def phi_next(n: BoundExpr) -> BoundExpr:
        # max over tau <= n of c(tau); c is nondecreasing, so past the explicit range c(n) is the maximum
        if n.exact and n.value <= EXPLICIT_MAX_TAU:
            return labelled(name, maximum(*(c_of(const(tau)) for tau in range(n.value + 1))))
        return labelled(name, c_of(n))

    return phi_next


def main_bound(k: int, ell: int) -> BoundExpr:
    """Bound on chi for graphs with clique number <= k and no hole of length >= ell."""
    if k < 1 or ell < 1:
        raise ValueError("main_bound needs k, ell >= 1")
    if k == 1:
        return labelled("main_bound[k=1]", 1)
    if ell < 4:
        # no hole of length >= ell < 4 means no hole at all; the chordal case
        ell = 4
    kappa = main_bound(k - 1, ell)
    ladder = phi_ladder(k, ell, kappa, k)
    bound = labelled(f"main_bound[k={k}]", ladder(k, 0))
    logger.debug("main_bound k=%d ell=%d exact=%s nodes=%d", k, ell, bound.exact, bound.summary()["nodes"])
    return bound
