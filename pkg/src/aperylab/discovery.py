"""The alpha-table bootstrap and the generating-function conjecture.

Expanding 1/(k^2 - u) in the zeta(2n+2) generating function and writing
P_k(u) = sum_m u^m sum_{pi in Pi(m)} alpha(pi) sigma_hat_k(pi) gives, for
every m >= 0,

    zeta(2m+2) = sum_{j<=m} sum_{pi in Pi(j)} alpha(pi) sigma(2(m-j)+2; 2pi).

Step m knows every alpha of weight < m, folds those terms into one number
and asks PSLQ for the p(m) new coefficients multiplying sigma(2; 2pi).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .catalog import PoleError, apery22_closed, identity_eval, zeta4_maclaurin_rational
from .exact import (
    RationalFunction,
    RationalPoly,
    format_rational,
    partition_str,
    partitions_of,
)
from .mp import Precision, elementary, magnitude, zeta_int
from .pade import pade_scan
from .pslq import PSLQError, RelationResult, find_relation, verify_relation
from .series import SigmaSpec, SimplexSpec, pk_series, sigma_many, simplex_eval, w_series, zeta2_rhs_series

log = logging.getLogger(__name__)

AlphaTable = dict  # Partition -> Fraction


class BootstrapFailure(RuntimeError):
    def __init__(self, message: str, weight: int, result=None):
        super().__init__(message)
        self.weight = weight
        self.result = result


@dataclass
class BootstrapState:
    alphas: dict = field(default_factory=dict)
    completed_weight: int = -1
    precision: Precision = field(default_factory=lambda: Precision(200))
    log: list = field(default_factory=list)
    max_iterations: int = 200_000
    escalation: int = 50  # digits added per retry
    max_escalations: int = 2


def _step_vector(alphas: Mapping, m: int, p: Precision):
    """[zeta(2m+2) - known part, sigma(2; 2pi) for pi in Pi(m)]."""
    known = [(SigmaSpec(m - j + 1, part), alphas[part])
             for j in range(m) for part in partitions_of(j)]
    fresh = [SigmaSpec(1, part) for part in partitions_of(m)]
    values = sigma_many([s for s, _ in known] + fresh, p)
    ctx = p.ctx
    known_sum = ctx.fsum(ctx.mpf(a.numerator) / a.denominator * v
                         for (_, a), v in zip(known, values))
    return [zeta_int(2 * m + 2, p) - known_sum] + values[len(known):]


def _attempt(state: BootstrapState, m: int, p: Precision) -> tuple:
    xs = _step_vector(state.alphas, m, p)
    entry = {"weight": m, "length": len(xs), "digits": p.digits}
    try:
        res = find_relation(xs, p, max_iterations=state.max_iterations)
    except PSLQError as exc:
        entry.update(status=type(exc).__name__, iterations=exc.iterations,
                     bound=magnitude(exc.bound) if exc.bound is not None else None)
        return None, entry
    entry.update(status=res.status, iterations=res.iterations)
    rel = res.relation
    if not res.found or rel[0] == 0:
        if res.found:
            entry["status"] = "no-zeta-term"
        return None, entry
    hi = p.raised(30)
    r_hi, ok = verify_relation(rel, _step_vector(state.alphas, m, hi), hi)
    entry.update(relation=list(rel), residual=magnitude(res.residual),
                 recheck_residual=magnitude(r_hi), recheck_digits=hi.digits)
    if not ok:
        entry["status"] = "spurious"
        return None, entry
    return rel, entry


def bootstrap_step(state: BootstrapState) -> BootstrapState:
    """Find the alpha values of weight completed_weight + 1.

    A candidate must survive a recheck with 30 more digits. If it does not
    (or PSLQ runs out of precision) the step is retried with ``escalation``
    more digits, at most ``max_escalations`` times; every attempt is logged.
    """
    m = state.completed_weight + 1
    attempts = []
    rel = None
    for i in range(state.max_escalations + 1):
        p = state.precision.raised(i * state.escalation)
        rel, entry = _attempt(state, m, p)
        attempts.append(entry)
        if rel is not None:
            break
        log.warning("weight %d at %d digits: %s", m, p.digits, entry["status"])
    if rel is None:
        raise BootstrapFailure(f"weight {m}: no verified relation ({attempts[-1]['status']})", m,
                               attempts)
    new = dict(state.alphas)
    for part, a in zip(partitions_of(m), rel[1:]):
        new[part] = Fraction(-a, rel[0])
    log.info("weight %d: %d coefficients at %d digits", m, len(rel) - 1, attempts[-1]["digits"])
    return replace(state, alphas=new, completed_weight=m, log=state.log + attempts)


def run_table1(max_weight: int, p: Precision, state: BootstrapState | None = None) -> BootstrapState:
    """Bootstrap alpha(pi) for every partition of weight <= max_weight."""
    if state is None:
        state = BootstrapState(precision=p)
    while state.completed_weight < max_weight:
        state = bootstrap_step(state)
    return state


def table_rows(alphas: Mapping, max_weight: int) -> list[tuple[int, str, str]]:
    """(weight, partition, alpha) rows in the printed table's reverse-lex order."""
    rows = []
    for m in range(max_weight + 1):
        for part in partitions_of(m, order="revlex"):
            rows.append((m, partition_str(part), format_rational(alphas[part])))
    return rows


def alphas_to_json(alphas: Mapping, max_weight: int) -> dict:
    return {part: val for _, part, val in table_rows(alphas, max_weight)}


# --------------------------------------------------------------------------
# closed forms of P_k


def product_pattern(k: int) -> RationalFunction:
    """3 prod_{m<k} (4u - m^2)/(u - m^2), in lowest terms."""
    num = RationalPoly([3])
    den = RationalPoly([1])
    for m in range(1, k):
        num = num * RationalPoly([-m * m, 4])
        den = den * RationalPoly([-m * m, 1])
    return RationalFunction(num, den)


@dataclass
class ConjectureReport:
    closed_forms: dict = field(default_factory=dict)  # k -> RationalFunction
    degrees: dict = field(default_factory=dict)  # k -> (p, q, validated_order)
    pattern: dict = field(default_factory=dict)  # k -> {"matches": bool, "constant": Fraction}
    missing: list = field(default_factory=list)  # k with no validated candidate
    verification: dict = field(default_factory=dict)
    digits: int | None = None

    @property
    def all_match(self) -> bool:
        return not self.missing and all(v["matches"] for v in self.pattern.values())


def conjecture_closed_forms(alphas: Mapping, k_max: int, order: int,
                            max_deg: int | None = None) -> ConjectureReport:
    """Pade-fit the P_k series (u^0..u^order) and compare with the product family.

    A fit counts only if the series has at least one coefficient beyond the
    p+q+1 that determine it; exactly determined fits always succeed and
    prove nothing, so such k are reported as missing.
    """
    rep = ConjectureReport()
    for k in range(1, k_max + 1):
        s = pk_series(alphas, k, order)
        hits = [h for h in pade_scan(s, max_deg if max_deg is not None else order // 2)
                if h[0] + h[1] + 1 < h[3]]
        if not hits:
            rep.missing.append(k)
            continue
        pp, qq, f, validated = hits[0]
        rep.closed_forms[k] = f
        rep.degrees[k] = (pp, qq, validated)
        rep.pattern[k] = {"matches": f == product_pattern(k), "constant": f.num.lead}
    return rep


# --------------------------------------------------------------------------
# numerical verification protocols


def _stated_special_values(p: Precision) -> dict:
    ctx = p.ctx
    pi = ctx.pi
    s3 = ctx.sqrt(3)
    s2 = ctx.sqrt(2)
    return {
        "1/2": ctx.mpf(2),
        "1/4": 8 - 2 * pi,
        "1/3": ctx.mpf(9) / 2 - 3 * pi / (2 * s3),
        "1/6": 18 - 3 * s3 * pi,
        "1/sqrt2": 1 - pi / s2 * elementary("cot", pi / s2, p),
    }


SPECIAL_POINTS = ("1/6", "1/2", "1/3", "1/4", "1/sqrt2")


def _point(label: str, p: Precision):
    if label == "1/sqrt2":
        return 1 / p.ctx.sqrt(2)
    return p.mpf(label)


def series_coefficients(identity: str, order: int, p: Precision):
    """Maclaurin coefficients in u = x^2 (u^0..u^order) of both sides, or None."""
    ctx = p.ctx
    if identity == "apery2":
        lhs = [zeta_int(2 * n + 2, p) for n in range(order + 1)]
        rhs = zeta2_rhs_series(order, p)
        return lhs, rhs
    if identity in ("zeta4", "apery4"):
        lhs = w_series(order, p)
        qs = zeta4_maclaurin_rational(order + 1)
        pi2 = ctx.pi ** 2
        rhs = [ctx.mpf(q.numerator) / q.denominator * pi2 ** (n + 2) for n, q in enumerate(qs)]
        return lhs, rhs
    return None


def verify_conjecture(identity: str, p: Precision, coeff_order: int = 20,
                      n_random: int = 20) -> dict:
    """Run the three checks on a one-parameter identity.

    (1) series coefficients of both sides through u^coeff_order,
    (2) the special points 1/6, 1/2, 1/3, 1/4, 1/sqrt2,
    (3) x = frac(m pi) for m = 1..n_random.
    Points that hit a pole are skipped and logged.
    """
    ctx = p.ctx
    out: dict = {"identity": identity, "digits": p.digits, "skipped": []}

    coeffs = series_coefficients(identity, coeff_order, p)
    if coeffs is None:
        out["coefficients"] = None
    else:
        lhs, rhs = coeffs
        diffs = [abs(a - b) for a, b in zip(lhs, rhs)]
        out["coefficients"] = {"order": coeff_order, "max_residual": max(diffs),
                               "residuals": diffs}

    specials = {}
    stated = _stated_special_values(p) if identity == "apery2" else {}
    for label in SPECIAL_POINTS:
        x = _point(label, p)
        try:
            lhs, rhs = identity_eval(identity, [x], p)
        except (PoleError, ZeroDivisionError) as exc:
            out["skipped"].append({"point": label, "reason": str(exc)})
            continue
        rec = {"residual": abs(lhs - rhs), "value": rhs}
        if label in stated:
            rec["stated_residual"] = abs(rhs - stated[label])
            rec["closed_residual"] = abs(rhs - apery22_closed(p, x))
        specials[label] = rec
    out["special"] = specials

    randoms = []
    for m in range(1, n_random + 1):
        x = ctx.frac(m * ctx.pi)
        try:
            lhs, rhs = identity_eval(identity, [x], p)
        except (PoleError, ZeroDivisionError) as exc:
            out["skipped"].append({"point": f"frac({m} pi)", "reason": str(exc)})
            continue
        randoms.append({"m": m, "x": x, "residual": abs(lhs - rhs)})
    out["random"] = randoms
    return out


def max_residual(report: dict):
    vals = []
    if report.get("coefficients"):
        vals.append(report["coefficients"]["max_residual"])
    for rec in report.get("special", {}).values():
        vals += [v for k, v in rec.items() if k.endswith("residual")]
    vals += [r["residual"] for r in report.get("random", [])]
    return max(vals) if vals else None


# --------------------------------------------------------------------------
# the simplex family for zeta(2n)


def _even_compositions(total: int, smallest: int = 4):
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1, 2):
        for rest in _even_compositions(total - first, smallest):
            yield (first,) + rest


def simplex_basis(weight: int, chains: str = "partitions") -> list[SimplexSpec]:
    """Sums 1/(k^2r C(2k,k)) times nested j^-b chains with every b >= 4, of total weight.

    ``chains="partitions"`` keeps one chain per multiset of inner exponents
    (listed largest first), mirroring the partition-indexed sigma basis;
    ``"compositions"`` keeps every ordering. The two agree through weight 10,
    where the only two-level chain is [4,4].
    """
    if chains not in ("partitions", "compositions"):
        raise ValueError(f"unknown chain family {chains!r}")
    out = []
    for outer in range(weight, 1, -2):
        for chain in _even_compositions(weight - outer):
            if chains == "partitions" and list(chain) != sorted(chain, reverse=True):
                continue
            out.append(SimplexSpec(outer // 2, chain))
    return out


def simplex_probe(weight: int, p: Precision, bound=None, chains: str = "partitions") -> RelationResult:
    """PSLQ on [zeta(weight), simplex basis] with an exclusion bound (default 10^12)."""
    basis = simplex_basis(weight, chains)
    xs = [zeta_int(weight, p)] + [simplex_eval(s, p) for s in basis]
    if bound is None:
        bound = p.ctx.mpf(10) ** 12
    res = find_relation(xs, p, bound=bound)
    res.extra["basis"] = [str(s) for s in basis]
    return res
