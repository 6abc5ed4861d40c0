"""Integer relation detection with PSLQ.

The iteration runs in fixed-point integer arithmetic (values scaled by
2^prec) at the problem's working precision. Besides relations it reports
the usual PSLQ certificate: after any iteration, no integer relation of
Euclidean norm below 1/max_j |H_jj| exists.

A candidate is detected once |sum a_i x_i| < 10^(-digits+10) ||x||. It is
accepted only if the exact residual also vanishes into the guard digits
(below 10^-(digits + guard/2) ||a||); otherwise the run ends with
PrecisionExhausted, since a chance near-relation looks the same at the
detection threshold. Inputs must therefore be accurate to the working
precision digits + guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from mpmath.libmp import to_fixed

from .mp import Precision, from_decimal, magnitude, to_decimal

GAMMA = math.sqrt(4 / 3)


class PSLQError(RuntimeError):
    def __init__(self, message: str, bound=None, iterations: int = 0):
        super().__init__(message)
        self.bound = bound
        self.iterations = iterations


class PrecisionExhausted(PSLQError):
    """Working precision ran out before a relation was confirmed or excluded."""


class IterationLimit(PSLQError):
    pass


@dataclass
class RelationProblem:
    xs: list
    precision: Precision
    bound: float | None = None  # stop with an exclusion once no relation shorter than this exists
    max_iterations: int = 200_000

    def to_json(self) -> dict:
        return {
            "digits": self.precision.digits,
            "guard": self.precision.guard,
            "values": [to_decimal(x, self.precision.dps) for x in self.xs],
            "bound": None if self.bound is None else f"{float(self.bound):.6e}",
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelationProblem":
        p = Precision(int(data["digits"]), int(data.get("guard", 10)))
        bound = data.get("bound")
        return cls(
            xs=[from_decimal(v, p) for v in data["values"]],
            precision=p,
            bound=None if bound is None else float(bound),
            max_iterations=int(data.get("max_iterations", 200_000)),
        )


@dataclass
class RelationResult:
    status: str  # "found" or "excluded"
    relation: tuple | None
    bound: object  # mpf: certified lower bound on the norm of any relation
    iterations: int
    residual: object = None
    digits: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        out = {"status": self.status, "iterations": self.iterations, "digits": self.digits,
               "bound": magnitude(self.bound)}
        if self.relation is not None:
            out["relation"] = list(self.relation)
            out["residual"] = magnitude(self.residual)
        out.update(self.extra)
        return out


def normalize_relation(rel) -> tuple:
    """Divide out the content and make the first nonzero entry positive."""
    g = reduce(math.gcd, (abs(int(a)) for a in rel), 0)
    if g == 0:
        raise ValueError("zero vector is not a relation")
    rel = [int(a) // g for a in rel]
    first = next(a for a in rel if a)
    if first < 0:
        rel = [-a for a in rel]
    return tuple(rel)


def _round_div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def pslq_detect(problem: RelationProblem) -> RelationResult:
    p = problem.precision
    ctx = p.ctx
    xs = [ctx.mpf(x) for x in problem.xs]
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two values")
    if any(x == 0 for x in xs):
        raise ValueError("inputs must be nonzero")
    prec = int(p.dps * math.log2(10)) + 16
    one = 1 << prec
    scale = max(abs(x) for x in xs)
    x = [to_fixed((x / scale)._mpf_, prec) for x in xs]

    tol = one // 10 ** (p.digits - 10)  # detection threshold on the normalized y
    confirm = one // 10 ** (p.digits + p.guard // 2)  # a true relation vanishes into the guard digits
    gpow = [int(GAMMA ** (i + 1) * 2**40) for i in range(n)]
    A = problem.bound
    max_entry = 10 ** p.digits

    # initial H, y
    s = [0] * n
    acc = 0
    for k in range(n - 1, -1, -1):
        acc += x[k] * x[k]
        s[k] = math.isqrt(acc)
    t = s[0]
    y = [(xk << prec) // t for xk in x]
    s = [(sk << prec) // t for sk in s]
    H = [[0] * (n - 1) for _ in range(n)]
    for i in range(n):
        for j in range(min(i + 1, n - 1)):
            if i == j:
                H[i][j] = (s[j + 1] << prec) // s[j]
            else:
                den = (s[j] * s[j + 1]) >> prec
                H[i][j] = -((y[i] * y[j]) // den) if den else 0
    B = [[int(i == j) for j in range(n)] for i in range(n)]

    def reduce_entry(i: int, j: int):
        hjj = H[j][j]
        if hjj == 0:
            return
        q = _round_div(H[i][j], hjj)
        if q == 0:
            return
        y[j] += q * y[i]
        Hi, Hj = H[i], H[j]
        for k in range(j + 1):
            Hi[k] -= q * Hj[k]
        for row in B:
            row[j] += q * row[i]

    for i in range(1, n):
        for j in range(i - 1, -1, -1):
            reduce_entry(i, j)

    def certified_bound():
        big = max(abs(H[j][j]) for j in range(n - 1))
        return ctx.mpf(one) / big if big else ctx.inf

    def check_relation(it):
        small = [c for c in range(n) if abs(y[c]) < tol]
        if not small:
            return None
        # several columns can vanish at once; take the shortest relation
        j = min(small, key=lambda c: sum(B[k][c] ** 2 for k in range(n)))
        rel = [B[k][j] for k in range(n)]
        exact = sum(r * xk for r, xk in zip(rel, x))
        norm = math.isqrt(sum(r * r for r in rel)) + 1
        if abs(exact) >= confirm * norm:
            # below the detection threshold but far above working precision:
            # as likely a chance near-relation as a true one
            raise PrecisionExhausted(
                f"candidate {normalize_relation(rel)} is small only to the detection threshold, "
                "not to working precision", certified_bound(), it)
        rel = normalize_relation(rel)
        residual = abs(ctx.fsum(ctx.mpf(r) * v for r, v in zip(rel, xs)))
        return RelationResult("found", rel, certified_bound(), it, residual, p.digits)

    found = check_relation(0)
    if found:
        return found

    for it in range(1, problem.max_iterations + 1):
        m = max(range(n - 1), key=lambda i: gpow[i] * abs(H[i][i]))
        y[m], y[m + 1] = y[m + 1], y[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for row in B:
            row[m], row[m + 1] = row[m + 1], row[m]
        if m < n - 2:
            a, b = H[m][m], H[m][m + 1]
            t0 = math.isqrt(a * a + b * b)
            if t0 == 0:
                found = check_relation(it)
                if found:
                    return found
                raise PrecisionExhausted("degenerate H matrix", certified_bound(), it)
            t1 = (a << prec) // t0
            t2 = (b << prec) // t0
            for i in range(m, n):
                t3, t4 = H[i][m], H[i][m + 1]
                H[i][m] = (t1 * t3 + t2 * t4) >> prec
                H[i][m + 1] = (t1 * t4 - t2 * t3) >> prec
        for i in range(m + 1, n):
            for j in range(min(i - 1, m + 1), -1, -1):
                reduce_entry(i, j)

        found = check_relation(it)
        if found:
            return found
        bound = certified_bound()
        if A is not None and bound > A:
            return RelationResult("excluded", None, bound, it, digits=p.digits)
        if it % 8 == 0 and max(abs(v) for row in B for v in row) > max_entry:
            raise PrecisionExhausted("relation matrix entries exceed the working precision",
                                     bound, it)
    raise IterationLimit(f"no decision after {problem.max_iterations} iterations",
                         certified_bound(), problem.max_iterations)


def find_relation(xs, p: Precision, bound=None, max_iterations: int = 200_000) -> RelationResult:
    return pslq_detect(RelationProblem(list(xs), p, bound, max_iterations))


def algebraicity_test(c, degree: int, p: Precision, bound=None,
                      max_iterations: int = 200_000) -> RelationResult:
    """PSLQ on [1, c, ..., c^degree].

    A found relation is returned as polynomial coefficients (constant term
    first) with a positive leading coefficient. ``bound`` defaults to
    10^(digits / (2 (degree+1))), comfortably inside what the precision
    can certify.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    ctx = p.ctx
    c = ctx.mpf(c)
    powers = [ctx.mpf(1)]
    for _ in range(degree):
        powers.append(powers[-1] * c)
    if bound is None:
        bound = ctx.mpf(10) ** (p.digits // (2 * (degree + 1)))
    res = find_relation(powers, p, bound, max_iterations)
    if res.found:
        rel = list(res.relation)
        while rel and rel[-1] == 0:
            rel.pop()
        if rel[-1] < 0:
            res.relation = tuple(-a for a in res.relation)
    return res


def verify_relation(rel, xs, p: Precision):
    """|sum a_i x_i| and whether it is below 10^(-digits+10) * ||x||."""
    ctx = p.ctx
    xs = [ctx.mpf(v) for v in xs]
    r = abs(ctx.fsum(ctx.mpf(a) * v for a, v in zip(rel, xs)))
    norm = ctx.sqrt(ctx.fsum(v * v for v in xs))
    return r, r < ctx.mpf(10) ** (-p.digits + 10) * norm
