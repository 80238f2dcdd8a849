"""Exact phase-1 simplex with column generation.

Solves the feasibility problem ``sum_p x_p a_p = b, x >= 0`` where the
columns ``a_p`` are produced on demand by a pricing oracle.  All arithmetic
is over ``Fraction``.  Pivoting follows Bland's rule over the current column
pool; the oracle is consulted only once no pooled column prices out, so once
the pool stops growing the method is plain Bland simplex and terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

_ZERO = Fraction(0)


@dataclass
class Phase1Result:
    feasible: bool
    weights: dict = field(default_factory=dict)   # column key -> value, when feasible
    duals: Optional[list] = None                  # separating dual, when infeasible
    objective: Fraction = _ZERO
    pivots: int = 0


def phase1(b, oracle: Callable, initial=(), max_pivots: int = 100000) -> Phase1Result:
    """Decide feasibility of ``A x = b, x >= 0`` for an implicitly given ``A``.

    ``b`` must be nonnegative.  ``oracle(y)`` receives the current duals and
    returns ``(key, column)`` maximizing ``y . column`` over all columns, or
    ``None`` when no column exists.  ``initial`` seeds the pool with
    ``(key, column)`` pairs.
    """
    m = len(b)
    b = [Fraction(x) for x in b]
    if any(x < 0 for x in b):
        raise ValueError("phase1 expects a nonnegative right-hand side")
    # pool entries: (key, column, cost); artificials come first
    pool = [(None, [Fraction(int(i == r)) for i in range(m)], Fraction(1)) for r in range(m)]
    in_pool = set()
    for key, col in initial:
        if key not in in_pool:
            pool.append((key, [Fraction(x) for x in col], _ZERO))
            in_pool.add(key)
    basis = list(range(m))
    binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    xb = list(b)
    pivots = 0
    while True:
        obj = sum((pool[basis[r]][2] * xb[r] for r in range(m)), _ZERO)
        if obj == 0:
            weights = {}
            for r in range(m):
                if xb[r] and basis[r] >= m:
                    weights[pool[basis[r]][0]] = xb[r]
            return Phase1Result(True, weights, None, obj, pivots)
        cb = [pool[basis[r]][2] for r in range(m)]
        y = [sum((cb[r] * binv[r][i] for r in range(m)), _ZERO) for i in range(m)]
        basic = set(basis)
        enter = None
        for idx, (key, col, cost) in enumerate(pool):
            if idx in basic:
                continue
            if cost - sum((y[i] * col[i] for i in range(m) if col[i]), _ZERO) < 0:
                enter = idx
                break
        if enter is None:
            found = oracle(y)
            if found is not None:
                key, col = found
                col = [Fraction(x) for x in col]
                if -sum((y[i] * col[i] for i in range(m) if col[i]), _ZERO) < 0:
                    if key in in_pool:
                        raise AssertionError("oracle column already pooled but not priced")
                    pool.append((key, col, _ZERO))
                    in_pool.add(key)
                    enter = len(pool) - 1
        if enter is None:
            return Phase1Result(False, {}, y, obj, pivots)
        col = pool[enter][1]
        u = [sum((binv[r][i] * col[i] for i in range(m) if col[i]), _ZERO) for r in range(m)]
        leave = None
        best = None
        for r in range(m):
            if u[r] > 0:
                ratio = xb[r] / u[r]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            raise AssertionError("phase-1 problem cannot be unbounded")
        p = u[leave]
        prow = [x / p for x in binv[leave]]
        xl = xb[leave] / p
        for r in range(m):
            if r == leave:
                continue
            f = u[r]
            if f:
                binv[r] = [x - f * z for x, z in zip(binv[r], prow)]
                xb[r] -= f * xl
        binv[leave] = prow
        xb[leave] = xl
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")
